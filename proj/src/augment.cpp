// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#include "polaug/augment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polaug/rng.hpp"

namespace polaug {

void LabelMap::validate() const {
    if (width <= 0 || height <= 0 ||
        data.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw std::invalid_argument("LabelMap: bad dimensions");
    if (num_classes <= 0 || num_classes > 254)
        throw std::invalid_argument("LabelMap: num_classes out of range");
    for (std::uint8_t v : data)
        if (v != kVoidLabel && v >= num_classes)
            throw std::invalid_argument("LabelMap: class index out of range");
}

AugmentMode parse_augment_mode(const std::string& text) {
    if (text == "regularized") return AugmentMode::regularized;
    if (text == "naive") return AugmentMode::naive;
    if (text == "none") return AugmentMode::none;
    throw std::invalid_argument("mode must be one of regularized|naive|none");
}

std::string to_string(AugmentMode mode) {
    switch (mode) {
        case AugmentMode::regularized: return "regularized";
        case AugmentMode::naive: return "naive";
        case AugmentMode::none: return "none";
    }
    return "?";
}

namespace {

// Inverse map of the anti-clockwise screen rotation: for an output pixel at
// centered coords (u, v), the source sample sits at
//   (su, sv) = (c*u - s*v, s*u + c*v) with (c, s) = (cos theta, sin theta).
// Screen y grows downward, which is where the transposed-looking matrix
// comes from.
struct RotationGeometry {
    int width, height;
    double cx, cy, c, s;
    bool exact = false; // right-angle grid permutation
    int quarter = 0;    // 1 -> 90, 2 -> 180, 3 -> 270 when exact

    RotationGeometry(int w, int h, double theta_deg) : width(w), height(h) {
        cx = 0.5 * (w - 1);
        cy = 0.5 * (h - 1);
        const double t = wrap_degrees(theta_deg, 360.0);
        auto [cc, ss] = cos_sin_degrees(t);
        c = cc;
        s = ss;
        if (is_right_angle_multiple(t)) {
            quarter = static_cast<int>(t / 90.0);
            // 90/270 map grid to grid only when W and H have equal parity.
            exact = quarter == 2 || ((w ^ h) & 1) == 0;
        }
    }

    // Exact integer source pixel; caller must bounds-check.
    std::pair<int, int> exact_source(int x, int y) const {
        const int s2 = (width + height - 2) / 2;
        const int d = (height - width) / 2;
        switch (quarter) {
            case 1: return {s2 - y, x + d};
            case 2: return {width - 1 - x, height - 1 - y};
            case 3: return {y - d, s2 - x};
        }
        return {x, y};
    }

    std::pair<double, double> source(int x, int y) const {
        const double u = x - cx;
        const double v = y - cy;
        return {c * u - s * v + cx, s * u + c * v + cy};
    }

    bool in_canvas(double su, double sv) const {
        return su >= 0.0 && su <= width - 1 && sv >= 0.0 && sv <= height - 1;
    }
};

double bilerp(std::span<const double> grid, int w, int h, double x, double y) {
    const int x0 = std::clamp(static_cast<int>(std::floor(x)), 0, w - 1);
    const int y0 = std::clamp(static_cast<int>(std::floor(y)), 0, h - 1);
    const int x1 = std::min(x0 + 1, w - 1);
    const int y1 = std::min(y0 + 1, h - 1);
    const double fx = std::clamp(x - x0, 0.0, 1.0);
    const double fy = std::clamp(y - y0, 0.0, 1.0);
    const double top = grid[static_cast<std::size_t>(y0) * w + x0] * (1.0 - fx) +
                       grid[static_cast<std::size_t>(y0) * w + x1] * fx;
    const double bot = grid[static_cast<std::size_t>(y1) * w + x0] * (1.0 - fx) +
                       grid[static_cast<std::size_t>(y1) * w + x1] * fx;
    return top * (1.0 - fy) + bot * fy;
}

// (phi - shift) mod 180 in double; exact for lattice phi and integer shift.
// The float cast of an off-lattice result can round up to the excluded
// period value, which folds back to 0.
float shifted_aop(float phi, double shift_deg) {
    const float r =
        static_cast<float>(wrap_degrees(static_cast<double>(phi) - shift_deg, kAopPeriodDeg));
    return r >= 180.0f ? 0.0f : r;
}

TransformedPolar rotate_impl(const PolarImage& img, double theta_deg, bool regularize) {
    img.validate();
    const int w = img.width();
    const int h = img.height();
    const double theta = wrap_degrees(theta_deg, 360.0);

    if (theta == 0.0) return {img, Mask(w, h, true)};

    RotationGeometry geom(w, h, theta);
    TransformedPolar out{{Plane(w, h), Plane(w, h), Plane(w, h)}, Mask(w, h, false)};

    if (geom.exact) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                auto [sx, sy] = geom.exact_source(x, y);
                if (sx < 0 || sx >= w || sy < 0 || sy >= h) continue;
                out.image.intensity.at(x, y) = img.intensity.at(sx, sy);
                out.image.dop.at(x, y) = img.dop.at(sx, sy);
                const float phi = img.aop.at(sx, sy);
                out.image.aop.at(x, y) = regularize ? shifted_aop(phi, theta) : phi;
                out.valid.set(x, y, true);
            }
        }
        return out;
    }

    // Doubled-angle vector field; bilinear interpolation of (uc, us) is the
    // only resampling of (dop, aop) that stays meaningful across the wrap.
    const std::size_t n = img.intensity.size();
    std::vector<double> gi(n), uc(n), us(n);
    {
        auto si = img.intensity.samples();
        auto sa = img.aop.samples();
        auto sd = img.dop.samples();
        for (std::size_t i = 0; i < n; ++i) {
            gi[i] = si[i];
            const double hue_rad = 2.0 * sa[i] * (std::numbers::pi / 180.0);
            uc[i] = sd[i] * std::cos(hue_rad);
            us[i] = sd[i] * std::sin(hue_rad);
        }
    }

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            auto [su, sv] = geom.source(x, y);
            if (!geom.in_canvas(su, sv)) continue;
            out.valid.set(x, y, true);
            out.image.intensity.at(x, y) =
                static_cast<float>(std::max(0.0, bilerp(gi, w, h, su, sv)));
            const double c2 = bilerp(uc, w, h, su, sv);
            const double s2 = bilerp(us, w, h, su, sv);
            const double rho = std::min(std::hypot(c2, s2), 1.0);
            out.image.dop.at(x, y) = static_cast<float>(rho);
            double phi = 0.0;
            if (c2 != 0.0 || s2 != 0.0) {
                phi = 0.5 * std::atan2(s2, c2) * (180.0 / std::numbers::pi);
                if (phi < 0.0) phi += 180.0;
            }
            if (regularize) phi -= theta;
            out.image.aop.at(x, y) = snap_aop(phi);
        }
    }
    return out;
}

Mask flip_mask(const Mask& m, FlipAxis axis) {
    Mask out(m.width(), m.height());
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x)
            out.set(x, y, axis == FlipAxis::horizontal ? m.at(m.width() - 1 - x, y)
                                                       : m.at(x, m.height() - 1 - y));
    return out;
}

PolarImage flip_impl(const PolarImage& img, FlipAxis axis, bool regularize) {
    img.validate();
    const int w = img.width();
    const int h = img.height();
    PolarImage out{Plane(w, h), Plane(w, h), Plane(w, h)};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int sx = axis == FlipAxis::horizontal ? w - 1 - x : x;
            const int sy = axis == FlipAxis::horizontal ? y : h - 1 - y;
            out.intensity.at(x, y) = img.intensity.at(sx, sy);
            out.dop.at(x, y) = img.dop.at(sx, sy);
            const float phi = img.aop.at(sx, sy);
            out.aop.at(x, y) = regularize ? aop_complement(phi) : phi;
        }
    }
    return out;
}

} // namespace

TransformedPolar rotate_regularized(const PolarImage& img, double theta_deg) {
    return rotate_impl(img, theta_deg, true);
}

TransformedPolar rotate_naive(const PolarImage& img, double theta_deg) {
    return rotate_impl(img, theta_deg, false);
}

PolarImage flip_regularized(const PolarImage& img, FlipAxis axis) {
    return flip_impl(img, axis, true);
}

PolarImage flip_naive(const PolarImage& img, FlipAxis axis) {
    return flip_impl(img, axis, false);
}

TransformedPolar transform_polar(const PolarImage& img, const TransformSpec& spec,
                                 AugmentMode mode) {
    if (mode == AugmentMode::none)
        throw std::invalid_argument("transform_polar: mode none has no transform semantics");
    const bool reg = mode == AugmentMode::regularized;
    TransformedPolar out = rotate_impl(img, spec.rotation_deg, reg);
    if (spec.flip) {
        out.image = flip_impl(out.image, FlipAxis::horizontal, reg);
        out.valid = flip_mask(out.valid, FlipAxis::horizontal);
    }
    return out;
}

LabelMap transform_label(const LabelMap& lbl, const TransformSpec& spec) {
    lbl.validate();
    const int w = lbl.width;
    const int h = lbl.height;
    LabelMap out(w, h, lbl.num_classes);

    const double theta = wrap_degrees(spec.rotation_deg, 360.0);
    if (theta == 0.0) {
        out.data = lbl.data;
    } else {
        RotationGeometry geom(w, h, theta);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (geom.exact) {
                    auto [sx, sy] = geom.exact_source(x, y);
                    out.at(x, y) = (sx >= 0 && sx < w && sy >= 0 && sy < h) ? lbl.at(sx, sy)
                                                                            : kVoidLabel;
                } else {
                    auto [su, sv] = geom.source(x, y);
                    out.at(x, y) = geom.in_canvas(su, sv)
                                       ? lbl.at(static_cast<int>(std::lround(su)),
                                                static_cast<int>(std::lround(sv)))
                                       : kVoidLabel;
                }
            }
        }
    }

    if (spec.flip) {
        LabelMap mirrored(w, h, lbl.num_classes);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                mirrored.at(x, y) = out.at(w - 1 - x, y);
        return mirrored;
    }
    return out;
}

int distinct_spec_capacity(int rotation_increment_deg) {
    if (rotation_increment_deg <= 0 || 360 % rotation_increment_deg != 0)
        throw std::invalid_argument("rotation increment must divide 360");
    return 2 * (360 / rotation_increment_deg) - 1;
}

AugmentPlan make_plan(const std::string& source_id, int num_augments, std::uint64_t seed,
                      int rotation_increment_deg, double flip_probability) {
    const int capacity = distinct_spec_capacity(rotation_increment_deg);
    if (!(flip_probability >= 0.0 && flip_probability <= 1.0))
        throw std::invalid_argument("flip probability must be in [0, 1]");
    if (num_augments < 0 || num_augments > capacity)
        throw std::invalid_argument("num_augments exceeds the number of distinct specs");

    const int rot_count = 360 / rotation_increment_deg;
    // Draws the sampler can actually produce: flips cover rot_count specs,
    // non-flips rot_count - 1 (zero rotation alone is the reserved identity).
    const int reachable = flip_probability == 0.0  ? rot_count - 1
                          : flip_probability == 1.0 ? rot_count
                                                    : capacity;
    if (num_augments > reachable)
        throw std::invalid_argument(
            "num_augments exceeds the specs reachable at this flip probability");

    AugmentPlan plan{source_id, {}, seed};
    plan.specs.reserve(static_cast<std::size_t>(num_augments));

    Rng rng(derive_substream(seed, source_id));
    std::vector<char> used(static_cast<std::size_t>(2 * rot_count), 0);
    std::size_t guard = 0;
    while (plan.specs.size() < static_cast<std::size_t>(num_augments)) {
        if (++guard > 50'000'000)
            throw std::runtime_error("make_plan: rejection sampling failed to converge");
        const bool flip = rng.bernoulli(flip_probability);
        // Zero rotation is only a valid draw when paired with a flip; the
        // identity spec is reserved for the untouched original.
        if (!flip && rot_count == 1) continue;
        const int rot = flip ? rotation_increment_deg * static_cast<int>(rng.bounded(rot_count))
                             : rotation_increment_deg *
                                   (1 + static_cast<int>(rng.bounded(rot_count - 1)));
        const std::size_t idx = static_cast<std::size_t>(rot / rotation_increment_deg) * 2 +
                                (flip ? 1 : 0);
        if (used[idx]) continue;
        used[idx] = 1;
        plan.specs.push_back(TransformSpec{rot, flip});
    }
    return plan;
}

std::vector<AugmentOutput> apply_plan(const PolarImage& img, const LabelMap& lbl,
                                      const AugmentPlan& plan, AugmentMode mode) {
    img.validate();
    lbl.validate();
    if (lbl.width != img.width() || lbl.height != img.height())
        throw std::invalid_argument("apply_plan: image and label dimensions differ");
    if (mode == AugmentMode::none)
        throw std::invalid_argument("apply_plan: mode must be regularized or naive");

    std::vector<AugmentOutput> outputs;
    outputs.reserve(plan.specs.size());
    for (const TransformSpec& spec : plan.specs) {
        TransformedPolar t = transform_polar(img, spec, mode);
        LabelMap l = transform_label(lbl, spec);
        TransformRecord rec;
        rec.source_id = plan.source_id;
        rec.spec = spec;
        rec.seed = plan.seed;
        outputs.push_back(AugmentOutput{std::move(t.image), std::move(t.valid), std::move(l),
                                        std::move(rec)});
    }
    return outputs;
}

} // namespace polaug
