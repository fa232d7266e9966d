// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#include "polaug/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polaug {

namespace {

double eval_field(const FieldSpec& f, double u, double v, double norm) {
    switch (f.kind) {
        case FieldKind::constant:
            return f.base;
        case FieldKind::linear:
            return f.base + f.gx * (u / norm) + f.gy * (v / norm);
        case FieldKind::radial_angle:
            return wrap_degrees(std::atan2(-v, u) * (180.0 / std::numbers::pi), kAopPeriodDeg);
        case FieldKind::checkerboard: {
            const long long ix = static_cast<long long>(std::floor(u / f.cell));
            const long long iy = static_cast<long long>(std::floor(v / f.cell));
            return ((ix + iy) & 1) == 0 ? f.base : f.alt;
        }
    }
    throw std::logic_error("eval_field: unknown kind");
}

AnalyzerQuad render_at(const SyntheticScene& scene, double theta_deg, bool mirrored) {
    if (scene.width <= 0 || scene.height <= 0)
        throw std::invalid_argument("scene dimensions must be positive");
    const int w = scene.width;
    const int h = scene.height;
    const double cx = 0.5 * (w - 1);
    const double cy = 0.5 * (h - 1);
    auto [c, s] = cos_sin_degrees(wrap_degrees(theta_deg, 360.0));

    AnalyzerQuad quad{Plane(w, h), Plane(w, h), Plane(w, h), Plane(w, h)};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double u = x - cx;
            double v = y - cy;
            if (mirrored) u = -u;
            // Same inverse map as the image-space rotation operator.
            const double su = c * u - s * v;
            const double sv = s * u + c * v;
            SceneSample smp = sample_scene(scene, su, sv);
            double phi = smp.aop_deg;
            if (mirrored) phi = -phi;
            phi = wrap_degrees(phi - theta_deg, kAopPeriodDeg);
            for (int a : kAnalyzerAnglesDeg)
                quad.plane(a).at(x, y) = static_cast<float>(
                    polarized_intensity(smp.intensity, smp.dop, phi, a));
        }
    }
    return quad;
}

} // namespace

SceneSample sample_scene(const SyntheticScene& scene, double u, double v) {
    const double norm = std::max(scene.width, scene.height);
    SceneSample smp;
    smp.intensity = std::max(0.0, eval_field(scene.intensity, u, v, norm));
    smp.dop = std::clamp(eval_field(scene.dop, u, v, norm), 0.0, 1.0);
    smp.aop_deg = wrap_degrees(eval_field(scene.aop, u, v, norm), kAopPeriodDeg);
    return smp;
}

AnalyzerQuad render(const SyntheticScene& scene) { return render_at(scene, 0.0, false); }

AnalyzerQuad render_rotated_camera(const SyntheticScene& scene, double theta_deg) {
    return render_at(scene, theta_deg, false);
}

AnalyzerQuad render_mirrored(const SyntheticScene& scene) { return render_at(scene, 0.0, true); }

AdjudicationReport adjudicate(const SyntheticScene& scene, double theta_deg, AugmentMode mode) {
    if (mode == AugmentMode::none)
        throw std::invalid_argument("adjudicate: mode must be regularized or naive");

    const PolarImage reference = decompose(render_rotated_camera(scene, theta_deg));
    const PolarImage base = decompose(render(scene));
    const TransformedPolar transformed = mode == AugmentMode::regularized
                                             ? rotate_regularized(base, theta_deg)
                                             : rotate_naive(base, theta_deg);

    AdjudicationReport rep;
    rep.scene = scene.name;
    rep.theta_deg = theta_deg;
    rep.mode = mode;

    double sum_i = 0.0, sum_d = 0.0, sum_a = 0.0;
    for (int y = 0; y < scene.height; ++y) {
        for (int x = 0; x < scene.width; ++x) {
            if (!transformed.valid.at(x, y)) continue;
            ++rep.valid_pixels;
            const double di =
                std::abs(static_cast<double>(transformed.image.intensity.at(x, y)) -
                         reference.intensity.at(x, y));
            const double dd = std::abs(static_cast<double>(transformed.image.dop.at(x, y)) -
                                       reference.dop.at(x, y));
            const double da = circular_distance_deg(transformed.image.aop.at(x, y),
                                                    reference.aop.at(x, y), kAopPeriodDeg);
            rep.intensity.max_abs = std::max(rep.intensity.max_abs, di);
            rep.dop.max_abs = std::max(rep.dop.max_abs, dd);
            rep.aop.max_abs = std::max(rep.aop.max_abs, da);
            sum_i += di;
            sum_d += dd;
            sum_a += da;
        }
    }
    if (rep.valid_pixels > 0) {
        rep.intensity.mean_abs = sum_i / static_cast<double>(rep.valid_pixels);
        rep.dop.mean_abs = sum_d / static_cast<double>(rep.valid_pixels);
        rep.aop.mean_abs = sum_a / static_cast<double>(rep.valid_pixels);
    }
    return rep;
}

std::vector<SyntheticScene> default_scene_suite() {
    std::vector<SyntheticScene> suite;

    auto uniform = [](std::string name, double iota, double rho, double phi) {
        SyntheticScene s;
        s.name = std::move(name);
        s.width = 96;
        s.height = 96;
        s.intensity = {FieldKind::constant, iota};
        s.dop = {FieldKind::constant, rho};
        s.aop = {FieldKind::constant, phi};
        s.smooth = true;
        s.uniform_aop = true;
        return s;
    };
    suite.push_back(uniform("uniform-phi-0", 200.0, 0.6, 0.0));
    suite.push_back(uniform("uniform-phi-45", 180.0, 0.75, 45.0));
    suite.push_back(uniform("uniform-phi-133", 220.0, 0.9, 133.0));

    {
        SyntheticScene s;
        s.name = "gradient";
        s.width = 96;
        s.height = 96;
        s.intensity = {FieldKind::linear, 150.0, 0.0, 60.0, -40.0};
        s.dop = {FieldKind::linear, 0.55, 0.0, 0.30, 0.20};
        s.aop = {FieldKind::linear, 90.0, 0.0, 70.0, 40.0};
        s.smooth = true;
        suite.push_back(s);
    }
    {
        SyntheticScene s;
        s.name = "radial-card";
        s.width = 96;
        s.height = 96;
        s.intensity = {FieldKind::constant, 180.0};
        s.dop = {FieldKind::constant, 1.0};
        s.aop = {FieldKind::radial_angle};
        s.smooth = true;
        suite.push_back(s);
    }
    {
        SyntheticScene s;
        s.name = "checker";
        s.width = 96;
        s.height = 96;
        s.intensity = {FieldKind::checkerboard, 60.0, 220.0, 0.0, 0.0, 12.0};
        s.dop = {FieldKind::checkerboard, 0.3, 0.9, 0.0, 0.0, 12.0};
        s.aop = {FieldKind::checkerboard, 30.0, 120.0, 0.0, 0.0, 12.0};
        s.smooth = false;
        suite.push_back(s);
    }
    return suite;
}

} // namespace polaug
