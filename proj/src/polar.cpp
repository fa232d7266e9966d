// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#include "polaug/polar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace polaug {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void check_plane(const Plane& p, const char* what) {
    require(!p.empty(), "empty plane");
    for (float v : p.samples()) {
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite sample");
        if (v < 0.0f) throw std::invalid_argument(std::string(what) + ": negative sample");
    }
}

} // namespace

const Plane& AnalyzerQuad::plane(int analyzer_deg) const {
    switch (analyzer_deg) {
        case 0: return p0;
        case 45: return p45;
        case 90: return p90;
        case 135: return p135;
    }
    throw std::invalid_argument("AnalyzerQuad::plane: analyzer angle must be 0/45/90/135");
}

Plane& AnalyzerQuad::plane(int analyzer_deg) {
    return const_cast<Plane&>(static_cast<const AnalyzerQuad&>(*this).plane(analyzer_deg));
}

void AnalyzerQuad::validate() const {
    require(p0.same_size(p45) && p0.same_size(p90) && p0.same_size(p135),
            "AnalyzerQuad: plane dimensions differ");
    check_plane(p0, "p0");
    check_plane(p45, "p45");
    check_plane(p90, "p90");
    check_plane(p135, "p135");
}

void PolarImage::validate() const {
    require(intensity.same_size(aop) && intensity.same_size(dop),
            "PolarImage: plane dimensions differ");
    check_plane(intensity, "intensity");
    for (float v : aop.samples())
        if (!(v >= 0.0f && v < 180.0f))
            throw std::invalid_argument("PolarImage: aop out of [0, 180)");
    for (float v : dop.samples())
        if (!(v >= 0.0f && v <= 1.0f))
            throw std::invalid_argument("PolarImage: dop out of [0, 1]");
}

void HslImage::validate() const {
    require(h.same_size(s) && h.same_size(l), "HslImage: plane dimensions differ");
    for (float v : h.samples())
        if (!(v >= 0.0f && v < 360.0f))
            throw std::invalid_argument("HslImage: h out of [0, 360)");
    for (float v : s.samples())
        if (!(v >= 0.0f && v <= 1.0f))
            throw std::invalid_argument("HslImage: s out of [0, 1]");
    for (float v : l.samples())
        if (!(v >= 0.0f && v <= 1.0f))
            throw std::invalid_argument("HslImage: l out of [0, 1]");
}

double polarized_intensity(double iota, double rho, double phi_deg, double analyzer_deg) {
    double c = cos_degrees(2.0 * (phi_deg - analyzer_deg));
    double v = 0.5 * iota * (1.0 + rho * c);
    return v < 0.0 ? 0.0 : v; // guard against -eps at full extinction
}

PolarImage decompose(const AnalyzerQuad& quad, DecomposeStats* stats, Mask* degenerate_mask) {
    quad.validate();
    const int w = quad.width();
    const int h = quad.height();

    PolarImage out{Plane(w, h), Plane(w, h), Plane(w, h)};
    if (degenerate_mask) *degenerate_mask = Mask(w, h, false);
    DecomposeStats local;

    auto s0 = quad.p0.samples();
    auto s45 = quad.p45.samples();
    auto s90 = quad.p90.samples();
    auto s135 = quad.p135.samples();
    auto oi = out.intensity.samples();
    auto oa = out.aop.samples();
    auto od = out.dop.samples();

    for (std::size_t i = 0; i < s0.size(); ++i) {
        const double p0 = s0[i], p45 = s45[i], p90 = s90[i], p135 = s135[i];
        const double d1 = p0 - p90;
        const double d2 = p45 - p135;
        const double denom = p0 + p90;

        oi[i] = static_cast<float>(0.5 * (p0 + p45 + p90 + p135));

        if (denom <= 0.0) {
            od[i] = 0.0f;
            oa[i] = 0.0f;
            ++local.degenerate_pixels;
            if (degenerate_mask)
                degenerate_mask->set(static_cast<int>(i % w), static_cast<int>(i / w), true);
            continue;
        }

        double rho = std::hypot(d1, d2) / denom;
        if (rho > 1.0) {
            rho = 1.0;
            ++local.clamped_dop_pixels;
        }
        od[i] = static_cast<float>(rho);

        if (d1 == 0.0 && d2 == 0.0) {
            oa[i] = 0.0f; // unpolarized: angle by convention
        } else {
            double phi = 0.5 * std::atan2(d2, d1) * (180.0 / std::numbers::pi);
            if (phi < 0.0) phi += 180.0;
            oa[i] = snap_aop(phi);
        }
    }

    if (stats) *stats = local;
    return out;
}

Plane reconstruct(const PolarImage& img, double analyzer_deg) {
    img.validate();
    Plane out(img.width(), img.height());
    auto si = img.intensity.samples();
    auto sa = img.aop.samples();
    auto sd = img.dop.samples();
    auto o = out.samples();
    for (std::size_t i = 0; i < o.size(); ++i)
        o[i] = static_cast<float>(polarized_intensity(si[i], sd[i], sa[i], analyzer_deg));
    return out;
}

AnalyzerQuad reconstruct_quad(const PolarImage& img) {
    return AnalyzerQuad{reconstruct(img, 0.0), reconstruct(img, 45.0),
                        reconstruct(img, 90.0), reconstruct(img, 135.0)};
}

HslImage to_hsl(const PolarImage& img, double max_val) {
    img.validate();
    if (!(max_val > 0.0)) throw std::invalid_argument("to_hsl: max_val must be positive");
    const int w = img.width(), h = img.height();
    HslImage out{Plane(w, h), Plane(w, h), Plane(w, h)};
    auto si = img.intensity.samples();
    auto sa = img.aop.samples();
    auto sd = img.dop.samples();
    auto oh = out.h.samples();
    auto os = out.s.samples();
    auto ol = out.l.samples();
    const double denom = 2.0 * max_val;
    for (std::size_t i = 0; i < oh.size(); ++i) {
        oh[i] = static_cast<float>(2.0 * static_cast<double>(sa[i])); // aop < 180, no wrap
        os[i] = sd[i];
        ol[i] = static_cast<float>(std::clamp(static_cast<double>(si[i]) / denom, 0.0, 1.0));
    }
    return out;
}

PolarImage from_hsl(const HslImage& hsl, double max_val) {
    hsl.validate();
    if (!(max_val > 0.0)) throw std::invalid_argument("from_hsl: max_val must be positive");
    const int w = hsl.width(), h = hsl.height();
    PolarImage out{Plane(w, h), Plane(w, h), Plane(w, h)};
    auto sh = hsl.h.samples();
    auto ss = hsl.s.samples();
    auto sl = hsl.l.samples();
    auto oi = out.intensity.samples();
    auto oa = out.aop.samples();
    auto od = out.dop.samples();
    const double scale = 2.0 * max_val;
    for (std::size_t i = 0; i < oi.size(); ++i) {
        oa[i] = static_cast<float>(0.5 * static_cast<double>(sh[i]));
        od[i] = ss[i];
        oi[i] = static_cast<float>(static_cast<double>(sl[i]) * scale);
    }
    return out;
}

namespace {

double hsl_channel(double m1, double m2, double hue) {
    if (hue >= 360.0) hue -= 360.0;
    if (hue < 0.0) hue += 360.0;
    if (hue < 60.0) return m1 + (m2 - m1) * hue / 60.0;
    if (hue < 180.0) return m2;
    if (hue < 240.0) return m1 + (m2 - m1) * (240.0 - hue) / 60.0;
    return m1;
}

std::uint8_t quantize8(double v) {
    int q = static_cast<int>(std::lround(v * 255.0));
    return static_cast<std::uint8_t>(std::clamp(q, 0, 255));
}

} // namespace

Rgb8Image hsl_to_rgb(const HslImage& hsl) {
    hsl.validate();
    Rgb8Image out;
    out.width = hsl.width();
    out.height = hsl.height();
    out.data.resize(3 * hsl.h.size());
    auto sh = hsl.h.samples();
    auto ss = hsl.s.samples();
    auto sl = hsl.l.samples();
    for (std::size_t i = 0; i < sh.size(); ++i) {
        const double hdeg = sh[i], s = ss[i], l = sl[i];
        double r, g, b;
        if (s == 0.0) {
            r = g = b = l;
        } else {
            const double m2 = l <= 0.5 ? l * (1.0 + s) : l + s - l * s;
            const double m1 = 2.0 * l - m2;
            r = hsl_channel(m1, m2, hdeg + 120.0);
            g = hsl_channel(m1, m2, hdeg);
            b = hsl_channel(m1, m2, hdeg - 120.0);
        }
        out.data[3 * i] = quantize8(r);
        out.data[3 * i + 1] = quantize8(g);
        out.data[3 * i + 2] = quantize8(b);
    }
    return out;
}

} // namespace polaug
