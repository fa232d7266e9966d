// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#include "polaug/dofp.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace polaug {

namespace {

int parse_angle(std::string_view tok) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw std::invalid_argument("SuperpixelLayout: bad angle token '" + std::string(tok) + "'");
    return v;
}

} // namespace

SuperpixelLayout SuperpixelLayout::parse(std::string_view text) {
    SuperpixelLayout layout;
    std::size_t semi = text.find(';');
    if (semi == std::string_view::npos)
        throw std::invalid_argument("SuperpixelLayout: expected 'a,b;c,d'");
    std::string_view rows[2] = {text.substr(0, semi), text.substr(semi + 1)};
    for (int r = 0; r < 2; ++r) {
        std::size_t comma = rows[r].find(',');
        if (comma == std::string_view::npos)
            throw std::invalid_argument("SuperpixelLayout: expected 'a,b;c,d'");
        layout.angles[r][0] = parse_angle(rows[r].substr(0, comma));
        layout.angles[r][1] = parse_angle(rows[r].substr(comma + 1));
    }
    layout.validate();
    return layout;
}

std::string SuperpixelLayout::to_string() const {
    return std::to_string(angles[0][0]) + "," + std::to_string(angles[0][1]) + ";" +
           std::to_string(angles[1][0]) + "," + std::to_string(angles[1][1]);
}

std::array<int, 2> SuperpixelLayout::position_of(int analyzer_deg) const {
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (angles[r][c] == analyzer_deg) return {r, c};
    throw std::invalid_argument("SuperpixelLayout: angle not present");
}

void SuperpixelLayout::validate() const {
    for (int a : kAnalyzerAnglesDeg) {
        int seen = 0;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                if (angles[r][c] == a) ++seen;
        if (seen != 1)
            throw std::invalid_argument(
                "SuperpixelLayout: angles must be a permutation of {0,45,90,135}");
    }
}

void DofpMosaic::validate() const {
    layout.validate();
    if (bit_depth != 8 && bit_depth != 16)
        throw std::invalid_argument("DofpMosaic: bit_depth must be 8 or 16");
    if (data.empty() || data.width() % 2 != 0 || data.height() % 2 != 0)
        throw std::invalid_argument("DofpMosaic: dimensions must be even");
    const float limit = static_cast<float>(max_val());
    for (float v : data.samples())
        if (!std::isfinite(v) || v < 0.0f || v > limit)
            throw std::invalid_argument("DofpMosaic: sample out of range");
}

AnalyzerQuad split(const DofpMosaic& mosaic) {
    mosaic.validate();
    const int w = mosaic.width() / 2;
    const int h = mosaic.height() / 2;
    AnalyzerQuad quad{Plane(w, h), Plane(w, h), Plane(w, h), Plane(w, h)};
    for (int a : kAnalyzerAnglesDeg) {
        auto [r, c] = mosaic.layout.position_of(a);
        Plane& dst = quad.plane(a);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                dst.at(x, y) = mosaic.data.at(2 * x + c, 2 * y + r);
    }
    return quad;
}

DofpMosaic merge(const AnalyzerQuad& quad, const SuperpixelLayout& layout, int bit_depth) {
    quad.validate();
    layout.validate();
    DofpMosaic mosaic{Plane(2 * quad.width(), 2 * quad.height()), layout, bit_depth};
    for (int a : kAnalyzerAnglesDeg) {
        auto [r, c] = layout.position_of(a);
        const Plane& src = quad.plane(a);
        for (int y = 0; y < quad.height(); ++y)
            for (int x = 0; x < quad.width(); ++x)
                mosaic.data.at(2 * x + c, 2 * y + r) = src.at(x, y);
    }
    return mosaic;
}

DofpMosaic sensor_integrity_check(const PolarImage& img, const SuperpixelLayout& layout,
                                  int bit_depth) {
    return merge(reconstruct_quad(img), layout, bit_depth);
}

} // namespace polaug
