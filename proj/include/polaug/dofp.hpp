// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef POLAUG_DOFP_HPP
#define POLAUG_DOFP_HPP

#include <array>
#include <string>
#include <string_view>

#include "polaug/polar.hpp"

namespace polaug {

/// 2x2 assignment of analyzer orientations to sensor positions. angles[r][c]
/// is the orientation of the pixel at (row r, col c) inside each superpixel;
/// the four canonical orientations appear exactly once.
struct SuperpixelLayout {
    std::array<std::array<int, 2>, 2> angles{{{0, 45}, {135, 90}}};

    /// The common commercial arrangement: 0/45 top row, 135/90 bottom row.
    static SuperpixelLayout standard() { return SuperpixelLayout{}; }

    /// Parse "r0c0,r0c1;r1c0,r1c1", e.g. "0,45;135,90".
    static SuperpixelLayout parse(std::string_view text);

    std::string to_string() const;

    /// (row, col) of the given analyzer orientation inside the superpixel.
    std::array<int, 2> position_of(int analyzer_deg) const;

    /// Throws if the grid is not a permutation of {0, 45, 90, 135}.
    void validate() const;

    bool operator==(const SuperpixelLayout&) const = default;
};

/// Raw single-plane division-of-focal-plane frame tiled by 2x2 superpixels.
/// bit_depth records the source quantization (8 or 16); samples are stored as
/// float and must stay in [0, 2^bit_depth - 1].
struct DofpMosaic {
    Plane data;
    SuperpixelLayout layout;
    int bit_depth = 16;

    int width() const { return data.width(); }
    int height() const { return data.height(); }
    double max_val() const { return bit_depth == 8 ? 255.0 : 65535.0; }

    void validate() const;
};

/// Extract the four analyzer sub-grids; each output plane is (H/2) x (W/2).
/// No interpolation is performed: each plane is the plain subsampled grid of
/// its orientation per the layout.
AnalyzerQuad split(const DofpMosaic& mosaic);

/// Exact inverse of split under the same layout.
DofpMosaic merge(const AnalyzerQuad& quad, const SuperpixelLayout& layout, int bit_depth = 16);

/// Emulated raw sensor frame for a given polarimetric image:
/// merge(reconstruct_quad(img), layout). A physically consistent image must
/// reproduce the frame it was decoded from; the validation tooling builds on
/// this identity.
DofpMosaic sensor_integrity_check(const PolarImage& img, const SuperpixelLayout& layout,
                                  int bit_depth = 16);

} // namespace polaug

#endif // POLAUG_DOFP_HPP
