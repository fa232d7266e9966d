// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef POLAUG_IO_PNG_IO_HPP
#define POLAUG_IO_PNG_IO_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "polaug/polar.hpp"

namespace polaug::io {

/// Grayscale raster as stored on disk; bit_depth is 8 or 16 and samples are
/// kept as uint16 regardless.
struct GrayImage {
    int width = 0;
    int height = 0;
    int bit_depth = 0;
    std::vector<std::uint16_t> pixels;

    std::uint16_t at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
};

/// Load an 8- or 16-bit grayscale PNG. Color or paletted files are rejected.
GrayImage read_gray_png(const std::filesystem::path& path);

void write_gray8_png(const std::filesystem::path& path, int width, int height,
                     const std::uint8_t* pixels);
void write_gray16_png(const std::filesystem::path& path, int width, int height,
                      const std::uint16_t* pixels);
void write_rgb8_png(const std::filesystem::path& path, const Rgb8Image& image);

} // namespace polaug::io

#endif // POLAUG_IO_PNG_IO_HPP
