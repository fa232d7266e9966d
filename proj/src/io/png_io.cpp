// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#include "io/png_io.hpp"

#include <png.h>

#include <bit>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>

namespace polaug::io {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error(path.string() + ": " + what);
}

} // namespace

GrayImage read_gray_png(const std::filesystem::path& path) {
    FilePtr file(std::fopen(path.string().c_str(), "rb"));
    if (!file) fail(path, "cannot open for reading");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) fail(path, "png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        fail(path, "png_create_info_struct failed");
    }
    std::vector<png_bytep> rows;
    GrayImage img;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "libpng error while reading");
    }

    png_init_io(png, file.get());
    png_read_info(png, info);

    const int color_type = png_get_color_type(png, info);
    int bit_depth = png_get_bit_depth(png, info);
    if (color_type != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "expected a grayscale PNG");
    }
    if (bit_depth < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
        bit_depth = 8;
    }
    if (bit_depth == 16 && std::endian::native == std::endian::little) png_set_swap(png);
    png_read_update_info(png, info);

    img.width = static_cast<int>(png_get_image_width(png, info));
    img.height = static_cast<int>(png_get_image_height(png, info));
    img.bit_depth = bit_depth;
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);

    const std::size_t row_bytes = png_get_rowbytes(png, info);
    std::vector<std::uint8_t> raw(row_bytes * img.height);
    rows.resize(img.height);
    for (int y = 0; y < img.height; ++y) rows[y] = raw.data() + row_bytes * y;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    if (bit_depth == 8) {
        for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = raw[i];
    } else {
        const auto* p16 = reinterpret_cast<const std::uint16_t*>(raw.data());
        img.pixels.assign(p16, p16 + img.pixels.size());
    }
    return img;
}

namespace {

void write_png(const std::filesystem::path& path, int width, int height, int bit_depth,
               int color_type, const std::uint8_t* bytes, std::size_t row_bytes) {
    FilePtr file(std::fopen(path.string().c_str(), "wb"));
    if (!file) fail(path, "cannot open for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) fail(path, "png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        fail(path, "png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail(path, "libpng error while writing");
    }

    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
                 bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    if (bit_depth == 16 && std::endian::native == std::endian::little) png_set_swap(png);

    for (int y = 0; y < height; ++y)
        png_write_row(png, const_cast<png_bytep>(bytes + row_bytes * static_cast<std::size_t>(y)));
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
}

} // namespace

void write_gray8_png(const std::filesystem::path& path, int width, int height,
                     const std::uint8_t* pixels) {
    write_png(path, width, height, 8, PNG_COLOR_TYPE_GRAY, pixels,
              static_cast<std::size_t>(width));
}

void write_gray16_png(const std::filesystem::path& path, int width, int height,
                      const std::uint16_t* pixels) {
    write_png(path, width, height, 16, PNG_COLOR_TYPE_GRAY,
              reinterpret_cast<const std::uint8_t*>(pixels),
              static_cast<std::size_t>(width) * 2);
}

void write_rgb8_png(const std::filesystem::path& path, const Rgb8Image& image) {
    write_png(path, image.width, image.height, 8, PNG_COLOR_TYPE_RGB, image.data.data(),
              static_cast<std::size_t>(image.width) * 3);
}

} // namespace polaug::io
