// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef POLAUG_IMAGE_HPP
#define POLAUG_IMAGE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace polaug {

/// Single-channel raster of 32-bit float samples, row-major, origin top-left.
/// x grows rightward, y grows downward.
class Plane {
public:
    Plane() = default;
    Plane(int width, int height, float fill = 0.0f)
        : width_(width), height_(height),
          data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("Plane: dimensions must be positive");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    float& at(int x, int y) { return data_[index(x, y)]; }
    float at(int x, int y) const { return data_[index(x, y)]; }

    std::span<float> samples() { return data_; }
    std::span<const float> samples() const { return data_; }

    bool same_size(const Plane& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<float> data_;
};

/// Per-pixel boolean raster; used for transform validity masks.
class Mask {
public:
    Mask() = default;
    Mask(int width, int height, bool fill = false)
        : width_(width), height_(height),
          data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                fill ? std::uint8_t{1} : std::uint8_t{0}) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("Mask: dimensions must be positive");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }

    bool at(int x, int y) const { return data_[index(x, y)] != 0; }
    void set(int x, int y, bool v) { data_[index(x, y)] = v ? 1 : 0; }

    std::span<const std::uint8_t> samples() const { return data_; }

    std::size_t count_true() const {
        std::size_t n = 0;
        for (auto v : data_) n += v;
        return n;
    }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

} // namespace polaug

#endif // POLAUG_IMAGE_HPP
