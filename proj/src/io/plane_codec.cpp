// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#include "io/plane_codec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "io/png_io.hpp"
#include "polaug/rng.hpp"

namespace polaug::io {

namespace {

constexpr double kCode16 = 65535.0;

std::vector<std::uint16_t> quantize(const Plane& p, double divisor) {
    std::vector<std::uint16_t> out(p.size());
    auto s = p.samples();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double code = std::nearbyint(static_cast<double>(s[i]) / divisor * kCode16);
        out[i] = static_cast<std::uint16_t>(std::clamp(code, 0.0, kCode16));
    }
    return out;
}

Plane dequantize(const GrayImage& g, double divisor) {
    Plane p(g.width, g.height);
    auto s = p.samples();
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = static_cast<float>(static_cast<double>(g.pixels[i]) / kCode16 * divisor);
    return p;
}

} // namespace

PolarFileSet PolarFileSet::for_stem(const std::filesystem::path& dir, const std::string& stem) {
    return PolarFileSet{dir / (stem + "_intensity.png"), dir / (stem + "_aop.png"),
                        dir / (stem + "_dop.png"), dir / (stem + "_meta.json")};
}

void encode_polar(const PolarImage& img, const std::filesystem::path& dir,
                  const std::string& stem, double max_val) {
    img.validate();
    if (!(max_val > 0.0)) throw std::invalid_argument("encode_polar: max_val must be positive");
    const auto files = PolarFileSet::for_stem(dir, stem);
    const int w = img.width(), h = img.height();

    const auto qi = quantize(img.intensity, 2.0 * max_val);
    const auto qa = quantize(img.aop, 180.0);
    const auto qd = quantize(img.dop, 1.0);
    write_gray16_png(files.intensity, w, h, qi.data());
    write_gray16_png(files.aop, w, h, qa.data());
    write_gray16_png(files.dop, w, h, qd.data());

    nlohmann::ordered_json meta;
    meta["width"] = w;
    meta["height"] = h;
    meta["max_val"] = max_val;
    meta["encoding"] = {
        {"intensity", "code = round(value / (2*max_val) * 65535)"},
        {"aop", "code = round(degrees / 180 * 65535)"},
        {"dop", "code = round(value * 65535)"},
    };
    std::ofstream out(files.meta);
    if (!out) throw std::runtime_error(files.meta.string() + ": cannot open for writing");
    out << meta.dump(2) << "\n";
}

double read_encoded_max_val(const std::filesystem::path& dir, const std::string& stem) {
    const auto files = PolarFileSet::for_stem(dir, stem);
    std::ifstream in(files.meta);
    if (!in) throw std::runtime_error(files.meta.string() + ": cannot open");
    nlohmann::json meta = nlohmann::json::parse(in);
    return meta.at("max_val").get<double>();
}

PolarImage decode_polar(const std::filesystem::path& dir, const std::string& stem) {
    const auto files = PolarFileSet::for_stem(dir, stem);
    const double max_val = read_encoded_max_val(dir, stem);

    const GrayImage gi = read_gray_png(files.intensity);
    const GrayImage ga = read_gray_png(files.aop);
    const GrayImage gd = read_gray_png(files.dop);
    if (gi.width != ga.width || gi.width != gd.width || gi.height != ga.height ||
        gi.height != gd.height)
        throw std::runtime_error(stem + ": plane dimensions differ between files");

    PolarImage img{dequantize(gi, 2.0 * max_val), dequantize(ga, 180.0), dequantize(gd, 1.0)};
    // Code 65535 on the aop plane decodes to exactly 180.0; pull it just
    // inside the canonical range. Re-encoding still rounds back to 65535.
    for (float& v : img.aop.samples())
        if (v >= 180.0f) v = std::nextafter(180.0f, 0.0f);
    img.validate();
    return img;
}

void write_label(const LabelMap& lbl, const std::filesystem::path& path) {
    lbl.validate();
    write_gray8_png(path, lbl.width, lbl.height, lbl.data.data());
}

LabelMap read_label(const std::filesystem::path& path, int num_classes) {
    const GrayImage g = read_gray_png(path);
    if (g.bit_depth != 8) throw std::runtime_error(path.string() + ": label maps must be 8-bit");
    LabelMap lbl(g.width, g.height, num_classes);
    for (std::size_t i = 0; i < lbl.data.size(); ++i)
        lbl.data[i] = static_cast<std::uint8_t>(g.pixels[i]);
    lbl.validate();
    return lbl;
}

void write_mosaic(const DofpMosaic& mosaic, const std::filesystem::path& path) {
    mosaic.validate();
    const int w = mosaic.width(), h = mosaic.height();
    if (mosaic.bit_depth == 8) {
        std::vector<std::uint8_t> px(mosaic.data.size());
        auto s = mosaic.data.samples();
        for (std::size_t i = 0; i < px.size(); ++i)
            px[i] = static_cast<std::uint8_t>(
                std::clamp(std::nearbyint(static_cast<double>(s[i])), 0.0, 255.0));
        write_gray8_png(path, w, h, px.data());
    } else {
        std::vector<std::uint16_t> px(mosaic.data.size());
        auto s = mosaic.data.samples();
        for (std::size_t i = 0; i < px.size(); ++i)
            px[i] = static_cast<std::uint16_t>(
                std::clamp(std::nearbyint(static_cast<double>(s[i])), 0.0, kCode16));
        write_gray16_png(path, w, h, px.data());
    }
}

DofpMosaic read_mosaic(const std::filesystem::path& path, const SuperpixelLayout& layout) {
    const GrayImage g = read_gray_png(path);
    DofpMosaic mosaic{Plane(g.width, g.height), layout, g.bit_depth};
    auto s = mosaic.data.samples();
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<float>(g.pixels[i]);
    mosaic.validate();
    return mosaic;
}

std::uint64_t content_hash(const PolarImage& img, const LabelMap& lbl) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix_plane = [&h](const Plane& p) {
        auto s = p.samples();
        h = fnv1a64(std::string_view(reinterpret_cast<const char*>(s.data()),
                                     s.size_bytes()),
                    h);
    };
    mix_plane(img.intensity);
    mix_plane(img.aop);
    mix_plane(img.dop);
    h = fnv1a64(std::string_view(reinterpret_cast<const char*>(lbl.data.data()), lbl.data.size()),
                h);
    return h;
}

} // namespace polaug::io
