// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef POLAUG_IO_PLANE_CODEC_HPP
#define POLAUG_IO_PLANE_CODEC_HPP

#include <filesystem>
#include <string>

#include "polaug/augment.hpp"
#include "polaug/dofp.hpp"
#include "polaug/polar.hpp"

namespace polaug::io {

/// Fixed-point 16-bit persistence of a polarimetric image as three grayscale
/// PNGs plus a sidecar metadata JSON:
///   <stem>_intensity.png : code = round(intensity / (2*max_val) * 65535)
///   <stem>_aop.png       : code = round(aop / 180 * 65535)
///   <stem>_dop.png       : code = round(dop * 65535)
/// max_val is the sensor full scale (255 or 65535). Decoding inverts the
/// scaling; the decode of an encode re-encodes to bit-identical files.
struct PolarFileSet {
    std::filesystem::path intensity;
    std::filesystem::path aop;
    std::filesystem::path dop;
    std::filesystem::path meta;

    static PolarFileSet for_stem(const std::filesystem::path& dir, const std::string& stem);
};

void encode_polar(const PolarImage& img, const std::filesystem::path& dir,
                  const std::string& stem, double max_val);

PolarImage decode_polar(const std::filesystem::path& dir, const std::string& stem);

/// max_val recorded in the sidecar of an encoded image.
double read_encoded_max_val(const std::filesystem::path& dir, const std::string& stem);

/// Label maps as 8-bit grayscale PNGs; kVoidLabel is stored as 255.
void write_label(const LabelMap& lbl, const std::filesystem::path& path);
LabelMap read_label(const std::filesystem::path& path, int num_classes);

/// Raw mosaics as single grayscale PNGs at their native bit depth.
void write_mosaic(const DofpMosaic& mosaic, const std::filesystem::path& path);
DofpMosaic read_mosaic(const std::filesystem::path& path, const SuperpixelLayout& layout);

/// Serialized plane bytes used for content-derived output names.
std::uint64_t content_hash(const PolarImage& img, const LabelMap& lbl);

} // namespace polaug::io

#endif // POLAUG_IO_PLANE_CODEC_HPP
