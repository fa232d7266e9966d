// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef POLAUG_IO_CONFIG_HPP
#define POLAUG_IO_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include "polaug/augment.hpp"
#include "polaug/dofp.hpp"

namespace polaug::io {

inline constexpr const char* kToolVersion = "polaug 0.1.0";

/// Dataset expansion settings. Defaults reproduce the reference recipe:
/// 11 unique augmentations per image (5-degree rotation steps, 20% flip
/// probability), so 178 sources expand to 2136 images.
struct PipelineConfig {
    std::filesystem::path input_dir;
    std::filesystem::path label_dir;
    std::filesystem::path output_dir;
    SuperpixelLayout layout = SuperpixelLayout::standard();
    int augments_per_image = 11;
    int rotation_increment_deg = 5;
    double flip_probability = 0.20;
    AugmentMode mode = AugmentMode::regularized;
    std::uint64_t seed = 0;
    int bit_depth = 16;
    int num_classes = 7;
    bool allow_missing = false;

    void validate() const;
};

/// Parse a flat TOML file (key = value pairs; strings, integers, floats and
/// booleans). Unknown keys are rejected. Values not present keep their
/// defaults.
PipelineConfig load_config(const std::filesystem::path& path);

/// Parse config text (exposed for tests).
PipelineConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");

} // namespace polaug::io

#endif // POLAUG_IO_CONFIG_HPP
