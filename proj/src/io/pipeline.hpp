// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef POLAUG_IO_PIPELINE_HPP
#define POLAUG_IO_PIPELINE_HPP

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "io/config.hpp"
#include "polaug/seg_metrics.hpp"

namespace polaug::io {

/// Thrown when inputs and labels do not pair up and allow_missing is off.
struct PairingError : std::runtime_error {
    explicit PairingError(std::vector<std::string> missing_list);
    std::vector<std::string> missing;
};

struct PipelineSummary {
    std::size_t sources = 0;
    std::size_t outputs = 0;
    std::vector<std::string> skipped; // unpaired stems when allow_missing
    std::filesystem::path manifest;
};

/// Expand the dataset per the config: read mosaics and labels paired by file
/// stem, decompose, apply the per-source plan, and write originals plus
/// augmented outputs with a JSON-Lines manifest. Output files are named by a
/// content-hash prefix; the manifest order is a seed-deterministic shuffle.
/// Re-running with identical inputs and config is byte-identical.
PipelineSummary run_augment_pipeline(const PipelineConfig& cfg);

/// Worker pool size: POLAUG_THREADS when set, hardware concurrency otherwise.
unsigned worker_count();

struct DecomposeFileResult {
    std::string stem;
    std::filesystem::path hsl_preview;
};

/// Decompose a raw mosaic PNG into the plane-triplet files plus an HSL
/// preview. The mosaic's native bit depth must match `expect_bit_depth` when
/// that is nonzero.
DecomposeFileResult decompose_mosaic_file(const std::filesystem::path& mosaic_path,
                                          const SuperpixelLayout& layout,
                                          const std::filesystem::path& out_dir,
                                          int expect_bit_depth = 0);

/// Decompose four co-registered analyzer plane PNGs (0/45/90/135 order).
DecomposeFileResult decompose_plane_files(const std::vector<std::filesystem::path>& plane_paths,
                                          const std::filesystem::path& out_dir);

struct MetricsRunResult {
    ConfusionMatrix cm;
    nlohmann::ordered_json json;
    std::string table;
    std::size_t image_pairs = 0;
};

/// Score a directory of predicted label maps against ground truth, paired by
/// file stem. Throws on unpaired or mis-sized maps.
MetricsRunResult run_metrics(const std::filesystem::path& pred_dir,
                             const std::filesystem::path& gt_dir, const ClassPalette& palette,
                             const std::set<int>& exclude);

} // namespace polaug::io

#endif // POLAUG_IO_PIPELINE_HPP
