// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#include "io/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "io/plane_codec.hpp"
#include "io/png_io.hpp"
#include "io/report.hpp"
#include "polaug/rng.hpp"

namespace polaug::io {

namespace {

std::vector<std::string> png_stems(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error(dir.string() + ": not a directory");
    std::vector<std::string> stems;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto& p = entry.path();
        if (p.extension() == ".png") stems.push_back(p.stem().string());
    }
    std::sort(stems.begin(), stems.end());
    return stems;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string output_stem(const PolarImage& img, const LabelMap& lbl, const std::string& source,
                        const TransformSpec& spec, bool original) {
    std::string tag;
    if (original) {
        tag = "orig";
    } else {
        char buf[16];
        std::snprintf(buf, sizeof buf, "r%03d%s", spec.rotation_deg, spec.flip ? "f" : "");
        tag = buf;
    }
    return hash_hex(content_hash(img, lbl)) + "_" + source + "_" + tag;
}

struct ManifestEntry {
    TransformRecord record;
    AugmentMode mode;
};

nlohmann::ordered_json record_to_json(const ManifestEntry& e) {
    nlohmann::ordered_json j;
    j["output_id"] = e.record.output_id;
    j["source_id"] = e.record.source_id;
    j["rotation_deg"] = e.record.spec.rotation_deg;
    j["flip"] = e.record.spec.flip;
    j["mode"] = to_string(e.mode);
    j["seed"] = e.record.seed;
    j["tool_version"] = e.record.tool_version;
    return j;
}

} // namespace

PairingError::PairingError(std::vector<std::string> missing_list)
    : std::runtime_error("unpaired inputs: " + [&missing_list] {
          std::string s;
          for (const auto& m : missing_list) {
              if (!s.empty()) s += ", ";
              s += m;
          }
          return s;
      }()),
      missing(std::move(missing_list)) {}

unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("POLAUG_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) n = std::min<long>(v, 256);
    }
    return n;
}

PipelineSummary run_augment_pipeline(const PipelineConfig& cfg) {
    cfg.validate();
    if (cfg.input_dir.empty() || cfg.label_dir.empty() || cfg.output_dir.empty())
        throw std::invalid_argument("config: input_dir, label_dir and output_dir are required");

    const std::vector<std::string> stems = png_stems(cfg.input_dir);
    std::vector<std::string> paired, unpaired;
    for (const auto& stem : stems) {
        if (std::filesystem::exists(cfg.label_dir / (stem + ".png")))
            paired.push_back(stem);
        else
            unpaired.push_back(stem);
    }
    if (!unpaired.empty() && !cfg.allow_missing) throw PairingError(unpaired);
    if (paired.empty()) throw std::runtime_error("no paired input/label images found");

    std::filesystem::create_directories(cfg.output_dir);

    const double max_val = cfg.bit_depth == 8 ? 255.0 : 65535.0;
    std::vector<std::vector<ManifestEntry>> per_source(paired.size());

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= paired.size()) return;
            try {
                const std::string& stem = paired[idx];
                const DofpMosaic mosaic =
                    read_mosaic(cfg.input_dir / (stem + ".png"), cfg.layout);
                if (mosaic.bit_depth != cfg.bit_depth)
                    throw std::runtime_error(stem + ": file bit depth " +
                                             std::to_string(mosaic.bit_depth) +
                                             " does not match configured " +
                                             std::to_string(cfg.bit_depth));
                const PolarImage img = decompose(split(mosaic));
                const LabelMap lbl =
                    read_label(cfg.label_dir / (stem + ".png"), cfg.num_classes);
                if (lbl.width != img.width() || lbl.height != img.height())
                    throw std::runtime_error(stem + ": label dimensions must match the " +
                                             "decomposed image (half the mosaic size)");

                std::vector<ManifestEntry>& entries = per_source[idx];

                auto emit = [&](const PolarImage& out_img, const LabelMap& out_lbl,
                                const TransformSpec& spec, bool original) {
                    const std::string ostem =
                        output_stem(out_img, out_lbl, stem, spec, original);
                    encode_polar(out_img, cfg.output_dir, ostem, max_val);
                    write_label(out_lbl, cfg.output_dir / (ostem + "_label.png"));
                    ManifestEntry e;
                    e.record.source_id = stem;
                    e.record.output_id = ostem;
                    e.record.spec = spec;
                    e.record.seed = cfg.seed;
                    e.record.tool_version = kToolVersion;
                    e.mode = original ? AugmentMode::none : cfg.mode;
                    entries.push_back(std::move(e));
                };

                emit(img, lbl, TransformSpec{}, true);
                if (cfg.mode != AugmentMode::none && cfg.augments_per_image > 0) {
                    const AugmentPlan plan =
                        make_plan(stem, cfg.augments_per_image, cfg.seed,
                                  cfg.rotation_increment_deg, cfg.flip_probability);
                    for (auto& out : apply_plan(img, lbl, plan, cfg.mode))
                        emit(out.image, out.label, out.record.spec, false);
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const unsigned n_workers =
        std::min<std::size_t>(worker_count(), paired.size());
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    // Deterministic order: sources sorted by stem, original first, then plan
    // order; the training-order shuffle applies to the manifest only.
    std::vector<ManifestEntry> all;
    for (auto& entries : per_source)
        for (auto& e : entries) all.push_back(std::move(e));
    Rng shuffle_rng(derive_substream(cfg.seed, "manifest-shuffle"));
    shuffle_rng.shuffle(all);

    PipelineSummary summary;
    summary.sources = paired.size();
    summary.outputs = all.size();
    summary.skipped = unpaired;
    summary.manifest = cfg.output_dir / "manifest.jsonl";

    std::ofstream manifest(summary.manifest, std::ios::binary | std::ios::trunc);
    if (!manifest) throw std::runtime_error(summary.manifest.string() + ": cannot write");
    for (const auto& e : all) manifest << record_to_json(e).dump() << "\n";
    return summary;
}

namespace {

DecomposeFileResult write_decomposition(const PolarImage& img, const std::string& stem,
                                        const std::filesystem::path& out_dir, double max_val) {
    std::filesystem::create_directories(out_dir);
    encode_polar(img, out_dir, stem, max_val);
    const HslImage hsl = to_hsl(img, max_val);
    DecomposeFileResult res;
    res.stem = stem;
    res.hsl_preview = out_dir / (stem + "_hsl.png");
    write_rgb8_png(res.hsl_preview, hsl_to_rgb(hsl));
    return res;
}

} // namespace

DecomposeFileResult decompose_mosaic_file(const std::filesystem::path& mosaic_path,
                                          const SuperpixelLayout& layout,
                                          const std::filesystem::path& out_dir,
                                          int expect_bit_depth) {
    const DofpMosaic mosaic = read_mosaic(mosaic_path, layout);
    if (expect_bit_depth != 0 && mosaic.bit_depth != expect_bit_depth)
        throw std::runtime_error(mosaic_path.string() + ": bit depth " +
                                 std::to_string(mosaic.bit_depth) + " does not match declared " +
                                 std::to_string(expect_bit_depth));
    const PolarImage img = decompose(split(mosaic));
    return write_decomposition(img, mosaic_path.stem().string(), out_dir, mosaic.max_val());
}

DecomposeFileResult decompose_plane_files(const std::vector<std::filesystem::path>& plane_paths,
                                          const std::filesystem::path& out_dir) {
    if (plane_paths.size() != 4)
        throw std::invalid_argument("expected four plane files: p0,p45,p90,p135");
    GrayImage g[4];
    for (int i = 0; i < 4; ++i) g[i] = read_gray_png(plane_paths[i]);
    for (int i = 1; i < 4; ++i)
        if (g[i].width != g[0].width || g[i].height != g[0].height ||
            g[i].bit_depth != g[0].bit_depth)
            throw std::runtime_error("plane files disagree in size or bit depth");

    AnalyzerQuad quad{Plane(g[0].width, g[0].height), Plane(g[0].width, g[0].height),
                      Plane(g[0].width, g[0].height), Plane(g[0].width, g[0].height)};
    Plane* planes[4] = {&quad.p0, &quad.p45, &quad.p90, &quad.p135};
    for (int i = 0; i < 4; ++i) {
        auto s = planes[i]->samples();
        for (std::size_t k = 0; k < s.size(); ++k) s[k] = static_cast<float>(g[i].pixels[k]);
    }
    const double max_val = g[0].bit_depth == 8 ? 255.0 : 65535.0;
    return write_decomposition(decompose(quad), plane_paths[0].stem().string(), out_dir, max_val);
}

MetricsRunResult run_metrics(const std::filesystem::path& pred_dir,
                             const std::filesystem::path& gt_dir, const ClassPalette& palette,
                             const std::set<int>& exclude) {
    palette.validate();
    if (!std::filesystem::is_directory(gt_dir))
        throw std::runtime_error(gt_dir.string() + ": not a directory");

    std::vector<std::string> stems;
    for (const auto& entry : std::filesystem::directory_iterator(gt_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".png")
            stems.push_back(entry.path().stem().string());
    std::sort(stems.begin(), stems.end());
    if (stems.empty()) throw std::runtime_error(gt_dir.string() + ": no label maps found");

    MetricsRunResult res;
    res.cm = ConfusionMatrix(palette.size());
    for (const auto& stem : stems) {
        const auto pred_path = pred_dir / (stem + ".png");
        if (!std::filesystem::exists(pred_path))
            throw std::runtime_error(pred_path.string() + ": missing prediction for " + stem);
        const LabelMap gt = read_label(gt_dir / (stem + ".png"), palette.size());
        const LabelMap pred = read_label(pred_path, palette.size());
        accumulate(gt, pred, res.cm);
        ++res.image_pairs;
    }
    res.json = metrics_to_json(res.cm, palette, exclude);
    res.table = metrics_table(res.cm, palette, exclude);
    return res;
}

} // namespace polaug::io
