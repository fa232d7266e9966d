// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0
//
// polaug: physics-preserving augmentation toolkit for polarimetric images.
//
// Subcommands:
//   decompose  raw mosaic or four analyzer planes -> intensity/aop/dop files
//   augment    expand a dataset per config, with manifest
//   validate   simulated-sensor checks of the augmentation operators
//   metrics    score predicted label maps against ground truth
//
// Exit codes: 0 success, 1 validation/tolerance failure, 2 I/O or config
// error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "io/config.hpp"
#include "io/pipeline.hpp"
#include "io/report.hpp"
#include "io/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitIoError = 2;

std::set<int> parse_exclude_classes(const std::string& list, const polaug::ClassPalette& palette) {
    std::set<int> out;
    std::istringstream in(list);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        if (auto id = palette.id_of(tok)) {
            out.insert(*id);
            continue;
        }
        try {
            const int id = std::stoi(tok);
            (void)palette.by_id(id);
            out.insert(id);
        } catch (const std::exception&) {
            throw std::invalid_argument("--exclude-classes: unknown class '" + tok + "'");
        }
    }
    return out;
}

void write_report_file(const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot write report");
    out << j.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"physics-preserving augmentation toolkit for polarimetric images"};
    app.set_version_flag("--version", polaug::io::kToolVersion);
    app.require_subcommand(1);

    // decompose -------------------------------------------------------------
    auto* dec = app.add_subcommand("decompose", "decompose a raw frame into I/AoP/DoP planes");
    std::string dec_mosaic;
    std::vector<std::string> dec_planes;
    std::string dec_out = ".";
    std::string dec_layout = polaug::SuperpixelLayout::standard().to_string();
    int dec_bit_depth = 0;
    dec->add_option("--mosaic", dec_mosaic, "raw DoFP mosaic PNG");
    dec->add_option("--planes", dec_planes,
                    "four analyzer plane PNGs in 0,45,90,135 order")
        ->expected(4);
    dec->add_option("--out-dir", dec_out, "output directory");
    dec->add_option("--layout", dec_layout, "superpixel layout, e.g. \"0,45;135,90\"");
    dec->add_option("--bit-depth", dec_bit_depth, "declared input bit depth (8 or 16)")
        ->check(CLI::IsMember({8, 16}));

    // augment ---------------------------------------------------------------
    auto* aug = app.add_subcommand("augment", "expand a dataset with unique augmentations");
    std::string aug_config;
    std::string aug_input, aug_labels, aug_output, aug_mode, aug_layout;
    int aug_count = -1, aug_bit_depth = 0;
    std::uint64_t aug_seed = 0;
    bool aug_seed_set = false, aug_allow_missing = false;
    aug->add_option("--config", aug_config, "TOML config file");
    aug->add_option("--input-dir", aug_input, "mosaic directory (overrides config)");
    aug->add_option("--label-dir", aug_labels, "label directory (overrides config)");
    aug->add_option("--output-dir", aug_output, "output directory (overrides config)");
    aug->add_option("--mode", aug_mode, "regularized|naive|none");
    aug->add_option("--layout", aug_layout, "superpixel layout");
    aug->add_option("--augments-per-image", aug_count, "unique augmentations per source");
    aug->add_option("--bit-depth", aug_bit_depth, "sensor bit depth")
        ->check(CLI::IsMember({8, 16}));
    aug->add_option("--seed", aug_seed, "64-bit pipeline seed")
        ->each([&](const std::string&) { aug_seed_set = true; });
    aug->add_flag("--allow-missing", aug_allow_missing, "skip unpaired inputs instead of failing");

    // validate --------------------------------------------------------------
    auto* val = app.add_subcommand("validate", "simulated-sensor augmentation checks");
    std::vector<int> val_thetas;
    std::string val_report;
    val->add_option("--thetas", val_thetas, "rotation angles in degrees (multiples of 5)")
        ->delimiter(',');
    val->add_option("--report", val_report, "write the JSON report to this file");

    // metrics ---------------------------------------------------------------
    auto* met = app.add_subcommand("metrics", "segmentation metrics for label map pairs");
    std::string met_pred, met_gt, met_exclude, met_report;
    met->add_option("--pred-dir", met_pred, "predicted label maps")->required();
    met->add_option("--gt-dir", met_gt, "ground-truth label maps")->required();
    met->add_option("--exclude-classes", met_exclude,
                    "classes to drop from the secondary mean (names or ids, comma separated)");
    met->add_option("--report", met_report, "write the JSON report to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dec->parsed()) {
            const auto layout = polaug::SuperpixelLayout::parse(dec_layout);
            if (dec_mosaic.empty() == dec_planes.empty()) {
                std::cerr << "decompose: give exactly one of --mosaic or --planes\n";
                return kExitIoError;
            }
            polaug::io::DecomposeFileResult res;
            if (!dec_mosaic.empty()) {
                res = polaug::io::decompose_mosaic_file(dec_mosaic, layout, dec_out,
                                                        dec_bit_depth);
            } else {
                std::vector<std::filesystem::path> paths(dec_planes.begin(), dec_planes.end());
                res = polaug::io::decompose_plane_files(paths, dec_out);
            }
            std::cout << "decomposed '" << res.stem << "' -> " << dec_out << " (planes + "
                      << res.hsl_preview.filename().string() << ")\n";
            return kExitOk;
        }

        if (aug->parsed()) {
            polaug::io::PipelineConfig cfg;
            if (!aug_config.empty()) cfg = polaug::io::load_config(aug_config);
            if (!aug_input.empty()) cfg.input_dir = aug_input;
            if (!aug_labels.empty()) cfg.label_dir = aug_labels;
            if (!aug_output.empty()) cfg.output_dir = aug_output;
            if (!aug_mode.empty()) cfg.mode = polaug::parse_augment_mode(aug_mode);
            if (!aug_layout.empty()) cfg.layout = polaug::SuperpixelLayout::parse(aug_layout);
            if (aug_count >= 0) cfg.augments_per_image = aug_count;
            if (aug_bit_depth != 0) cfg.bit_depth = aug_bit_depth;
            if (aug_seed_set) cfg.seed = aug_seed;
            cfg.allow_missing = cfg.allow_missing || aug_allow_missing;

            const auto summary = polaug::io::run_augment_pipeline(cfg);
            for (const auto& s : summary.skipped)
                std::cerr << "skipped unpaired input: " << s << "\n";
            std::cout << summary.sources << " sources -> " << summary.outputs << " outputs; "
                      << "manifest " << summary.manifest.string() << "\n";
            return kExitOk;
        }

        if (val->parsed()) {
            const auto thetas =
                val_thetas.empty() ? polaug::io::default_validation_thetas() : val_thetas;
            const auto outcome = polaug::io::run_validation(thetas);
            if (!val_report.empty()) write_report_file(val_report, outcome.report);
            for (const auto& f : outcome.failures) std::cerr << "FAILED: " << f << "\n";
            std::cout << (outcome.passed ? "validation passed" : "validation FAILED") << " ("
                      << outcome.report["checks"].size() << " checks)\n";
            return outcome.passed ? kExitOk : kExitValidationFailure;
        }

        if (met->parsed()) {
            const auto palette = polaug::ClassPalette::urban_default();
            const auto exclude = parse_exclude_classes(met_exclude, palette);
            const auto res = polaug::io::run_metrics(met_pred, met_gt, palette, exclude);
            if (!met_report.empty()) write_report_file(met_report, res.json);
            std::cout << res.table;
            std::cout << "(" << res.image_pairs << " image pairs, " << res.json["evaluated_pixels"]
                      << " pixels)\n";
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    }
    return kExitOk;
}
