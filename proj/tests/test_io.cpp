// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "io/config.hpp"
#include "io/pipeline.hpp"
#include "io/plane_codec.hpp"
#include "io/png_io.hpp"
#include "io/validate.hpp"
#include "polaug/oracle.hpp"
#include "test_support.hpp"

using namespace polaug;
using namespace polaug::test;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("polaug_test_" + tag + "_" +
                                            std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// A small synthetic dataset: per-index scene variations rendered to mosaics
// plus blocky label maps.
void write_dataset(const fs::path& input_dir, const fs::path& label_dir, int count,
                   int mosaic_size = 16) {
    fs::create_directories(input_dir);
    fs::create_directories(label_dir);
    for (int i = 0; i < count; ++i) {
        SyntheticScene s;
        s.name = "src";
        s.width = mosaic_size / 2;
        s.height = mosaic_size / 2;
        s.intensity = {FieldKind::linear, 120.0 + i, 0.0, 30.0, -10.0};
        s.dop = {FieldKind::linear, 0.5, 0.0, 0.2, 0.1};
        s.aop = {FieldKind::linear, wrap_degrees(20.0 * i + 10.0, 170.0), 0.0, 40.0, 10.0};
        const DofpMosaic mosaic{merge(render(s), SuperpixelLayout::standard()).data,
                                SuperpixelLayout::standard(), 16};
        char name[32];
        std::snprintf(name, sizeof name, "img%03d", i);
        io::write_mosaic(mosaic, input_dir / (std::string(name) + ".png"));

        LabelMap lbl(s.width, s.height, 7);
        for (int y = 0; y < s.height; ++y)
            for (int x = 0; x < s.width; ++x)
                lbl.at(x, y) = static_cast<std::uint8_t>((x / 3 + y / 3 + i) % 7);
        io::write_label(lbl, label_dir / (std::string(name) + ".png"));
    }
}

io::PipelineConfig small_config(const TempDir& dir, int augments) {
    io::PipelineConfig cfg;
    cfg.input_dir = dir.path / "in";
    cfg.label_dir = dir.path / "lbl";
    cfg.output_dir = dir.path / "out";
    cfg.augments_per_image = augments;
    cfg.seed = 4242;
    cfg.bit_depth = 16;
    return cfg;
}

} // namespace

TEST_CASE("png: 8- and 16-bit grayscale round trips") {
    TempDir dir("png");
    {
        std::vector<std::uint16_t> px = {0, 1, 65535, 12345, 40000, 7};
        io::write_gray16_png(dir.path / "g16.png", 3, 2, px.data());
        const io::GrayImage g = io::read_gray_png(dir.path / "g16.png");
        CHECK(g.bit_depth == 16);
        CHECK(g.width == 3);
        CHECK(g.height == 2);
        CHECK(std::vector<std::uint16_t>(g.pixels) == px);
    }
    {
        std::vector<std::uint8_t> px = {0, 255, 128, 1, 2, 3};
        io::write_gray8_png(dir.path / "g8.png", 2, 3, px.data());
        const io::GrayImage g = io::read_gray_png(dir.path / "g8.png");
        CHECK(g.bit_depth == 8);
        for (std::size_t i = 0; i < px.size(); ++i) CHECK(g.pixels[i] == px[i]);
    }
    CHECK_THROWS(io::read_gray_png(dir.path / "missing.png"));
}

TEST_CASE("plane codec: encode/decode/encode is bit-identical on disk") {
    TempDir dir("codec");
    Rng rng(11);
    const PolarImage img = decompose(random_consistent_quad(rng, 9, 7));
    io::encode_polar(img, dir.path, "a", 255.0);
    const PolarImage back = io::decode_polar(dir.path, "a");
    back.validate();
    io::encode_polar(back, dir.path, "b", 255.0);

    for (const char* suffix : {"_intensity.png", "_aop.png", "_dop.png"})
        CHECK(slurp(dir.path / ("a" + std::string(suffix))) ==
              slurp(dir.path / ("b" + std::string(suffix))));

    // Quantization error stays within one 16-bit code step.
    CHECK(max_abs_diff(back.intensity, img.intensity) <= 2.0 * 255.0 / 65535.0);
    CHECK(max_abs_diff(back.aop, img.aop) <= 180.0 / 65535.0);
    CHECK(max_abs_diff(back.dop, img.dop) <= 1.0 / 65535.0);
    CHECK(io::read_encoded_max_val(dir.path, "a") == 255.0);
}

TEST_CASE("plane codec: aop code 65535 decodes inside the canonical range") {
    TempDir dir("aopmax");
    PolarImage img = uniform_polar(2, 2, 10, 0.5f, 0);
    img.aop = Plane(2, 2, std::nextafter(180.0f, 0.0f));
    io::encode_polar(img, dir.path, "edge", 255.0);
    const PolarImage back = io::decode_polar(dir.path, "edge");
    back.validate(); // aop < 180 everywhere
    io::encode_polar(back, dir.path, "edge2", 255.0);
    CHECK(slurp(dir.path / "edge_aop.png") == slurp(dir.path / "edge2_aop.png"));
}

TEST_CASE("config: parsing, defaults, and errors") {
    const std::string text = R"(
# dataset expansion
input_dir = "in"          # mosaics
label_dir = "lbl"
output_dir = "out"
layout = "90,45;135,0"
augments_per_image = 4
flip_probability = 0.5
mode = "naive"
seed = 99
bit_depth = 8
)";
    const io::PipelineConfig cfg = io::parse_config_text(text);
    CHECK(cfg.input_dir == "in");
    CHECK(cfg.layout.angles[0][0] == 90);
    CHECK(cfg.augments_per_image == 4);
    CHECK(cfg.flip_probability == 0.5);
    CHECK(cfg.mode == AugmentMode::naive);
    CHECK(cfg.seed == 99);
    CHECK(cfg.bit_depth == 8);
    CHECK(cfg.rotation_increment_deg == 5); // default preserved

    CHECK_THROWS(io::parse_config_text("unknown_key = 1"));
    CHECK_THROWS(io::parse_config_text("flip_probability = 1.5"));
    CHECK_THROWS(io::parse_config_text("bit_depth = 12"));
    CHECK_THROWS(io::parse_config_text("[section]\n"));
    CHECK_THROWS(io::parse_config_text("rotation_increment_deg = 7"));
}

TEST_CASE("pipeline: counts, manifest integrity, determinism") {
    TempDir dir("pipe");
    write_dataset(dir.path / "in", dir.path / "lbl", 3);
    io::PipelineConfig cfg = small_config(dir, 4);

    const io::PipelineSummary sum = io::run_augment_pipeline(cfg);
    CHECK(sum.sources == 3);
    CHECK(sum.outputs == 3 * (1 + 4));

    // Manifest <-> files referential integrity.
    std::set<std::string> manifest_stems;
    std::istringstream manifest(slurp(sum.manifest));
    std::string line;
    std::set<std::pair<std::string, std::pair<int, bool>>> spec_keys;
    while (std::getline(manifest, line)) {
        const auto rec = nlohmann::json::parse(line);
        const std::string id = rec.at("output_id");
        manifest_stems.insert(id);
        CHECK(fs::exists(dir.path / "out" / (id + "_intensity.png")));
        CHECK(fs::exists(dir.path / "out" / (id + "_aop.png")));
        CHECK(fs::exists(dir.path / "out" / (id + "_dop.png")));
        CHECK(fs::exists(dir.path / "out" / (id + "_label.png")));
        CHECK(fs::exists(dir.path / "out" / (id + "_meta.json")));
        CHECK(rec.at("tool_version") == io::kToolVersion);
        // (source, spec) unique within the manifest
        CHECK(spec_keys
                  .insert({rec.at("source_id").get<std::string>(),
                           {rec.at("rotation_deg").get<int>(), rec.at("flip").get<bool>()}})
                  .second);
    }
    CHECK(manifest_stems.size() == sum.outputs);
    // Every produced file belongs to a manifest record.
    for (const auto& entry : fs::directory_iterator(dir.path / "out")) {
        const std::string name = entry.path().filename().string();
        if (name == "manifest.jsonl") continue;
        const auto us = name.rfind('_');
        CHECK(manifest_stems.count(name.substr(0, us)) == 1);
    }

    // Re-running with the same config is byte-identical.
    const std::string manifest_bytes = slurp(sum.manifest);
    fs::remove_all(dir.path / "out");
    const io::PipelineSummary again = io::run_augment_pipeline(cfg);
    CHECK(slurp(again.manifest) == manifest_bytes);

    // A different seed shuffles differently.
    cfg.seed = 777;
    fs::remove_all(dir.path / "out");
    const io::PipelineSummary other = io::run_augment_pipeline(cfg);
    CHECK(slurp(other.manifest) != manifest_bytes);
}

TEST_CASE("pipeline: mode none writes the originals only") {
    TempDir dir("none");
    write_dataset(dir.path / "in", dir.path / "lbl", 2);
    io::PipelineConfig cfg = small_config(dir, 5);
    cfg.mode = AugmentMode::none;
    const io::PipelineSummary sum = io::run_augment_pipeline(cfg);
    CHECK(sum.outputs == 2);
    std::istringstream manifest(slurp(sum.manifest));
    std::string line;
    while (std::getline(manifest, line)) {
        const auto rec = nlohmann::json::parse(line);
        CHECK(rec.at("rotation_deg") == 0);
        CHECK(rec.at("flip") == false);
        CHECK(rec.at("mode") == "none");
    }
}

TEST_CASE("pipeline: unpaired inputs fail unless allow_missing") {
    TempDir dir("unpaired");
    write_dataset(dir.path / "in", dir.path / "lbl", 2);
    io::write_mosaic(DofpMosaic{Plane(16, 16, 5), SuperpixelLayout::standard(), 16},
                     dir.path / "in" / "zzz.png");
    io::PipelineConfig cfg = small_config(dir, 2);
    CHECK_THROWS_AS(io::run_augment_pipeline(cfg), io::PairingError);

    cfg.allow_missing = true;
    const io::PipelineSummary sum = io::run_augment_pipeline(cfg);
    CHECK(sum.sources == 2);
    CHECK(sum.skipped == std::vector<std::string>{"zzz"});
}

TEST_CASE("pipeline: augmented labels are VOID exactly off the valid mask") {
    TempDir dir("voidmask");
    write_dataset(dir.path / "in", dir.path / "lbl", 1, 20);
    io::PipelineConfig cfg = small_config(dir, 6);
    const io::PipelineSummary sum = io::run_augment_pipeline(cfg);

    std::istringstream manifest(slurp(sum.manifest));
    std::string line;
    while (std::getline(manifest, line)) {
        const auto rec = nlohmann::json::parse(line);
        if (rec.at("mode") == "none") continue;
        const TransformSpec spec{rec.at("rotation_deg").get<int>(),
                                 rec.at("flip").get<bool>()};
        const LabelMap lbl =
            io::read_label(dir.path / "out" / (rec.at("output_id").get<std::string>() +
                                               "_label.png"),
                           7);
        // Reconstruct the mask from the spec geometry on a dummy image.
        const PolarImage dummy = uniform_polar(lbl.width, lbl.height, 1, 0.5f, 10);
        const TransformedPolar t = transform_polar(dummy, spec, AugmentMode::regularized);
        for (int y = 0; y < lbl.height; ++y)
            for (int x = 0; x < lbl.width; ++x)
                CHECK((lbl.at(x, y) == kVoidLabel) == !t.valid.at(x, y));
    }
}

TEST_CASE("decompose command: synthetic mosaic round trips through files") {
    TempDir dir("dec");
    SyntheticScene s;
    s.name = "scene";
    s.width = 8;
    s.height = 8;
    s.intensity = {FieldKind::linear, 120.0, 0.0, 30.0, -10.0};
    s.dop = {FieldKind::linear, 0.5, 0.0, 0.3, 0.1};
    s.aop = {FieldKind::linear, 60.0, 0.0, 40.0, 10.0};
    const AnalyzerQuad quad = render(s);
    const DofpMosaic mosaic{merge(quad, SuperpixelLayout::standard()).data,
                            SuperpixelLayout::standard(), 16};
    io::write_mosaic(mosaic, dir.path / "scene.png");

    const auto res = io::decompose_mosaic_file(dir.path / "scene.png",
                                               SuperpixelLayout::standard(), dir.path / "out");
    CHECK(res.stem == "scene");
    CHECK(fs::exists(res.hsl_preview));

    // Compare against decomposing the file content directly; the only extra
    // error the command may add is the 16-bit plane quantization.
    const PolarImage decoded = io::decode_polar(dir.path / "out", "scene");
    const PolarImage direct =
        decompose(split(io::read_mosaic(dir.path / "scene.png", SuperpixelLayout::standard())));
    CHECK(max_abs_diff(decoded.intensity, direct.intensity) <= 2.0 * 65535.0 / 65535.0 + 1.0);
    CHECK(max_abs_diff(decoded.dop, direct.dop) <= 2.0 / 65535.0);
    double worst_aop = 0.0;
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
            worst_aop = std::max(worst_aop,
                                 circular_distance_deg(decoded.aop.at(x, y),
                                                       direct.aop.at(x, y), kAopPeriodDeg));
    CHECK(worst_aop <= 2.0 * 180.0 / 65535.0);

    // And the scene itself is recovered within the mosaic's integer
    // quantization (render values round to whole sensor codes).
    const PolarImage in_memory = decompose(split(mosaic));
    CHECK(max_abs_diff(decoded.intensity, in_memory.intensity) <= 3.0);
    CHECK(max_abs_diff(decoded.dop, in_memory.dop) <= 0.05);

    // All-zero mosaic decomposes to all-zero planes.
    io::write_mosaic(DofpMosaic{Plane(8, 8, 0), SuperpixelLayout::standard(), 16},
                     dir.path / "zero.png");
    io::decompose_mosaic_file(dir.path / "zero.png", SuperpixelLayout::standard(),
                              dir.path / "out");
    const PolarImage z = io::decode_polar(dir.path / "out", "zero");
    CHECK(max_abs_diff(z.intensity, Plane(4, 4, 0)) == 0.0);
    CHECK(max_abs_diff(z.dop, Plane(4, 4, 0)) == 0.0);
}

TEST_CASE("decompose command: bit depth mismatch and odd dimensions fail") {
    TempDir dir("decerr");
    std::vector<std::uint8_t> px(9, 7);
    io::write_gray8_png(dir.path / "odd.png", 3, 3, px.data());
    CHECK_THROWS(io::decompose_mosaic_file(dir.path / "odd.png", SuperpixelLayout::standard(),
                                           dir.path / "out"));
    std::vector<std::uint16_t> px16(16, 7);
    io::write_gray16_png(dir.path / "deep.png", 4, 4, px16.data());
    CHECK_THROWS(io::decompose_mosaic_file(dir.path / "deep.png", SuperpixelLayout::standard(),
                                           dir.path / "out", 8));
}

TEST_CASE("metrics command: identical directories score 100%") {
    TempDir dir("met");
    fs::create_directories(dir.path / "gt");
    Rng rng(3);
    for (int i = 0; i < 3; ++i) {
        LabelMap lbl(6, 6, 7);
        for (auto& v : lbl.data) v = static_cast<std::uint8_t>(rng.bounded(7));
        io::write_label(lbl, dir.path / "gt" / ("m" + std::to_string(i) + ".png"));
    }
    const auto res = io::run_metrics(dir.path / "gt", dir.path / "gt",
                                     ClassPalette::urban_default(), {1});
    CHECK(res.image_pairs == 3);
    CHECK(res.json.at("mean_iou") == 1.0);
    CHECK(res.json.at("precision_micro") == 1.0);
    CHECK(res.table.find("100.0") != std::string::npos);

    CHECK_THROWS(io::run_metrics(dir.path / "missing", dir.path / "gt",
                                 ClassPalette::urban_default(), {}));
}

TEST_CASE("metrics command: committed 4-pixel fixture and disjoint classes") {
    TempDir dir("metfix");
    fs::create_directories(dir.path / "gt");
    fs::create_directories(dir.path / "pred");
    const fs::path fixtures = POLAUG_FIXTURE_DIR;
    fs::copy_file(fixtures / "four_px_gt.png", dir.path / "gt" / "f.png");
    fs::copy_file(fixtures / "four_px_pred.png", dir.path / "pred" / "f.png");
    const auto res = io::run_metrics(dir.path / "pred", dir.path / "gt",
                                     ClassPalette::urban_default(), {});
    CHECK(res.json.at("classes")[0].at("iou") == 0.5);
    CHECK(res.json.at("classes")[1].at("iou") == doctest::Approx(2.0 / 3.0));

    // Empty intersection: every affected class scores IoU 0.
    LabelMap gt(2, 2, 7, 2), pred(2, 2, 7, 4);
    io::write_label(gt, dir.path / "gt" / "g.png");
    io::write_label(pred, dir.path / "pred" / "g.png");
    ConfusionMatrix cm(7);
    accumulate(gt, pred, cm);
    CHECK(*iou(cm, 2) == 0.0);
    CHECK(*iou(cm, 4) == 0.0);
}

TEST_CASE("validate: default suite passes and reports checks") {
    const auto outcome = io::run_validation({0, 45, 90, 180, 270});
    CHECK(outcome.passed);
    CHECK(outcome.failures.empty());
    CHECK(outcome.report.at("checks").size() > 0);
    CHECK(outcome.report.at("passed") == true);
    CHECK_THROWS(io::run_validation({7}));
}
