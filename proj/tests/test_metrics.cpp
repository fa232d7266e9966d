// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <optional>

#include "brute_force.hpp"
#include "polaug/seg_metrics.hpp"
#include "test_support.hpp"

using namespace polaug;
using namespace polaug::test;

namespace {

bool same_opt(std::optional<double> a, std::optional<double> b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || *a == *b;
}

LabelMap random_labels(Rng& rng, int w, int h, int n, double void_prob) {
    LabelMap lbl(w, h, n);
    for (auto& v : lbl.data)
        v = rng.unit() < void_prob ? kVoidLabel
                                   : static_cast<std::uint8_t>(rng.bounded(n));
    return lbl;
}

} // namespace

TEST_CASE("accumulate: diagonal on perfect prediction, VOID skipped") {
    LabelMap gt(2, 2, 3);
    gt.at(0, 0) = 0;
    gt.at(1, 0) = 1;
    gt.at(0, 1) = 2;
    gt.at(1, 1) = kVoidLabel;
    ConfusionMatrix cm(3);
    accumulate(gt, gt, cm);
    CHECK(cm.total() == 3);
    CHECK(cm.at(0, 0) == 1);
    CHECK(cm.at(1, 1) == 1);
    CHECK(cm.at(2, 2) == 1);

    LabelMap all_void(2, 2, 3, kVoidLabel);
    accumulate(all_void, gt, cm);
    CHECK(cm.total() == 3); // unchanged

    LabelMap wrong_size(3, 2, 3);
    CHECK_THROWS_AS(accumulate(gt, wrong_size, cm), std::invalid_argument);
    LabelMap out_of_range = gt;
    out_of_range.at(0, 0) = 5; // >= 3 classes
    CHECK_THROWS_AS(accumulate(out_of_range, gt, cm), std::invalid_argument);
}

TEST_CASE("metrics: hand-counted 4-pixel fixture") {
    // gt = [A,A,B,B], pred = [A,B,B,B]
    LabelMap gt(4, 1, 2), pred(4, 1, 2);
    gt.data = {0, 0, 1, 1};
    pred.data = {0, 1, 1, 1};
    ConfusionMatrix cm(2);
    accumulate(gt, pred, cm);
    CHECK(cm.at(0, 0) == 1);
    CHECK(cm.at(0, 1) == 1);
    CHECK(cm.at(1, 1) == 2);
    CHECK(*iou(cm, 0) == doctest::Approx(0.5));
    CHECK(*iou(cm, 1) == doctest::Approx(2.0 / 3.0));
    CHECK(*recall(cm, 0) == doctest::Approx(0.5));
    CHECK(*recall(cm, 1) == doctest::Approx(1.0));
    CHECK(*mean_iou(cm, {1}) == doctest::Approx(0.5));
    CHECK(*mean_iou(cm) == doctest::Approx(0.5 * (0.5 + 2.0 / 3.0)));
}

TEST_CASE("metrics: perfect confusion matrix scores 1 everywhere defined") {
    ConfusionMatrix cm(4);
    cm.at(0, 0) = 10;
    cm.at(1, 1) = 5;
    cm.at(2, 2) = 7;
    // class 3 absent: undefined metrics are reported absent.
    CHECK(*iou(cm, 0) == 1.0);
    CHECK(*recall(cm, 1) == 1.0);
    CHECK(*class_precision(cm, 2) == 1.0);
    CHECK(!iou(cm, 3).has_value());
    CHECK(*mean_iou(cm) == 1.0);
    CHECK(*precision_overall(cm) == 1.0);
    CHECK(*specificity_overall(cm) == 1.0);
}

TEST_CASE("metrics: match the brute-force recount on random pairs") {
    Rng rng(0x5eed);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 7;
        const int w = 1 + static_cast<int>(rng.bounded(16));
        const int h = 1 + static_cast<int>(rng.bounded(16));
        const LabelMap gt = random_labels(rng, w, h, n, 0.15);
        const LabelMap pred = random_labels(rng, w, h, n, 0.0);
        ConfusionMatrix cm(n);
        accumulate(gt, pred, cm);
        const BruteForce bf(gt, pred, n);
        CHECK(cm.total() == bf.total);
        std::uint64_t tp_sum = 0, fp_sum = 0, tn_sum = 0;
        for (int c = 0; c < n; ++c) {
            CHECK(same_opt(iou(cm, c), bf.iou(c)));
            CHECK(same_opt(recall(cm, c), bf.recall(c)));
            CHECK(same_opt(class_precision(cm, c), bf.precision(c)));
            tp_sum += bf.tp[c];
            fp_sum += bf.fp[c];
            tn_sum += bf.tn[c];
        }
        if (tp_sum + fp_sum > 0)
            CHECK(*precision_overall(cm) == double(tp_sum) / double(tp_sum + fp_sum));
        if (tn_sum + fp_sum > 0)
            CHECK(*specificity_overall(cm) == double(tn_sum) / double(tn_sum + fp_sum));
    }
}

TEST_CASE("metrics: iou never exceeds recall or precision; exclusion monotonicity") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const LabelMap gt = random_labels(rng, 12, 12, 5, 0.1);
        const LabelMap pred = random_labels(rng, 12, 12, 5, 0.0);
        ConfusionMatrix cm(5);
        accumulate(gt, pred, cm);
        for (int c = 0; c < 5; ++c) {
            const auto i = iou(cm, c);
            if (!i) continue;
            if (auto r = recall(cm, c)) CHECK(*i <= *r + 1e-12);
            if (auto p = class_precision(cm, c)) CHECK(*i <= *p + 1e-12);
        }
        // Excluding a class below the mean cannot lower the mean.
        const auto mean = mean_iou(cm);
        if (!mean) continue;
        for (int c = 0; c < 5; ++c) {
            const auto i = iou(cm, c);
            if (i && *i < *mean) {
                const auto without = mean_iou(cm, {c});
                if (without) CHECK(*without >= *mean - 1e-12);
            }
        }
    }
}

TEST_CASE("accumulate: batch addition is associative and commutative") {
    Rng rng(7);
    const LabelMap gt1 = random_labels(rng, 8, 8, 4, 0.1);
    const LabelMap pr1 = random_labels(rng, 8, 8, 4, 0.0);
    const LabelMap gt2 = random_labels(rng, 8, 8, 4, 0.1);
    const LabelMap pr2 = random_labels(rng, 8, 8, 4, 0.0);
    ConfusionMatrix seq(4), merged_a(4), merged_b(4);
    accumulate(gt1, pr1, seq);
    accumulate(gt2, pr2, seq);
    accumulate(gt1, pr1, merged_a);
    accumulate(gt2, pr2, merged_b);
    merged_b += merged_a;
    for (int g = 0; g < 4; ++g)
        for (int p = 0; p < 4; ++p) CHECK(seq.at(g, p) == merged_b.at(g, p));
}

TEST_CASE("dice_loss: zero on exact one-hot match with all classes present") {
    LabelMap gt(3, 1, 3);
    gt.data = {0, 1, 2};
    const auto onehot = make_one_hot(gt);
    CHECK(dice_loss(onehot, onehot) == doctest::Approx(0.0));
}

TEST_CASE("dice_loss: any deviation from the one-hot truth costs loss") {
    LabelMap gt(3, 2, 3);
    gt.data = {0, 1, 2, 0, 1, 2};
    auto pred = make_one_hot(gt);
    CHECK(dice_loss(make_one_hot(gt), pred) == 0.0);
    pred[0].at(0, 0) = 0.9f; // leak 0.1 of a pixel away from its class
    pred[1].at(0, 0) = 0.1f;
    CHECK(dice_loss(make_one_hot(gt), pred) > 0.0);
}

TEST_CASE("dice_loss: disjoint prediction and truth gives per-class term 1") {
    LabelMap gt(2, 1, 2), pred(2, 1, 2);
    gt.data = {0, 0};
    pred.data = {1, 1};
    CHECK(dice_loss(make_one_hot(gt), make_one_hot(pred)) == doctest::Approx(1.0));
}

TEST_CASE("dice_loss: hand-evaluated two-pixel soft case is 0.5") {
    LabelMap gt(2, 1, 2);
    gt.data = {0, 1};
    std::vector<Plane> pred{Plane(2, 1, 0.5f), Plane(2, 1, 0.5f)};
    CHECK(dice_loss(make_one_hot(gt), pred) == doctest::Approx(0.5));
}

TEST_CASE("dice_loss: bounded in [0,1] on random soft predictions") {
    Rng rng(2718);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.bounded(5));
        const int w = 1 + static_cast<int>(rng.bounded(6));
        const int h = 1 + static_cast<int>(rng.bounded(6));
        const LabelMap gt = random_labels(rng, w, h, n, 0.2);
        std::vector<Plane> pred(n, Plane(w, h));
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double sum = 0.0;
                std::vector<double> raw(n);
                for (int c = 0; c < n; ++c) sum += raw[c] = rng.unit() + 1e-6;
                for (int c = 0; c < n; ++c)
                    pred[c].at(x, y) = static_cast<float>(raw[c] / sum);
            }
        const double loss = dice_loss(make_one_hot(gt), pred);
        CHECK(loss >= 0.0);
        CHECK(loss <= 1.0);
    }
}

TEST_CASE("dice_loss: invariant under consistent class relabeling") {
    Rng rng(3141);
    const int n = 4;
    const LabelMap gt = random_labels(rng, 6, 6, n, 0.1);
    std::vector<Plane> pred(n, Plane(6, 6));
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 6; ++x) {
            double sum = 0.0;
            std::vector<double> raw(n);
            for (int c = 0; c < n; ++c) sum += raw[c] = rng.unit() + 1e-6;
            for (int c = 0; c < n; ++c) pred[c].at(x, y) = static_cast<float>(raw[c] / sum);
        }
    const double base = dice_loss(make_one_hot(gt), pred);

    const int perm[4] = {2, 0, 3, 1};
    LabelMap gt_p = gt;
    for (auto& v : gt_p.data)
        if (v != kVoidLabel) v = static_cast<std::uint8_t>(perm[v]);
    std::vector<Plane> pred_p(n, Plane(6, 6));
    for (int c = 0; c < n; ++c) pred_p[perm[c]] = pred[c];
    CHECK(dice_loss(make_one_hot(gt_p), pred_p) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("dice_loss: class absent from both sides contributes zero loss") {
    LabelMap gt(2, 1, 3);
    gt.data = {0, 0};
    LabelMap pred(2, 1, 3);
    pred.data = {0, 0};
    // Classes 1 and 2 are empty on both sides; only class 0 scores, perfectly.
    CHECK(dice_loss(make_one_hot(gt), pred.num_classes
                                          ? make_one_hot(pred)
                                          : std::vector<Plane>{}) == doctest::Approx(0.0));
}

TEST_CASE("palette: defaults are valid, lookups work") {
    const ClassPalette p = ClassPalette::urban_default();
    p.validate();
    CHECK(p.size() == 7);
    CHECK(*p.id_of("water") == 3);
    CHECK(p.by_id(5).name == "sky");
    CHECK(!p.id_of("lava").has_value());
}
