// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#include "polaug/seg_metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace polaug {

ClassPalette ClassPalette::urban_default() {
    ClassPalette p;
    p.entries = {
        {0, "road", {190, 140, 20}},     // dark yellow/orange
        {1, "buildings", {128, 128, 128}},
        {2, "cars", {200, 30, 30}},
        {3, "water", {40, 80, 220}},
        {4, "windows", {240, 230, 140}}, // light yellow
        {5, "sky", {120, 220, 120}},     // light green
        {6, "none", {200, 200, 200}},    // light grey
    };
    return p;
}

const ClassDef& ClassPalette::by_id(int id) const {
    for (const auto& e : entries)
        if (e.id == id) return e;
    throw std::invalid_argument("ClassPalette: unknown class id");
}

std::optional<int> ClassPalette::id_of(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return e.id;
    return std::nullopt;
}

void ClassPalette::validate() const {
    for (int i = 0; i < size(); ++i) {
        if (entries[i].id != i)
            throw std::invalid_argument("ClassPalette: ids must be dense 0..N-1");
        for (int j = i + 1; j < size(); ++j)
            if (entries[i].name == entries[j].name)
                throw std::invalid_argument("ClassPalette: duplicate class name");
    }
}

ConfusionMatrix::ConfusionMatrix(int num_classes) : n_(num_classes) {
    if (num_classes <= 0) throw std::invalid_argument("ConfusionMatrix: need at least one class");
    counts_.assign(static_cast<std::size_t>(n_) * n_, 0);
}

std::size_t ConfusionMatrix::index(int gt, int pred) const {
    if (gt < 0 || gt >= n_ || pred < 0 || pred >= n_)
        throw std::out_of_range("ConfusionMatrix: class id out of range");
    return static_cast<std::size_t>(gt) * n_ + pred;
}

std::uint64_t ConfusionMatrix::total() const {
    std::uint64_t t = 0;
    for (auto c : counts_) t += c;
    return t;
}

std::uint64_t ConfusionMatrix::row_sum(int gt) const {
    std::uint64_t t = 0;
    for (int p = 0; p < n_; ++p) t += at(gt, p);
    return t;
}

std::uint64_t ConfusionMatrix::col_sum(int pred) const {
    std::uint64_t t = 0;
    for (int g = 0; g < n_; ++g) t += at(g, pred);
    return t;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
    if (n_ != other.n_)
        throw std::invalid_argument("ConfusionMatrix: class count mismatch");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    return *this;
}

void accumulate(const LabelMap& gt, const LabelMap& pred, ConfusionMatrix& cm) {
    if (gt.width != pred.width || gt.height != pred.height)
        throw std::invalid_argument("accumulate: dimension mismatch");
    const int n = cm.num_classes();
    for (std::size_t i = 0; i < gt.data.size(); ++i) {
        const std::uint8_t g = gt.data[i];
        if (g == kVoidLabel) continue;
        const std::uint8_t p = pred.data[i];
        if (g >= n || p >= n)
            throw std::invalid_argument("accumulate: class id out of range");
        ++cm.at(g, p);
    }
}

namespace {

std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

struct ClassTally {
    std::uint64_t tp, fp, fn, tn;
};

ClassTally tally(const ConfusionMatrix& cm, int cls) {
    const std::uint64_t tp = cm.at(cls, cls);
    const std::uint64_t fn = cm.row_sum(cls) - tp;
    const std::uint64_t fp = cm.col_sum(cls) - tp;
    const std::uint64_t tn = cm.total() - tp - fn - fp;
    return {tp, fp, fn, tn};
}

} // namespace

std::optional<double> iou(const ConfusionMatrix& cm, int cls) {
    const auto t = tally(cm, cls);
    return ratio(t.tp, t.tp + t.fp + t.fn);
}

std::optional<double> recall(const ConfusionMatrix& cm, int cls) {
    const auto t = tally(cm, cls);
    return ratio(t.tp, t.tp + t.fn);
}

std::optional<double> class_precision(const ConfusionMatrix& cm, int cls) {
    const auto t = tally(cm, cls);
    return ratio(t.tp, t.tp + t.fp);
}

std::optional<double> precision_overall(const ConfusionMatrix& cm) {
    std::uint64_t tp = 0, fp = 0;
    for (int c = 0; c < cm.num_classes(); ++c) {
        const auto t = tally(cm, c);
        tp += t.tp;
        fp += t.fp;
    }
    return ratio(tp, tp + fp);
}

std::optional<double> specificity_overall(const ConfusionMatrix& cm) {
    std::uint64_t tn = 0, fp = 0;
    for (int c = 0; c < cm.num_classes(); ++c) {
        const auto t = tally(cm, c);
        tn += t.tn;
        fp += t.fp;
    }
    return ratio(tn, tn + fp);
}

std::optional<double> mean_iou(const ConfusionMatrix& cm, const std::set<int>& exclude) {
    double sum = 0.0;
    int n = 0;
    for (int c = 0; c < cm.num_classes(); ++c) {
        if (exclude.count(c)) continue;
        if (auto v = iou(cm, c)) {
            sum += *v;
            ++n;
        }
    }
    if (n == 0) return std::nullopt;
    return sum / n;
}

double dice_loss(std::span<const Plane> gt_onehot, std::span<const Plane> pred_soft) {
    if (gt_onehot.empty() || gt_onehot.size() != pred_soft.size())
        throw std::invalid_argument("dice_loss: class plane count mismatch");
    const std::size_t n_classes = gt_onehot.size();
    const std::size_t n_px = gt_onehot[0].size();
    for (std::size_t c = 0; c < n_classes; ++c)
        if (gt_onehot[c].size() != n_px || pred_soft[c].size() != n_px)
            throw std::invalid_argument("dice_loss: plane dimension mismatch");

    // Pixels with no ground truth in any class are VOID and excluded.
    std::vector<char> counted(n_px, 0);
    for (std::size_t c = 0; c < n_classes; ++c) {
        auto g = gt_onehot[c].samples();
        for (std::size_t i = 0; i < n_px; ++i)
            if (g[i] != 0.0f) counted[i] = 1;
    }

    double loss = 0.0;
    for (std::size_t c = 0; c < n_classes; ++c) {
        auto g = gt_onehot[c].samples();
        auto p = pred_soft[c].samples();
        double inter = 0.0, sum_g = 0.0, sum_p = 0.0;
        for (std::size_t i = 0; i < n_px; ++i) {
            if (!counted[i]) continue;
            inter += static_cast<double>(g[i]) * p[i];
            sum_g += g[i];
            sum_p += p[i];
        }
        if (sum_g + sum_p > 0.0) loss += 1.0 - 2.0 * inter / (sum_g + sum_p);
    }
    return loss / static_cast<double>(n_classes);
}

std::vector<Plane> make_one_hot(const LabelMap& lbl) {
    lbl.validate();
    std::vector<Plane> planes;
    planes.reserve(static_cast<std::size_t>(lbl.num_classes));
    for (int c = 0; c < lbl.num_classes; ++c) planes.emplace_back(lbl.width, lbl.height, 0.0f);
    for (int y = 0; y < lbl.height; ++y)
        for (int x = 0; x < lbl.width; ++x) {
            const std::uint8_t v = lbl.at(x, y);
            if (v != kVoidLabel) planes[v].at(x, y) = 1.0f;
        }
    return planes;
}

} // namespace polaug
