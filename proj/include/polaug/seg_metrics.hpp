// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef POLAUG_SEG_METRICS_HPP
#define POLAUG_SEG_METRICS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "polaug/augment.hpp"
#include "polaug/image.hpp"

namespace polaug {

struct ClassDef {
    int id = 0;
    std::string name;
    std::array<std::uint8_t, 3> rgb{0, 0, 0};
};

/// Ordered class table; ids are dense 0..N-1 and names unique.
struct ClassPalette {
    std::vector<ClassDef> entries;

    /// The seven urban classes used throughout the tooling.
    static ClassPalette urban_default();

    int size() const { return static_cast<int>(entries.size()); }
    const ClassDef& by_id(int id) const;
    std::optional<int> id_of(const std::string& name) const;
    void validate() const;
};

/// N x N pixel counts, rows = ground truth, columns = prediction. Pixels
/// labelled kVoidLabel in the ground truth are never counted.
class ConfusionMatrix {
public:
    ConfusionMatrix() = default;
    explicit ConfusionMatrix(int num_classes);

    int num_classes() const { return n_; }
    std::uint64_t at(int gt, int pred) const { return counts_[index(gt, pred)]; }
    std::uint64_t& at(int gt, int pred) { return counts_[index(gt, pred)]; }

    std::uint64_t total() const;
    std::uint64_t row_sum(int gt) const;
    std::uint64_t col_sum(int pred) const;

    ConfusionMatrix& operator+=(const ConfusionMatrix& other);

private:
    std::size_t index(int gt, int pred) const;
    int n_ = 0;
    std::vector<std::uint64_t> counts_;
};

/// Add per-pixel joint counts for one image pair. Throws on dimension
/// mismatch or out-of-range class ids.
void accumulate(const LabelMap& gt, const LabelMap& pred, ConfusionMatrix& cm);

/// Per-class metrics; nullopt when the 0/0 case makes the ratio undefined.
std::optional<double> iou(const ConfusionMatrix& cm, int cls);
std::optional<double> recall(const ConfusionMatrix& cm, int cls);
std::optional<double> class_precision(const ConfusionMatrix& cm, int cls);

/// Micro-averaged over classes: sum TP / sum (TP + FP) and
/// sum TN / sum (TN + FP).
std::optional<double> precision_overall(const ConfusionMatrix& cm);
std::optional<double> specificity_overall(const ConfusionMatrix& cm);

/// Mean of the defined per-class IoUs, skipping the excluded ids.
std::optional<double> mean_iou(const ConfusionMatrix& cm, const std::set<int>& exclude = {});

/// Multi-class soft Dice loss, averaged over classes:
///   lambda = (1/N) * sum_c [1 - 2*sum(x_c*y_c) / (sum x_c + sum y_c)].
/// Pixels where every ground-truth plane is zero (VOID) are excluded from
/// all sums; classes absent from both sides contribute zero loss.
double dice_loss(std::span<const Plane> gt_onehot, std::span<const Plane> pred_soft);

/// One-hot planes for a label map; VOID pixels are zero in every plane.
std::vector<Plane> make_one_hot(const LabelMap& lbl);

} // namespace polaug

#endif // POLAUG_SEG_METRICS_HPP
