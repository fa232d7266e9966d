// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef POLAUG_AUGMENT_HPP
#define POLAUG_AUGMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "polaug/image.hpp"
#include "polaug/polar.hpp"

namespace polaug {

/// Class index marking pixels without ground truth (e.g. rotated-in corners).
inline constexpr std::uint8_t kVoidLabel = 255;

/// Dense per-pixel class indices in {0..num_classes-1} plus kVoidLabel.
struct LabelMap {
    int width = 0;
    int height = 0;
    int num_classes = 0;
    std::vector<std::uint8_t> data;

    LabelMap() = default;
    LabelMap(int w, int h, int n, std::uint8_t fill = 0)
        : width(w), height(h), num_classes(n),
          data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    std::uint8_t& at(int x, int y) { return data[index(x, y)]; }
    std::uint8_t at(int x, int y) const { return data[index(x, y)]; }
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(x);
    }

    void validate() const;
};

enum class FlipAxis { horizontal, vertical };

enum class AugmentMode { regularized, naive, none };

AugmentMode parse_augment_mode(const std::string& text);
std::string to_string(AugmentMode mode);

/// One augmentation: rotate by rotation_deg (anti-clockwise, about the image
/// center), then mirror horizontally if flip is set.
struct TransformSpec {
    int rotation_deg = 0;
    bool flip = false;

    bool is_identity() const { return rotation_deg == 0 && !flip; }
    bool operator==(const TransformSpec&) const = default;
};

/// Per-source list of distinct, non-identity transforms plus the seed that
/// generated it.
struct AugmentPlan {
    std::string source_id;
    std::vector<TransformSpec> specs;
    std::uint64_t seed = 0;
};

/// Provenance of one produced image.
struct TransformRecord {
    std::string source_id;
    std::string output_id;
    TransformSpec spec;
    std::uint64_t seed = 0;
    std::string tool_version;
};

/// Image transform output; `valid` is false where the pixel's source lay
/// outside the original canvas.
struct TransformedPolar {
    PolarImage image;
    Mask valid;
};

/// Rotate anti-clockwise by theta_deg about the image center, keeping the
/// canvas. The angle channel is shifted by -theta (mod 180) so the result is
/// what a physically rotated camera would record; equivalently the hue
/// channel 2*aop has 2*theta subtracted and is reduced mod 360.
///
/// Right-angle rotations on parity-compatible canvases are exact grid
/// permutations. Other angles resample: intensity bilinearly, (dop, aop)
/// jointly as the doubled-angle vector (dop*cos 2aop, dop*sin 2aop) so that
/// interpolation never crosses the 0/180 wrap.
TransformedPolar rotate_regularized(const PolarImage& img, double theta_deg);

/// Spatial-only baseline: identical resampling, angle values left untouched.
TransformedPolar rotate_naive(const PolarImage& img, double theta_deg);

/// Mirror about the given axis; the angle channel is negated mod 180
/// (hue negated mod 360). Exact: pure index permutation plus the lattice
/// complement map on aop.
PolarImage flip_regularized(const PolarImage& img, FlipAxis axis);

/// Spatial-only baseline flip.
PolarImage flip_naive(const PolarImage& img, FlipAxis axis);

/// Apply a full spec (rotation then optional horizontal flip) in the given
/// mode. AugmentMode::none returns a copy.
TransformedPolar transform_polar(const PolarImage& img, const TransformSpec& spec,
                                 AugmentMode mode);

/// Nearest-neighbor label transform matching transform_polar's geometry;
/// pixels whose source lies outside the canvas become kVoidLabel.
LabelMap transform_label(const LabelMap& lbl, const TransformSpec& spec);

/// Number of distinct non-identity specs at the given rotation granularity.
int distinct_spec_capacity(int rotation_increment_deg);

/// Draw `num_augments` pairwise-distinct non-identity specs. Flips are drawn
/// with the given marginal probability, rotations uniformly over the nonzero
/// multiples of the increment (zero rotation allowed only together with a
/// flip); duplicates are rejected and redrawn. Deterministic in `seed`.
AugmentPlan make_plan(const std::string& source_id, int num_augments, std::uint64_t seed,
                      int rotation_increment_deg = 5, double flip_probability = 0.20);

struct AugmentOutput {
    PolarImage image;
    Mask valid;
    LabelMap label;
    TransformRecord record;
};

/// One output per spec in the plan, with provenance. Pure and deterministic.
std::vector<AugmentOutput> apply_plan(const PolarImage& img, const LabelMap& lbl,
                                      const AugmentPlan& plan, AugmentMode mode);

} // namespace polaug

#endif // POLAUG_AUGMENT_HPP
