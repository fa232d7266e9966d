// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef POLAUG_ORACLE_HPP
#define POLAUG_ORACLE_HPP

#include <string>
#include <vector>

#include "polaug/augment.hpp"
#include "polaug/polar.hpp"

namespace polaug {

/// Parametric field over continuous image coordinates. Analytic fields give
/// exact ground truth for any camera orientation, unlike the physical
/// two-acquisition experiment which suffers parallax.
enum class FieldKind { constant, linear, radial_angle, checkerboard };

struct FieldSpec {
    FieldKind kind = FieldKind::constant;
    double base = 0.0;   // constant value; linear offset; checker value A
    double alt = 0.0;    // checker value B
    double gx = 0.0;     // linear slope per normalized x unit
    double gy = 0.0;     // linear slope per normalized y unit
    double cell = 8.0;   // checker cell size in pixels
};

/// Analytic polarimetric scene: intensity >= 0, dop in [0,1], aop in [0,180).
/// Values are clamped/wrapped into range at evaluation. `smooth` marks scenes
/// suitable for resampling-tolerance checks at non-right angles.
struct SyntheticScene {
    std::string name;
    int width = 0;
    int height = 0;
    FieldSpec intensity;
    FieldSpec dop;
    FieldSpec aop;
    bool smooth = true;
    bool uniform_aop = false; // constant polarization angle everywhere
};

/// Field values at centered continuous coordinates (u right, v down).
struct SceneSample {
    double intensity;
    double dop;
    double aop_deg;
};

SceneSample sample_scene(const SyntheticScene& scene, double u, double v);

/// Evaluate the forward sensor model at the four canonical analyzer angles.
AnalyzerQuad render(const SyntheticScene& scene);

/// The quad a camera physically rotated anti-clockwise by theta about its
/// optical axis would record: scene content appears rotated by theta and the
/// polarization angle measured in the camera frame becomes (aop - theta)
/// mod 180, both applied before the sensor model.
AnalyzerQuad render_rotated_camera(const SyntheticScene& scene, double theta_deg);

struct ChannelDeviation {
    double max_abs = 0.0;
    double mean_abs = 0.0;
};

/// Per-channel deviation between an augmented image and the physically
/// rotated ground truth, over transform-valid pixels. Angle deviations use
/// the 180-degree circle metric.
struct AdjudicationReport {
    std::string scene;
    double theta_deg = 0.0;
    AugmentMode mode = AugmentMode::regularized;
    std::size_t valid_pixels = 0;
    ChannelDeviation intensity;
    ChannelDeviation dop;
    ChannelDeviation aop; // degrees on the 180-circle
};

/// Compare decompose(render_rotated_camera(scene, theta)) against the
/// mode-transformed decompose(render(scene)).
AdjudicationReport adjudicate(const SyntheticScene& scene, double theta_deg, AugmentMode mode);

/// Mirror the scene about the vertical axis (x -> -x), negating the
/// polarization angle; ground truth for flip equivariance checks.
AnalyzerQuad render_mirrored(const SyntheticScene& scene);

/// Scenes used by the validate command and the acceptance suite: uniform
/// polarization angles, smooth gradients, a radial full-angle test card and
/// a non-smooth checkerboard.
std::vector<SyntheticScene> default_scene_suite();

/// Mean-aop-deviation budget (degrees) for regularized rotation at
/// non-right angles on smooth scenes. Fixed from a release-time sweep over
/// every non-right multiple of 5 degrees on the default suite: observed
/// maximum 0.0145 (radial card at 30 degrees), pinned with ~7x headroom.
/// The validate command re-runs the sweep.
inline constexpr double kSmoothSceneMeanAopTolDeg = 0.10;

/// Exact-case budget for right-angle rotations and mirrored scenes.
inline constexpr double kExactCaseTol = 1e-6;

} // namespace polaug

#endif // POLAUG_ORACLE_HPP
