// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef POLAUG_IO_VALIDATE_HPP
#define POLAUG_IO_VALIDATE_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "polaug/oracle.hpp"

namespace polaug::io {

struct ValidationOutcome {
    bool passed = false;
    std::vector<std::string> failures;
    nlohmann::ordered_json report;
};

/// Default angle set: right angles plus a spread of resampled angles.
std::vector<int> default_validation_thetas();

/// Run the simulated-sensor adjudication over the default scene suite for
/// both modes at each angle. The outcome passes when
///   - regularized augmentation matches the rotated-camera render within
///     kExactCaseTol at right angles (every scene, every channel),
///   - its mean angle deviation stays within kSmoothSceneMeanAopTolDeg at
///     other angles (smooth scenes),
///   - the naive baseline exhibits its designed angle residual
///     min(theta mod 180, 180 - theta mod 180) on uniform-angle scenes at
///     right angles, and a strictly larger mean angle deviation than the
///     regularized result wherever the residual is nonzero.
ValidationOutcome run_validation(const std::vector<int>& thetas_deg);

} // namespace polaug::io

#endif // POLAUG_IO_VALIDATE_HPP
