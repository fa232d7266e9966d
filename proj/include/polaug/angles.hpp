// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef POLAUG_ANGLES_HPP
#define POLAUG_ANGLES_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace polaug {

inline constexpr double kAopPeriodDeg = 180.0;
inline constexpr double kHuePeriodDeg = 360.0;

/// Angle-of-polarization planes are kept on a dyadic lattice of 1/4096 degree.
/// The lattice is closed under phi -> 180 - phi and phi -> phi - k for integer
/// k, both maps exact in float32, which makes flip an exact involution and
/// right-angle rotations exact on the angle channel. One lattice step is
/// 2.44e-4 degrees, far below the 16-bit file quantization of 2.7e-3 degrees.
inline constexpr double kAopLatticeStepsPerDeg = 4096.0;

/// Reduce x into [0, period).
inline double wrap_degrees(double x, double period) {
    double r = x - period * std::floor(x / period);
    if (r >= period) r -= period; // floor rounding edge
    if (r < 0.0) r = 0.0;
    return r;
}

/// Distance between two angles on a circle of the given period.
inline double circular_distance_deg(double a, double b, double period) {
    double d = wrap_degrees(a - b, period);
    return std::min(d, period - d);
}

/// Quantize an AoP value (degrees) onto the dyadic lattice, reduced mod 180.
inline float snap_aop(double deg) {
    double steps = std::nearbyint(deg * kAopLatticeStepsPerDeg);
    std::int64_t k = static_cast<std::int64_t>(steps);
    constexpr std::int64_t period = static_cast<std::int64_t>(180.0 * kAopLatticeStepsPerDeg);
    k %= period;
    if (k < 0) k += period;
    return static_cast<float>(static_cast<double>(k) / kAopLatticeStepsPerDeg);
}

/// 180 - phi, exact on the AoP lattice; 0 is its own mirror image. The cast
/// can round a near-period double up to 180.0f, which the canonical range
/// excludes; that edge folds back to 0.
inline float aop_complement(float phi_deg) {
    if (phi_deg == 0.0f) return 0.0f;
    const float r = static_cast<float>(180.0 - static_cast<double>(phi_deg));
    return r >= 180.0f ? 0.0f : r;
}

/// cos/sin of an angle in degrees, with exact values at multiples of 90 so
/// that right-angle grid permutations carry no floating-point fuzz.
inline std::pair<double, double> cos_sin_degrees(double deg) {
    double r = wrap_degrees(deg, 360.0);
    if (r == 0.0) return {1.0, 0.0};
    if (r == 90.0) return {0.0, 1.0};
    if (r == 180.0) return {-1.0, 0.0};
    if (r == 270.0) return {0.0, -1.0};
    double rad = r * (std::numbers::pi / 180.0);
    return {std::cos(rad), std::sin(rad)};
}

inline double cos_degrees(double deg) { return cos_sin_degrees(deg).first; }

inline bool is_right_angle_multiple(double deg) {
    return wrap_degrees(deg, 90.0) == 0.0;
}

} // namespace polaug

#endif // POLAUG_ANGLES_HPP
