// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef POLAUG_POLAR_HPP
#define POLAUG_POLAR_HPP

#include <array>
#include <cstddef>
#include <cstdint>

#include "polaug/angles.hpp"
#include "polaug/image.hpp"

namespace polaug {

/// The four canonical linear-analyzer orientations of a polarization camera.
inline constexpr std::array<int, 4> kAnalyzerAnglesDeg = {0, 45, 90, 135};

/// Four co-registered intensity planes, one per analyzer orientation.
struct AnalyzerQuad {
    Plane p0;
    Plane p45;
    Plane p90;
    Plane p135;

    int width() const { return p0.width(); }
    int height() const { return p0.height(); }

    const Plane& plane(int analyzer_deg) const;
    Plane& plane(int analyzer_deg);

    /// Throws std::invalid_argument on dimension mismatch, non-finite or
    /// negative samples.
    void validate() const;
};

/// Intensity / angle-of-polarization / degree-of-polarization triple.
///   intensity >= 0, aop in [0, 180) degrees, dop in [0, 1].
struct PolarImage {
    Plane intensity;
    Plane aop;
    Plane dop;

    int width() const { return intensity.width(); }
    int height() const { return intensity.height(); }

    void validate() const;
};

/// Hue [0, 360) / saturation [0, 1] / lightness [0, 1] planes.
struct HslImage {
    Plane h;
    Plane s;
    Plane l;

    int width() const { return h.width(); }
    int height() const { return h.height(); }

    void validate() const;
};

/// Interleaved 8-bit RGB raster (display only).
struct Rgb8Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data; // 3 * width * height, RGB order

    std::size_t index(int x, int y) const {
        return 3 * (static_cast<std::size_t>(y) * width + x);
    }
};

/// Per-image bookkeeping emitted by decompose. Dark pixels with a zero
/// analyzer-sum denominator and noisy pixels whose raw degree of polarization
/// exceeds 1 are routine sensor output, counted rather than rejected.
struct DecomposeStats {
    std::size_t degenerate_pixels = 0;
    std::size_t clamped_dop_pixels = 0;
};

/// Intensity seen through a linear analyzer at `analyzer_deg` for light of
/// total intensity `iota`, linear polarization degree `rho` and angle
/// `phi_deg`:  I = (iota/2) * (1 + rho * cos(2*phi - 2*theta)).
double polarized_intensity(double iota, double rho, double phi_deg, double analyzer_deg);

/// Recover (intensity, aop, dop) from a quad of analyzer intensities.
/// Degenerate pixels (p0 + p90 == 0) are assigned dop = 0, aop = 0 and
/// counted; dop is clamped into [0, 1] and clamps are counted. Output aop is
/// quantized onto the dyadic lattice (see angles.hpp). If `degenerate_mask`
/// is non-null it is resized and set true at degenerate pixels.
PolarImage decompose(const AnalyzerQuad& quad, DecomposeStats* stats = nullptr,
                     Mask* degenerate_mask = nullptr);

/// Forward model: intensity plane seen through an analyzer at `analyzer_deg`.
Plane reconstruct(const PolarImage& img, double analyzer_deg);

/// Forward model at the four canonical orientations. For any physically
/// consistent input, p0 + p90 == p45 + p135 == intensity up to float eps.
AnalyzerQuad reconstruct_quad(const PolarImage& img);

/// Display encoding: h = 2*aop mod 360, s = dop, l = intensity / (2*max_val)
/// clamped to [0, 1]. max_val is the sensor full-scale (255 or 65535); the
/// halved four-plane sum ranges up to 2*max_val, hence the denominator.
HslImage to_hsl(const PolarImage& img, double max_val);

/// Exact inverse of to_hsl (up to the lightness clamp).
PolarImage from_hsl(const HslImage& hsl, double max_val);

/// Standard HSL -> RGB conversion, quantized to 8 bits per channel.
Rgb8Image hsl_to_rgb(const HslImage& hsl);

} // namespace polaug

#endif // POLAUG_POLAR_HPP
