#pragma once

#include <complex>
#include <numbers>

namespace slablens {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Free-space constants (SI, CODATA 2018).
inline constexpr double kSpeedOfLight = 299792458.0;            // m/s
inline constexpr double kMu0 = 1.25663706212e-6;                 // H/m
inline constexpr double kEps0 = 1.0 / (kMu0 * kSpeedOfLight * kSpeedOfLight);
inline constexpr double kZ0 = kMu0 * kSpeedOfLight;              // ohm

inline constexpr cplx kI{0.0, 1.0};

/// Free-space wavenumber k0 = omega / c.
constexpr double free_space_wavenumber(double omega) { return omega / kSpeedOfLight; }

/// Free-space wavelength for a cyclic frequency in Hz.
constexpr double wavelength(double f0) { return kSpeedOfLight / f0; }

constexpr double angular_frequency(double f0) { return kTwoPi * f0; }

}  // namespace slablens
