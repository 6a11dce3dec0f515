#pragma once

// Two-source resolution: the 3 dB separation criterion, resolution
// enhancement limited by slab loss or by source on-time, and their inverses.

#include <functional>
#include <utility>

namespace slablens {

/// Separation constants D H / pi of the 3 dB criterion. They are rounded
/// calibration results; the tests regenerate them with three_db_resolution.
inline constexpr double kSincResolutionConstant = 1.53;   // E_x sinc image
inline constexpr double kBesselResolutionConstant = 1.28;  // H_y J0 image at H = k00

/// Intensity ratio of the peaks to the central minimum at the criterion, 10^{3/10}.
double three_db_ratio();

enum class LimitingMechanism { Loss, OnTime, PropagatingOnly };

struct ResolutionReport {
  double delta_x = 0.0;      // m
  double enhancement = 1.0;  // R_e >= 1
  LimitingMechanism mechanism = LimitingMechanism::PropagatingOnly;
  double parameter = 0.0;  // delta_pp for Loss, t (s) for OnTime
  double constant_used = kSincResolutionConstant;
};

struct ThreeDbOptions {
  /// Relative tolerance on the separation.
  double rel_tol = 1e-8;
};

/// Peak-to-centre intensity ratio of two copies of `profile` at x = -+D/2.
/// The peak is located by local maximization on x in [D/4, 3D/4].
double two_source_contrast(const std::function<double(double)>& profile, double D);

/// Separation D at which two copies of an even, single-peaked `profile`
/// centred at -+D/2 have peaks 3 dB (intensity) above the central minimum.
/// Bisection inside `bracket`; throws DomainError when the ratio does not
/// cross 10^{0.3} there.
double three_db_resolution(const std::function<double(double)>& profile,
                           std::pair<double, double> bracket, const ThreeDbOptions& opts = {});

/// sqrt((lambda0 ln delta / (2 pi L))^2 + 1). Requires 0 < delta_pp < 1.
double enhancement_lossy(double delta_pp, double L, double lambda0);

/// Large-enhancement form -lambda0 ln delta / (2 pi L).
double enhancement_lossy_smith(double delta_pp, double L, double lambda0);

/// Loss that yields enhancement R_e: exp(-2 pi (L/lambda0) sqrt(R_e^2 - 1)). Requires R_e >= 1.
double required_loss(double R_e, double L, double lambda0);

/// Loss-limited enhancement with the sinc-criterion resolution.
ResolutionReport resolution_lossy(double delta_pp, double L, double lambda0);

/// R_e = sqrt((lambda0 ln(f0 t) / (2 pi L))^2 + 1) and delta_x = 1.53 pi / (k00 R_e).
/// Requires f0 t > e.
ResolutionReport enhancement_time(double t, double f0, double L, double lambda0);

/// On-time that yields enhancement R_e: exp(2 pi (L/lambda0) sqrt(R_e^2 - 1)) / f0.
double required_time(double R_e, double f0, double L, double lambda0);

}  // namespace slablens
