#pragma once

// Closed-form plane-wave amplitudes for a single slab: the exact TE
// transmission coefficient, the layer amplitudes obtained from tangential
// field continuity, the -1 DNG closed forms, small-loss approximations and
// the evanescent truncation wavenumbers.

#include <variant>

#include "slablens/slab_core.hpp"

namespace slablens {

/// Plane-wave amplitudes of the piecewise field
///   z <= d          : t0 e^{i g0 z} + r0 e^{-i g0 z}
///   d <= z <= d + L : ts e^{i g z}  + rs e^{-i g z}
///   z >= d + L      : t  e^{i g0 z}
struct SpectralCoefficients {
  cplx t0;
  cplx r0;
  cplx ts;
  cplx rs;
  cplx t;
};

/// Observation band for truncation wavenumbers. A point exactly at z = 2L
/// belongs to Beyond2L.
enum class ObservationRegion { BetweenFaceAnd2L, Beyond2L };

ObservationRegion observation_region(const SlabGeometry& geom, double z);

struct LossLimited {
  double delta_pp;
};
struct TimeLimited {
  double t;
};

/// Effective upper |h| of the evanescent spectrum reaching the image plane.
struct TruncationWavenumber {
  double value = 0.0;  // rad/m, >= k00
  ObservationRegion region = ObservationRegion::Beyond2L;
  std::variant<LossLimited, TimeLimited> origin = LossLimited{0.0};
};

/// Exact TE transmission coefficient of the slab. Evaluated in the form
///   4ab e^{i(g - g0)L} / ((a + b)^2 - (a - b)^2 e^{2igL}),  a = eps_r g0, b = g,
/// which never overflows because Im(g) >= 0.
cplx t_te(Frequency omega, double h, const MaterialResponse& m, double L);

/// t_te(h) * e^{i g0 z} with the exponentials combined, so deep evanescent
/// samples underflow to zero instead of producing inf * 0.
cplx t_te_propagated(Frequency omega, double h, const MaterialResponse& m, double L, double z);

/// Layer amplitudes for incident amplitude t0_in.
SpectralCoefficients layer_spectra(Frequency omega, double h, cplx t0_in,
                                   const SlabGeometry& geom, const MaterialResponse& m);

/// The z-dependent plane-wave integrand of E_x (the bracket of the piecewise
/// field) for incident amplitude t0_in, evaluated with combined exponents so
/// that every factor stays finite wherever the product is finite.
cplx field_spectrum(Frequency omega, double h, cplx t0_in, const SlabGeometry& geom,
                    const MaterialResponse& m, double z);

/// Magnetic line current spectrum T0 = E0 / k0 (independent of h).
double line_source_spectrum(double E0, Frequency omega);

/// Largest relative mismatch of E_x and H_y across the two slab faces.
/// H_y is compared through (eps_r / gamma)(forward - backward), scaled by
/// gamma0*gamma to stay finite at branch points.
double boundary_residual(Frequency omega, double h, const SpectralCoefficients& c,
                         const SlabGeometry& geom, const MaterialResponse& m);

/// Loss-limited truncation wavenumber. Requires 0 < delta_pp < 1.
TruncationWavenumber h_delta(double delta_pp, const SlabGeometry& geom, Frequency omega0,
                             ObservationRegion region);

/// Small-loss evanescent approximations of the layer amplitudes for
/// eps_r = mu_r = -1 + i delta_pp. Requires h^2 > k00^2.
/// t and rs agree with the exact amplitudes well inside (k00, H_delta);
/// ts and r0 are order-of-magnitude estimates only.
SpectralCoefficients lossy_evanescent_spectra(Frequency omega, double h, cplx t0_in,
                                              double delta_pp, const SlabGeometry& geom);

/// Asymptotic (delta_pp -> 0) field behind a lossy -1 slab in L < z < 2L:
///   E0 / (pi k00 rho) * delta^{z/L - 2} * cos((x/L) ln delta + atan(x / (2L - z))),
/// rho = sqrt(x^2 + (2L - z)^2). Points closer than lambda0/20 to z = 2L are rejected.
double asymptotic_divergent_field(double x, double z, double delta_pp, double E0,
                                  Frequency omega0, double L);

}  // namespace slablens
