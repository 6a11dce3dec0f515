#pragma once

// Plane-wave h-integrals of the line-source field, closed-form image fields
// and region diagnostics.
//
// All spectra here are even in h, so every integral is evaluated as
//   (1/2pi) int_{-H}^{H} F(h) e^{ihx} dh = (1/pi) int_0^H F(h) cos(hx) dh.
// The propagating segment uses h = k0 sin(theta) and the evanescent one
// h = k0 cosh(xi); both remove the square-root kink of gamma0 at h = k0 and
// absorb a 1/gamma0 weight exactly.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "slablens/quadrature.hpp"
#include "slablens/slab_core.hpp"
#include "slablens/spectrum.hpp"

namespace slablens {

enum class QuadratureStrategy { UniformTrapezoid, AdaptivePanels };

struct QuadratureSpec {
  /// Truncation of |h|. When empty a decay test picks it (>= 12 k0, extended
  /// until the integrand falls below rel_tol times its peak).
  std::optional<double> h_max;
  /// Initial panels per segment (adaptive) or intervals per segment (trapezoid).
  int n_base = 8;
  QuadratureStrategy strategy = QuadratureStrategy::AdaptivePanels;
  double rel_tol = 1e-8;
  /// Half-width in h kept clear of the branch points +-k0. Zero selects
  /// 1e-9 / lambda0.
  double branch_point_exclusion = 0.0;
  int max_panels = 20000;
};

/// Throws DomainError unless h_max > k0 (when set) and rel_tol is in (0, 1e-2].
void validate(const QuadratureSpec& spec, Frequency omega);

struct FieldValue {
  cplx value;
  double abs_error = 0.0;
};

/// How the spectral integrand is weighted.
enum class SpectralWeight {
  Plain,         // int F(h) cos(hx) dh
  InverseGamma0  // int F(h) cos(hx) / gamma0(h) dh
};

/// (1/pi) int_0^{h_max} F(h) cos(hx) [/gamma0] dh.
/// `oscillation_length` (m) sizes the initial panel count.
FieldValue integrate_spectrum(Frequency omega, double x, const std::function<cplx(double)>& F,
                              double h_max, const QuadratureSpec& spec,
                              SpectralWeight weight = SpectralWeight::Plain,
                              double oscillation_length = 0.0);

/// Decay-test truncation for an integrand without physical cutoff.
double default_h_max(Frequency omega, const std::function<cplx(double)>& F, double rel_tol);

/// E_x of a line source (T0 = E0/k0) in front of the slab, any z > 0.
FieldValue evaluate_field(Frequency omega, double x, double z, const SlabGeometry& geom,
                          const MaterialModel& model, const QuadratureSpec& spec, double E0 = 1.0);

/// Free-space field of the line source, z > 0.
FieldValue incident_field(Frequency omega, double x, double z, double E0,
                          const QuadratureSpec& spec);

/// (1/2pi) int_{-H}^{H} T0 e^{i(hx + gamma0 z_shift)} dh for any real z_shift.
/// This is the incident field translated by -z_shift under a finite truncation;
/// z_shift = z - 2L gives the image behind a -1 slab.
FieldValue translated_field(Frequency omega, double x, double z_shift, double E0, double H,
                            const QuadratureSpec& spec);

/// Image-plane electric field under a sharp truncation H:
///   E0/(pi k00) sin(Hx)/x.
double sinc_image(double x, double H, double E0, Frequency omega0);
double sinc_image(double x, const TruncationWavenumber& H, double E0, Frequency omega0);

/// Two identical sources at x = -+D/2.
double two_source_image(double x, double D, double H, double E0, Frequency omega0);

/// Companion magnetic field at the image plane,
///   E0/(2 pi Z0) int_{-H}^{H} e^{ihx} / gamma0 dh.
/// Real for H <= k00 (equals E0 J0(k00 x)/(2 Z0) at H = k00); the evanescent
/// part beyond k00 is imaginary.
FieldValue hy_image(double x, double H, double E0, Frequency omega0, const QuadratureSpec& spec);

/// Field character along z, from the lossless (-1 slab) and the lossy-limit maps.
enum class Region {
  Incident,        // 0 < z <= d: free-space source field
  MirrorImage,     // d < z < 2d: E_inc(x, 2d - z)
  Bounded,         // lossy-limit bounded bands
  DivergentInner,  // lossy limit, |z - d| < L - d
  DivergentOuter,  // 2d <= z < 2L
  PerfectImage     // z >= 2L: E_inc(x, z - 2L)
};

enum class LimitOrder {
  LosslessFirst,  // loss set to zero before the spectral limit (requires d < L)
  LossyLimit      // spectral limit first, then loss -> 0 (requires L/2 < d < L)
};

Region region_map(const SlabGeometry& geom, double z, LimitOrder order = LimitOrder::LosslessFirst);

const char* to_string(Region r);

/// Sampled E_x on a rectilinear (x, z) window, row-major values[iz * nx + ix].
struct FieldGrid {
  std::vector<double> x;
  std::vector<double> z;
  std::vector<cplx> values;
  std::vector<Region> regions;  // one per z

  cplx at(std::size_t iz, std::size_t ix) const { return values[iz * x.size() + ix]; }
};

/// Normwise backward error of the 5-point discrete Helmholtz operator,
///   max |(lap_h + k0^2) E| / (||lap_h + k0^2||_inf * max |E|),
/// over interior nodes. Requires uniform spacing <= lambda0/40 on both axes.
double helmholtz_residual(const FieldGrid& grid, Frequency omega);

}  // namespace slablens
