#pragma once

// Analytic-signal synthesis of the field behind the slab for a line source
// switched on at a finite time. The physical field is the real part of every
// value returned here.
//
//   W(h, z, t) = 2 E0 c int_0^inf V(w)/w T_TE(w, h) e^{i g0 z} e^{-i w t} dw
//   E(x, z, t) = (1/2pi) int W(h, z, t) e^{ihx} dh

#include <span>
#include <variant>
#include <vector>

#include "slablens/slab_core.hpp"
#include "slablens/spectrum.hpp"

namespace slablens {

/// cos(omega0 t) switched on over [-t0, t0].
struct CosineWindow {
  double t0 = 0.0;
  double omega0 = 0.0;
};

/// sin(omega0 t) switched on over [0, Te].
struct SineWindow {
  double Te = 0.0;
  double omega0 = 0.0;

  /// Nearest whole number of carrier periods in Te.
  long long periods() const;
  /// Te omega0 is a multiple of 2pi (to 1e-9 relative), which keeps V(w)/w
  /// bounded at w = 0. When false the window is still usable away from w = 0.
  bool commensurate() const;
};

using SourceWindow = std::variant<CosineWindow, SineWindow>;

void validate(const SourceWindow& window);

/// (1/2pi)[sin((w + w0)t0)/(w + w0) + sin((w - w0)t0)/(w - w0)].
cplx cosine_window_spectrum(double omega, const CosineWindow& w);

/// (1/4pi)[(e^{iTe(w - w0)} - 1)/(w - w0) - (e^{iTe(w + w0)} - 1)/(w + w0)].
cplx sine_window_spectrum(double omega, const SineWindow& w);

/// V(w)/w, including its limit at w = 0 for a commensurate window.
/// Throws DomainError at w = 0 otherwise.
cplx sine_window_ratio(double omega, const SineWindow& w);

/// Clustered quadrature grid in omega around the carrier.
struct OmegaGridConfig {
  /// h/k00 below which the wide window is used.
  double split_h_over_k00 = 2.5;
  double halfwidth_low = 1e-3;   // relative to omega0
  double halfwidth_high = 1e-9;  // relative to omega0
  /// Grids are calibrated for h/k00 below this.
  double max_h_over_k00 = 3.5;
  int n_points = 100000;
  /// The step grows as |u|^exponent in the normalized index u near omega0.
  double exponent = 4.0;
  /// Fraction of each half of the index range that is power-law clustered;
  /// the remainder has constant step.
  double cluster_fraction = 0.5;
};

void validate(const OmegaGridConfig& cfg);

struct OmegaGrid {
  std::vector<double> omega;    // strictly increasing, contains omega0
  std::vector<double> weights;  // trapezoid weights on the nodes
  double omega0 = 0.0;
  double halfwidth_rel = 0.0;
  double exponent = 0.0;
  int n_points = 0;
};

/// Grid for one h sample. Throws DomainError when h/k00 is outside
/// [0, cfg.max_h_over_k00).
OmegaGrid build_omega_grid(double h_over_k00, Frequency omega0, const OmegaGridConfig& cfg = {});
OmegaGrid build_omega_grid(double h_over_k00, Frequency omega0, int n_points);

/// W(h, z, t) for every t in `times`, summed on `grid`. Requires z > d + L.
/// Throws NumericalOverflow naming the omega sample if the integrand is not finite.
std::vector<cplx> analytic_spectrum_W(double h, double z, std::span<const double> times,
                                      const SlabGeometry& geom, const MaterialModel& model,
                                      const SineWindow& window, const OmegaGrid& grid,
                                      double E0 = 1.0);

cplx analytic_spectrum_W(double h, double z, double t, const SlabGeometry& geom,
                         const MaterialModel& model, const SineWindow& window,
                         const OmegaGrid& grid, double E0 = 1.0);

/// Options of the outer h-integral.
struct TimeDomainSpec {
  OmegaGridConfig grid;
  /// Truncation of |h| in units of k00.
  double h_max_over_k00 = 3.5;
  /// G7-K15 panels over theta in [0, pi/2] (h = k00 sin theta).
  int propagating_panels = 8;
  /// G7-K15 panels over xi (h = k00 cosh xi) up to h_max.
  int evanescent_panels = 24;
  int threads = 0;
  double E0 = 1.0;
};

void validate(const TimeDomainSpec& spec);

/// W evaluated on a list of h values (rows) for every time (columns),
/// each h with its own omega grid.
std::vector<std::vector<cplx>> analytic_spectrum_table(std::span<const double> hs, double z,
                                                       std::span<const double> times,
                                                       const SlabGeometry& geom,
                                                       const MaterialModel& model,
                                                       const SineWindow& window,
                                                       const TimeDomainSpec& spec);

struct LineSource {
  double x = 0.0;  // transverse position (source plane z = 0)
  double amplitude = 1.0;
};

struct AnalyticSignalSample {
  cplx value;
  double x = 0.0;
  double z = 0.0;
  double t = 0.0;

  double physical() const { return value.real(); }
};

/// Analytic-signal field on the line z for every (t, x), t-major order.
std::vector<AnalyticSignalSample> time_domain_field(std::span<const double> xs, double z,
                                                    std::span<const double> times,
                                                    std::span<const LineSource> sources,
                                                    const SlabGeometry& geom,
                                                    const MaterialModel& model,
                                                    const SineWindow& window,
                                                    const TimeDomainSpec& spec);

/// Single centred source.
AnalyticSignalSample time_domain_field(double x, double z, double t, const SlabGeometry& geom,
                                       const MaterialModel& model, const SineWindow& window,
                                       const TimeDomainSpec& spec);

/// Time-limited truncation wavenumber
///   sqrt((c ln(f0 t))^2 + k00^2),  c = 2/(d + L) between the face and 2L, 1/L beyond.
/// Requires f0 t > e.
TruncationWavenumber h_t(double t, Frequency omega0, const SlabGeometry& geom,
                         ObservationRegion region);

struct IIntegralComparison {
  double direct = 0.0;       // principal-value quadrature over omega
  double closed_form = 0.0;  // window-average approximation
};

/// The omega-integral of one evanescent plane wave (ux = t = 0),
///   int_0^inf sin((w - w0)t0)/(w - w0) e^{-w a z} / (e^{-2 w a L} - 4(w - w0)^2/w0^2) dw,
/// a = |zeta0| in s/m, compared with its closed-form approximation
///   -(w0 t0/4) e^{-w0 a (z - L)} ln|(1 - q)/(1 + q)|,  q = (w0 t0/2pi) e^{-w0 a L}.
IIntegralComparison i_integral_oracle(double uzeta, double z, double t0, Frequency omega0,
                                      double L);

/// Late-time field between the back face and 2L:
///   E0 e^{-i w0 t} / (pi k00 rho) tau^{2 - z/L} cos((x/L) ln tau - atan(x/(2L - z))),
/// tau = f0 t. Same validity band as asymptotic_divergent_field; requires f0 t > 1.
cplx asymptotic_field_time(double x, double z, double t, double E0, Frequency omega0, double L);

}  // namespace slablens
