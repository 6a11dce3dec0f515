#include "slablens/time_domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <type_traits>

#include <boost/math/tools/roots.hpp>

#include "slablens/errors.hpp"
#include "slablens/parallel.hpp"
#include "slablens/quadrature.hpp"

namespace slablens {

namespace {

constexpr double kSeriesThreshold = 1e-4;
constexpr double kCommensurateTol = 1e-9;

// (e^{iy} - 1) / y without cancellation.
cplx expm1i_over(double y) {
  if (std::abs(y) < kSeriesThreshold) return {-0.5 * y, 1.0 - y * y / 6.0};
  const double s = std::sin(0.5 * y);
  return cplx{-2.0 * s * s, std::sin(y)} / y;
}

// sin(x t0) / x.
double sinc_t(double x, double t0) {
  const double y = x * t0;
  if (std::abs(y) < kSeriesThreshold) return t0 * (1.0 - y * y / 6.0);
  return std::sin(y) / x;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

long long SineWindow::periods() const { return std::llround(Te * omega0 / kTwoPi); }

bool SineWindow::commensurate() const {
  const double n = Te * omega0 / kTwoPi;
  const long long k = std::llround(n);
  return k > 0 && std::abs(n - static_cast<double>(k)) <= kCommensurateTol * n;
}

void validate(const SourceWindow& window) {
  std::visit(
      [](const auto& w) {
        using W = std::decay_t<decltype(w)>;
        if (!(w.omega0 > 0.0)) throw DomainError("source window: omega0 must be > 0");
        if constexpr (std::is_same_v<W, CosineWindow>) {
          if (!(w.t0 > 0.0)) throw DomainError("cosine window: t0 must be > 0");
        } else {
          if (!(w.Te > 0.0)) throw DomainError("sine window: Te must be > 0");
        }
      },
      window);
}

cplx cosine_window_spectrum(double omega, const CosineWindow& w) {
  if (!(omega >= 0.0)) throw DomainError("cosine_window_spectrum: omega must be >= 0");
  return (sinc_t(omega + w.omega0, w.t0) + sinc_t(omega - w.omega0, w.t0)) / kTwoPi;
}

cplx sine_window_spectrum(double omega, const SineWindow& w) {
  if (!(omega >= 0.0)) throw DomainError("sine_window_spectrum: omega must be >= 0");
  const double minus = omega - w.omega0;
  // For a commensurate window e^{iTe(w + w0)} = e^{iTe(w - w0)}; reusing the
  // small phase keeps the second term exact near the carrier.
  const cplx first = w.Te * expm1i_over(w.Te * minus);
  cplx second;
  if (w.commensurate()) {
    const cplx e = std::exp(kI * (w.Te * minus));
    second = (e - 1.0) / (omega + w.omega0);
  } else {
    second = w.Te * expm1i_over(w.Te * (omega + w.omega0));
  }
  return (first - second) / (4.0 * kPi);
}

cplx sine_window_ratio(double omega, const SineWindow& w) {
  if (omega != 0.0) return sine_window_spectrum(omega, w) / omega;
  if (!w.commensurate()) {
    throw DomainError("sine_window_ratio: V/w is unbounded at w = 0 unless Te w0 = 2 pi N");
  }
  return cplx{0.0, -w.Te / (kTwoPi * w.omega0)};
}

void validate(const OmegaGridConfig& cfg) {
  if (!(cfg.halfwidth_low > 0.0 && cfg.halfwidth_low < 1.0) ||
      !(cfg.halfwidth_high > 0.0 && cfg.halfwidth_high < 1.0)) {
    throw DomainError("OmegaGridConfig: halfwidths must lie in (0, 1)");
  }
  if (cfg.n_points < 5) throw DomainError("OmegaGridConfig: n_points must be >= 5");
  if (!(cfg.exponent >= 0.0)) throw DomainError("OmegaGridConfig: exponent must be >= 0");
  if (!(cfg.cluster_fraction > 0.0 && cfg.cluster_fraction <= 1.0)) {
    throw DomainError("OmegaGridConfig: cluster_fraction must lie in (0, 1]");
  }
  if (!(cfg.split_h_over_k00 >= 0.0) || !(cfg.max_h_over_k00 > 0.0)) {
    throw DomainError("OmegaGridConfig: h limits must be non-negative");
  }
}

OmegaGrid build_omega_grid(double h_over_k00, Frequency omega0, const OmegaGridConfig& cfg) {
  validate(cfg);
  if (!(h_over_k00 >= 0.0) || !(h_over_k00 < cfg.max_h_over_k00)) {
    throw DomainError("build_omega_grid: h/k00 = " + num(h_over_k00) +
                      " is outside the calibrated range [0, " + num(cfg.max_h_over_k00) + ")");
  }
  const double w0 = omega0.omega();
  const double halfwidth = h_over_k00 < cfg.split_h_over_k00 ? cfg.halfwidth_low : cfg.halfwidth_high;
  const int n = cfg.n_points | 1;  // odd, so u = 0 (omega0 itself) is a node
  const double p = cfg.exponent;
  const double uc = cfg.cluster_fraction;
  // Offset profile g(u): a|u|^{p+1} up to uc, continued linearly, g(1) = 1.
  const double a = 1.0 / (std::pow(uc, p + 1.0) + (p + 1.0) * std::pow(uc, p) * (1.0 - uc));
  auto profile = [&](double u) {
    const double s = std::abs(u);
    const double g = s <= uc ? a * std::pow(s, p + 1.0)
                             : a * (std::pow(uc, p + 1.0) + (p + 1.0) * std::pow(uc, p) * (s - uc));
    return std::copysign(g, u);
  };

  OmegaGrid grid;
  grid.omega0 = w0;
  grid.halfwidth_rel = halfwidth;
  grid.exponent = p;
  grid.n_points = n;
  grid.omega.reserve(static_cast<std::size_t>(n));
  const int mid = n / 2;
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(i - mid) / mid;
    const double omega = i == mid ? w0 : w0 + w0 * halfwidth * profile(u);
    // Offsets below the resolution of double collapse onto omega0.
    if (grid.omega.empty() || omega > grid.omega.back()) grid.omega.push_back(omega);
  }
  const std::size_t m = grid.omega.size();
  grid.weights.assign(m, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double half = 0.5 * (grid.omega[i + 1] - grid.omega[i]);
    grid.weights[i] += half;
    grid.weights[i + 1] += half;
  }
  return grid;
}

OmegaGrid build_omega_grid(double h_over_k00, Frequency omega0, int n_points) {
  OmegaGridConfig cfg;
  cfg.n_points = n_points;
  return build_omega_grid(h_over_k00, omega0, cfg);
}

std::vector<cplx> analytic_spectrum_W(double h, double z, std::span<const double> times,
                                      const SlabGeometry& geom, const MaterialModel& model,
                                      const SineWindow& window, const OmegaGrid& grid,
                                      double E0) {
  if (!(z > geom.back_face())) throw DomainError("analytic_spectrum_W: requires z > d + L");
  const std::size_t m = grid.omega.size();
  std::vector<cplx> base(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Frequency w(grid.omega[i]);
    const MaterialResponse resp = evaluate_material(model, w);
    const cplx v = sine_window_ratio(w.omega(), window) * t_te_propagated(w, h, resp, geom.L(), z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericalOverflow("analytic_spectrum_W: non-finite integrand at omega = " +
                                  num(w.omega()) + " rad/s (h = " + num(h) + " rad/m)",
                              w.omega());
    }
    base[i] = grid.weights[i] * v;
  }

  std::vector<cplx> out;
  out.reserve(times.size());
  const double scale = 2.0 * E0 * kSpeedOfLight;
  for (double t : times) {
    // e^{-iwt} = e^{-i w0 t} e^{-i (w - w0) t}; the second factor is exact near w0.
    cplx acc{};
    for (std::size_t i = 0; i < m; ++i) {
      acc += base[i] * std::polar(1.0, -(grid.omega[i] - grid.omega0) * t);
    }
    out.push_back(scale * acc * std::polar(1.0, -std::fmod(grid.omega0 * t, kTwoPi)));
  }
  return out;
}

cplx analytic_spectrum_W(double h, double z, double t, const SlabGeometry& geom,
                         const MaterialModel& model, const SineWindow& window,
                         const OmegaGrid& grid, double E0) {
  const double times[] = {t};
  return analytic_spectrum_W(h, z, times, geom, model, window, grid, E0).front();
}

void validate(const TimeDomainSpec& spec) {
  validate(spec.grid);
  if (!(spec.h_max_over_k00 > 1.0) || spec.h_max_over_k00 > spec.grid.max_h_over_k00) {
    throw DomainError("TimeDomainSpec: h_max/k00 must lie in (1, grid.max_h_over_k00]");
  }
  if (spec.propagating_panels < 1 || spec.evanescent_panels < 1) {
    throw DomainError("TimeDomainSpec: panel counts must be >= 1");
  }
}

std::vector<std::vector<cplx>> analytic_spectrum_table(std::span<const double> hs, double z,
                                                       std::span<const double> times,
                                                       const SlabGeometry& geom,
                                                       const MaterialModel& model,
                                                       const SineWindow& window,
                                                       const TimeDomainSpec& spec) {
  validate(spec.grid);
  validate(SourceWindow{window});
  validate(model);
  const Frequency omega0(window.omega0);
  std::vector<std::vector<cplx>> table(hs.size());
  parallel_for(hs.size(), spec.threads, [&](std::size_t i) {
    const OmegaGrid grid = build_omega_grid(std::abs(hs[i]) / omega0.k0(), omega0, spec.grid);
    table[i] = analytic_spectrum_W(hs[i], z, times, geom, model, window, grid, spec.E0);
  });
  return table;
}

std::vector<AnalyticSignalSample> time_domain_field(std::span<const double> xs, double z,
                                                    std::span<const double> times,
                                                    std::span<const LineSource> sources,
                                                    const SlabGeometry& geom,
                                                    const MaterialModel& model,
                                                    const SineWindow& window,
                                                    const TimeDomainSpec& spec) {
  validate(spec);
  if (sources.empty()) throw DomainError("time_domain_field: need at least one source");
  const double k00 = Frequency(window.omega0).k0();

  // Outer rule: h = k00 sin(theta) on [0, pi/2], h = k00 cosh(xi) beyond.
  std::vector<double> hs;
  std::vector<double> hw;
  {
    const QuadratureRule prop = kronrod_panels(0.0, 0.5 * kPi, spec.propagating_panels);
    for (std::size_t j = 0; j < prop.size(); ++j) {
      hs.push_back(k00 * std::sin(prop.nodes[j]));
      hw.push_back(prop.weights[j] * k00 * std::cos(prop.nodes[j]));
    }
    const QuadratureRule evan =
        kronrod_panels(0.0, std::acosh(spec.h_max_over_k00), spec.evanescent_panels);
    for (std::size_t j = 0; j < evan.size(); ++j) {
      hs.push_back(k00 * std::cosh(evan.nodes[j]));
      hw.push_back(evan.weights[j] * k00 * std::sinh(evan.nodes[j]));
    }
  }

  const auto table = analytic_spectrum_table(hs, z, times, geom, model, window, spec);

  std::vector<AnalyticSignalSample> out;
  out.reserve(times.size() * xs.size());
  for (std::size_t it = 0; it < times.size(); ++it) {
    for (double x : xs) {
      cplx acc{};
      for (std::size_t j = 0; j < hs.size(); ++j) {
        double kernel = 0.0;
        for (const auto& s : sources) kernel += s.amplitude * std::cos(hs[j] * (x - s.x));
        acc += hw[j] * kernel * table[j][it];
      }
      out.push_back({acc / kPi, x, z, times[it]});
    }
  }
  return out;
}

AnalyticSignalSample time_domain_field(double x, double z, double t, const SlabGeometry& geom,
                                       const MaterialModel& model, const SineWindow& window,
                                       const TimeDomainSpec& spec) {
  const double xs[] = {x};
  const double ts[] = {t};
  const LineSource src[] = {LineSource{}};
  return time_domain_field(xs, z, ts, src, geom, model, window, spec).front();
}

TruncationWavenumber h_t(double t, Frequency omega0, const SlabGeometry& geom,
                         ObservationRegion region) {
  const double cycles = omega0.hz() * t;
  if (!(cycles > std::exp(1.0))) {
    throw DomainError("h_t: requires f0 t > e (asymptotic validity), got f0 t = " + num(cycles));
  }
  const double k00 = omega0.k0();
  const double growth = region == ObservationRegion::Beyond2L
                            ? std::log(cycles) / geom.L()
                            : 2.0 * std::log(cycles) / geom.back_face();
  return {std::sqrt(growth * growth + k00 * k00), region, TimeLimited{t}};
}

IIntegralComparison i_integral_oracle(double uzeta, double z, double t0, Frequency omega0,
                                      double L) {
  if (!(uzeta >= 0.0)) throw DomainError("i_integral_oracle: |zeta0| must be >= 0");
  if (!(t0 > 0.0) || !(L > 0.0) || !(z >= L)) {
    throw DomainError("i_integral_oracle: requires t0 > 0, L > 0, z >= L");
  }
  const double w0 = omega0.omega();
  const double phase_span = w0 * t0;
  if (phase_span > 1e6) throw DomainError("i_integral_oracle: w0 t0 above 1e6 is not supported");

  IIntegralComparison cmp;
  const double q = phase_span / kTwoPi * std::exp(-w0 * uzeta * L);
  cmp.closed_form = -0.25 * phase_span * std::exp(-w0 * uzeta * (z - L)) *
                    std::log(std::abs((1.0 - q) / (1.0 + q)));

  auto denom = [&](double w) {
    const double s = (w - w0) / w0;
    return std::exp(-2.0 * w * uzeta * L) - 4.0 * s * s;
  };
  auto f = [&](double w) -> cplx {
    return sinc_t(w - w0, t0) * std::exp(-w * uzeta * z) / denom(w);
  };

  // One simple pole on each side of the carrier.
  boost::math::tools::eps_tolerance<double> tol(52);
  std::uintmax_t iters = 200;
  const auto lo = boost::math::tools::bisect(denom, 0.0, w0, tol, iters);
  iters = 200;
  const auto hi = boost::math::tools::bisect(denom, w0, 2.0 * w0, tol, iters);
  const double p_lo = 0.5 * (lo.first + lo.second);
  const double p_hi = 0.5 * (hi.first + hi.second);
  const double r_lo = 0.5 * std::min(p_lo, w0 - p_lo);
  const double r_hi = 0.5 * (p_hi - w0);
  const double w_top = 33.0 * w0;

  auto periods = [&](double a, double b) {
    return static_cast<int>(std::ceil(2.0 * (b - a) * t0 / kTwoPi)) + 8;
  };
  auto integrate = [&](const ComplexIntegrand& g, double a, double b) {
    AdaptiveOptions opts;
    opts.rel_tol = 1e-8;
    opts.abs_tol = 1e-10;
    opts.initial_panels = periods(a, b);
    opts.max_panels = 4 * opts.initial_panels + 4000;
    return integrate_adaptive(g, a, b, opts).value.real();
  };
  // Principal value: pair samples symmetric about the pole so the 1/s parts cancel.
  auto principal = [&](double p, double r) {
    return integrate([&](double s) { return f(p + s) + f(p - s); }, 0.0, r);
  };

  cmp.direct = integrate(f, 0.0, p_lo - r_lo) + principal(p_lo, r_lo) +
               integrate(f, p_lo + r_lo, p_hi - r_hi) + principal(p_hi, r_hi) +
               integrate(f, p_hi + r_hi, w_top);
  return cmp;
}

cplx asymptotic_field_time(double x, double z, double t, double E0, Frequency omega0, double L) {
  const double tau = omega0.hz() * t;
  if (!(tau > 1.0)) throw DomainError("asymptotic_field_time: requires f0 t > 1");
  const double lambda0 = omega0.wavelength();
  if (!(z > L) || z > 2.0 * L - lambda0 / 20.0) {
    throw DomainError("asymptotic_field_time: z must lie in (L, 2L - lambda0/20]");
  }
  const double gap = 2.0 * L - z;
  const double rho = std::hypot(x, gap);
  const double amplitude = E0 / (kPi * omega0.k0() * rho) * std::pow(tau, 2.0 - z / L) *
                           std::cos(x / L * std::log(tau) - std::atan2(x, gap));
  return amplitude * std::polar(1.0, -std::fmod(omega0.omega() * t, kTwoPi));
}

}  // namespace slablens
