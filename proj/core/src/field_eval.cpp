#include "slablens/field_eval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slablens/errors.hpp"

namespace slablens {

namespace {

constexpr double kDefaultHMaxFactor = 12.0;
constexpr double kMaxHMaxFactor = 2000.0;
constexpr double kSeriesThreshold = 1e-4;

double exclusion_of(const QuadratureSpec& spec, Frequency omega) {
  return spec.branch_point_exclusion > 0.0 ? spec.branch_point_exclusion
                                           : 1e-9 / omega.wavelength();
}

// A segment of the substituted h-integral: variable range and the map back to h.
struct Segment {
  double lo;
  double hi;
  bool evanescent;
};

// Integrand in the substitution variable for one segment.
cplx substituted(const std::function<cplx(double)>& F, double k0, double x, double s,
                 bool evanescent, SpectralWeight weight) {
  double h;
  double jac;
  cplx inv_gamma_jac;  // dh / gamma0 expressed in the substitution variable
  if (evanescent) {
    h = k0 * std::cosh(s);
    jac = k0 * std::sinh(s);
    inv_gamma_jac = cplx{0.0, -1.0};
  } else {
    h = k0 * std::sin(s);
    jac = k0 * std::cos(s);
    inv_gamma_jac = cplx{1.0, 0.0};
  }
  const cplx f = F(h) * std::cos(h * x);
  return weight == SpectralWeight::Plain ? f * jac : f * inv_gamma_jac;
}

QuadratureResult trapezoid(const std::function<cplx(double)>& g, double a, double b, int n) {
  n = std::max(2, n + (n % 2));
  const double step = (b - a) / n;
  cplx fine = 0.5 * (g(a) + g(b));
  cplx coarse = fine;
  for (int i = 1; i < n; ++i) {
    const cplx v = g(a + i * step);
    fine += v;
    if (i % 2 == 0) coarse += v;
  }
  fine *= step;
  coarse *= 2.0 * step;
  return {fine, std::abs(fine - coarse) / 3.0, n + 1};
}

}  // namespace

void validate(const QuadratureSpec& spec, Frequency omega) {
  if (spec.h_max && !(*spec.h_max > omega.k0())) {
    throw DomainError("QuadratureSpec: h_max must exceed k0");
  }
  if (!(spec.rel_tol > 0.0) || spec.rel_tol > 1e-2) {
    throw DomainError("QuadratureSpec: rel_tol must lie in (0, 1e-2]");
  }
  if (spec.n_base < 1) throw DomainError("QuadratureSpec: n_base must be >= 1");
}

FieldValue integrate_spectrum(Frequency omega, double x, const std::function<cplx(double)>& F,
                              double h_max, const QuadratureSpec& spec, SpectralWeight weight,
                              double oscillation_length) {
  const double k0 = omega.k0();
  if (!(h_max > 0.0)) throw DomainError("integrate_spectrum: h_max must be > 0");
  const double guard = weight == SpectralWeight::Plain ? exclusion_of(spec, omega) : 0.0;

  std::vector<Segment> segments;
  if (h_max <= k0) {
    const double top = std::min(h_max, k0 - guard);
    segments.push_back({0.0, std::asin(std::clamp(top / k0, 0.0, 1.0)), false});
  } else {
    segments.push_back({0.0, std::asin(std::clamp((k0 - guard) / k0, 0.0, 1.0)), false});
    segments.push_back({std::acosh((k0 + guard) / k0), std::acosh(h_max / k0), true});
  }

  const double osc = std::max(std::abs(x), std::abs(oscillation_length));
  cplx total{};
  double error = 0.0;

  std::vector<int> initial(segments.size());
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const double span_h = segments[i].evanescent ? h_max - k0 : std::min(h_max, k0);
    const double phase = span_h * osc;
    initial[i] = std::min(spec.max_panels / 4, spec.n_base + static_cast<int>(std::ceil(phase / kPi)));
  }

  if (spec.strategy == QuadratureStrategy::UniformTrapezoid) {
    for (std::size_t i = 0; i < segments.size(); ++i) {
      const auto& seg = segments[i];
      auto g = [&](double s) { return substituted(F, k0, x, s, seg.evanescent, weight); };
      const auto r = trapezoid(g, seg.lo, seg.hi, 2 * initial[i]);
      total += r.value;
      error += r.abs_error;
    }
    return {total / kPi, error / kPi};
  }

  // Scale for the absolute tolerance from a coarse first pass over all segments.
  double scale = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    auto g = [&](double s) { return substituted(F, k0, x, s, seg.evanescent, weight); };
    cplx coarse{};
    const auto rule = kronrod_panels(seg.lo, seg.hi, initial[i]);
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const cplx v = g(rule.nodes[j]);
      coarse += rule.weights[j] * v;
      scale = std::max(scale, std::abs(v) * (seg.hi - seg.lo) * 1e-3);
    }
    scale = std::max(scale, std::abs(coarse));
  }
  AdaptiveOptions opts;
  opts.rel_tol = spec.rel_tol;
  opts.abs_tol = 0.5 * spec.rel_tol * std::max(scale, 1e-300);
  opts.max_panels = spec.max_panels;

  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    auto g = [&](double s) { return substituted(F, k0, x, s, seg.evanescent, weight); };
    opts.initial_panels = initial[i];
    try {
      const auto r = integrate_adaptive(g, seg.lo, seg.hi, opts);
      total += r.value;
      error += r.abs_error;
    } catch (const NonConvergence& e) {
      throw NonConvergence(std::string("h-integral did not converge: ") + e.what(),
                           (total + e.estimate()) / kPi, (error + e.error_estimate()) / kPi);
    }
  }
  return {total / kPi, error / kPi};
}

double default_h_max(Frequency omega, const std::function<cplx(double)>& F, double rel_tol) {
  const double k0 = omega.k0();
  double h_max = kDefaultHMaxFactor * k0;
  double peak = 0.0;
  constexpr int kSamples = 400;
  for (int i = 0; i <= kSamples; ++i) {
    const double h = h_max * (i + 0.5) / (kSamples + 1);
    const double v = std::abs(F(h));
    if (std::isfinite(v)) peak = std::max(peak, v);
  }
  auto tail_decayed = [&](double top) {
    for (int i = 0; i < 16; ++i) {
      const double h = top * (0.9 + 0.1 * i / 15.0);
      const double v = std::abs(F(h));
      if (!std::isfinite(v) || v > rel_tol * peak) return false;
    }
    return true;
  };
  while (!tail_decayed(h_max)) {
    h_max *= 1.5;
    if (h_max > kMaxHMaxFactor * k0) {
      throw NonConvergence("spectrum does not decay; supply an explicit truncation h_max", {},
                           0.0);
    }
  }
  return h_max;
}

FieldValue evaluate_field(Frequency omega, double x, double z, const SlabGeometry& geom,
                          const MaterialModel& model, const QuadratureSpec& spec, double E0) {
  if (!(z > 0.0)) throw DomainError("evaluate_field: z must be > 0");
  validate(spec, omega);
  const MaterialResponse m = evaluate_material(model, omega);
  const cplx t0 = line_source_spectrum(E0, omega);
  auto F = [&](double h) { return field_spectrum(omega, h, t0, geom, m, z); };
  const double h_max = spec.h_max ? *spec.h_max : default_h_max(omega, F, spec.rel_tol);
  return integrate_spectrum(omega, x, F, h_max, spec, SpectralWeight::Plain, z);
}

FieldValue incident_field(Frequency omega, double x, double z, double E0,
                          const QuadratureSpec& spec) {
  if (!(z > 0.0)) throw DomainError("incident_field: z must be > 0");
  validate(spec, omega);
  const double t0 = line_source_spectrum(E0, omega);
  auto F = [&](double h) { return t0 * std::exp(kI * gamma0(omega, h) * z); };
  const double h_max = spec.h_max ? *spec.h_max : default_h_max(omega, F, spec.rel_tol);
  return integrate_spectrum(omega, x, F, h_max, spec, SpectralWeight::Plain, z);
}

FieldValue translated_field(Frequency omega, double x, double z_shift, double E0, double H,
                            const QuadratureSpec& spec) {
  const double t0 = line_source_spectrum(E0, omega);
  auto F = [&](double h) { return t0 * std::exp(kI * gamma0(omega, h) * z_shift); };
  return integrate_spectrum(omega, x, F, H, spec, SpectralWeight::Plain, z_shift);
}

double sinc_image(double x, double H, double E0, Frequency omega0) {
  const double pref = E0 / (kPi * omega0.k0());
  const double arg = H * x;
  if (std::abs(arg) < kSeriesThreshold) return pref * H * (1.0 - arg * arg / 6.0);
  return pref * std::sin(arg) / x;
}

double sinc_image(double x, const TruncationWavenumber& H, double E0, Frequency omega0) {
  return sinc_image(x, H.value, E0, omega0);
}

double two_source_image(double x, double D, double H, double E0, Frequency omega0) {
  return sinc_image(x - 0.5 * D, H, E0, omega0) + sinc_image(x + 0.5 * D, H, E0, omega0);
}

FieldValue hy_image(double x, double H, double E0, Frequency omega0, const QuadratureSpec& spec) {
  if (!(H >= omega0.k0())) throw DomainError("hy_image: H must be >= k00");
  auto one = [](double) { return cplx{1.0, 0.0}; };
  FieldValue v = integrate_spectrum(omega0, x, one, H, spec, SpectralWeight::InverseGamma0, 0.0);
  v.value *= E0 / kZ0;
  v.abs_error *= E0 / kZ0;
  return v;
}

Region region_map(const SlabGeometry& geom, double z, LimitOrder order) {
  if (!(z > 0.0)) throw DomainError("region_map: z must be > 0");
  const double d = geom.d();
  const double L = geom.L();
  if (order == LimitOrder::LosslessFirst) {
    if (!(d < L)) throw DomainError("region_map: lossless map requires d < L");
    if (z <= d) return Region::Incident;
    if (z < 2.0 * d) return Region::MirrorImage;
    if (z < 2.0 * L) return Region::DivergentOuter;
    return Region::PerfectImage;
  }
  if (!(d > 0.5 * L && d < L)) throw DomainError("region_map: lossy-limit map requires L/2 < d < L");
  if (z < d - (L - d)) return Region::Bounded;
  if (z < d + (L - d)) return Region::DivergentInner;
  if (z < 2.0 * d) return Region::Bounded;
  if (z < 2.0 * L) return Region::DivergentOuter;
  return Region::PerfectImage;
}

const char* to_string(Region r) {
  switch (r) {
    case Region::Incident: return "incident";
    case Region::MirrorImage: return "mirror_image";
    case Region::Bounded: return "bounded";
    case Region::DivergentInner: return "divergent_inner";
    case Region::DivergentOuter: return "divergent_outer";
    case Region::PerfectImage: return "perfect_image";
  }
  return "unknown";
}

namespace {

double uniform_step(const std::vector<double>& v, const char* axis) {
  if (v.size() < 3) throw DomainError(std::string("helmholtz_residual: need >= 3 samples in ") + axis);
  const double step = v[1] - v[0];
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs((v[i] - v[i - 1]) - step) > 1e-9 * std::abs(step)) {
      throw DomainError(std::string("helmholtz_residual: non-uniform spacing in ") + axis);
    }
  }
  return step;
}

}  // namespace

double helmholtz_residual(const FieldGrid& grid, Frequency omega) {
  const double dx = uniform_step(grid.x, "x");
  const double dz = uniform_step(grid.z, "z");
  const double limit = omega.wavelength() / 40.0 * (1.0 + 1e-12);
  if (std::abs(dx) > limit || std::abs(dz) > limit) {
    throw DomainError("helmholtz_residual: grid spacing exceeds lambda0/40");
  }
  if (grid.values.size() != grid.x.size() * grid.z.size()) {
    throw DomainError("helmholtz_residual: value count does not match grid");
  }
  const double k2 = omega.k0() * omega.k0();
  const double cx = 1.0 / (dx * dx);
  const double cz = 1.0 / (dz * dz);
  const double op_norm = std::abs(k2 - 2.0 * cx - 2.0 * cz) + 2.0 * cx + 2.0 * cz;

  double peak = 0.0;
  for (const auto& v : grid.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;

  double worst = 0.0;
  const std::size_t nx = grid.x.size();
  for (std::size_t iz = 1; iz + 1 < grid.z.size(); ++iz) {
    for (std::size_t ix = 1; ix + 1 < nx; ++ix) {
      const cplx c = grid.at(iz, ix);
      const cplx lap = (grid.at(iz, ix + 1) - 2.0 * c + grid.at(iz, ix - 1)) * cx +
                       (grid.at(iz + 1, ix) - 2.0 * c + grid.at(iz - 1, ix)) * cz;
      worst = std::max(worst, std::abs(lap + k2 * c));
    }
  }
  return worst / (op_norm * peak);
}

}  // namespace slablens
