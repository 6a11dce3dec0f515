#include "slablens/slab_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slablens/errors.hpp"

namespace slablens {

Frequency::Frequency(double omega) : omega_(omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("Frequency: omega must be finite and > 0, got " + std::to_string(omega));
  }
}

SlabGeometry::SlabGeometry(double d, double L) : d_(d), L_(L) {
  if (!(d > 0.0) || !(L > 0.0) || !std::isfinite(d) || !std::isfinite(L)) {
    throw DomainError("SlabGeometry: d and L must be finite and > 0");
  }
}

namespace {

MaterialResponse lerp(const MaterialResponse& a, const MaterialResponse& b, double s) {
  return {a.eps_r + s * (b.eps_r - a.eps_r), a.mu_r + s * (b.mu_r - a.mu_r)};
}

MaterialResponse interpolate(const MaterialTable& table, double omega) {
  const auto& w = table.omega;
  if (omega < w.front() || omega > w.back()) {
    throw DomainError("MaterialTable: omega " + std::to_string(omega) + " outside table range [" +
                      std::to_string(w.front()) + ", " + std::to_string(w.back()) + "]");
  }
  auto it = std::upper_bound(w.begin(), w.end(), omega);
  if (it == w.end()) return table.response.back();
  const auto hi = static_cast<std::size_t>(it - w.begin());
  const auto lo = hi - 1;
  const double s = (omega - w[lo]) / (w[hi] - w[lo]);
  return lerp(table.response[lo], table.response[hi], s);
}

struct Evaluator {
  double omega;

  MaterialResponse operator()(const Vacuum&) const { return {}; }

  MaterialResponse operator()(const ConstantLossyDNG& m) const {
    const cplx v{-1.0, m.delta_pp};
    return {v, v};
  }

  MaterialResponse operator()(const DispersiveDNG& m) const {
    const double x = (omega - m.omega0) / m.omega0;
    const double loss = m.loss_coeff * x;
    const cplx v{-1.0 + m.slope * x, loss * loss};
    return {v, v};
  }

  MaterialResponse operator()(const MaterialTable& t) const { return interpolate(t, omega); }

  MaterialResponse operator()(const MaterialFunction& f) const {
    MaterialResponse r = f(omega);
    if (!r.passive()) throw DomainError("material function returned a non-passive response");
    return r;
  }
};

struct Validator {
  void operator()(const Vacuum&) const {}

  void operator()(const ConstantLossyDNG& m) const {
    if (!(m.delta_pp >= 0.0)) throw DomainError("ConstantLossyDNG: delta_pp must be >= 0");
  }

  void operator()(const DispersiveDNG& m) const {
    if (!(m.omega0 > 0.0)) throw DomainError("DispersiveDNG: omega0 must be > 0");
    if (!(m.slope >= 4.0)) {
      throw DomainError("DispersiveDNG: slope must be >= 4 (causality/energy lower bound)");
    }
    if (!(m.loss_coeff >= 0.0)) throw DomainError("DispersiveDNG: loss_coeff must be >= 0");
  }

  void operator()(const MaterialTable& t) const {
    if (t.omega.size() < 2 || t.omega.size() != t.response.size()) {
      throw DomainError("MaterialTable: need >= 2 rows with matching response count");
    }
    if (std::adjacent_find(t.omega.begin(), t.omega.end(), std::greater_equal<>{}) !=
        t.omega.end()) {
      throw DomainError("MaterialTable: omega must be strictly increasing");
    }
    for (const auto& r : t.response) {
      if (!r.passive()) throw DomainError("MaterialTable: non-passive row");
    }
  }

  void operator()(const MaterialFunction& f) const {
    if (!f) throw DomainError("MaterialFunction: empty closure");
  }
};

}  // namespace

void validate(const MaterialModel& model) { std::visit(Validator{}, model); }

MaterialResponse evaluate_material(const MaterialModel& model, Frequency omega) {
  return std::visit(Evaluator{omega.omega()}, model);
}

cplx gamma0(Frequency omega, double h) {
  const double k0 = omega.k0();
  const double q = (k0 - h) * (k0 + h);
  if (q > 0.0) return {std::sqrt(q), 0.0};
  if (q < 0.0) return {0.0, std::sqrt(-q)};
  return {0.0, 0.0};
}

bool is_branch_point(Frequency omega, double h) { return std::abs(h) == omega.k0(); }

cplx gamma_slab(Frequency omega, double h, const MaterialResponse& m) {
  if (!m.passive()) {
    throw DomainError("gamma_slab: material is not passive (Im eps_r or Im mu_r < 0)");
  }
  const double k0 = omega.k0();
  // eps*mu - 1 expanded about -1 or +1 so near-unity products keep their
  // small part, and the radicand rounds like gamma0's when eps*mu == 1.
  cplx excess;
  if (m.eps_r.real() < 0.0 && m.mu_r.real() < 0.0) {
    const cplx e = m.eps_r + 1.0;
    const cplx u = m.mu_r + 1.0;
    excess = e * u - e - u;
  } else {
    const cplx e = m.eps_r - 1.0;
    const cplx u = m.mu_r - 1.0;
    excess = e * u + e + u;
  }
  // Far from eps*mu = 1 the k0^2 terms would cancel, so use k^2 - h^2 directly.
  const cplx q = std::abs(excess) <= 0.5 ? (k0 - h) * (k0 + h) + k0 * k0 * excess
                                         : k0 * k0 * (m.eps_r * m.mu_r) - h * h;
  cplx g = std::sqrt(q);
  if (g.imag() < 0.0) {
    g = -g;
  } else if (g.imag() == 0.0 && m.eps_r.real() < 0.0 && m.mu_r.real() < 0.0) {
    g = -g;
  }
  return g;
}

WaveNumbers wave_numbers(Frequency omega, double h, const MaterialResponse& m) {
  WaveNumbers w;
  w.k0 = omega.k0();
  w.h = h;
  w.gamma0 = gamma0(omega, h);
  w.gamma = gamma_slab(omega, h, m);
  w.branch_point = w.gamma0 == cplx{};
  return w;
}

}  // namespace slablens
