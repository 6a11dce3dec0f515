#include "slablens/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include "slablens/errors.hpp"

namespace slablens {

namespace {

// QUADPACK qk15 abscissae and weights; odd indices are the Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  QuadratureResult r;

  bool operator<(const Panel& o) const { return r.abs_error < o.r.abs_error; }
};

}  // namespace

QuadratureResult gauss_kronrod_15(const ComplexIntegrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const cplx fc = f(center);
  cplx kronrod = fc * kWgk[7];
  cplx gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const cplx sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss), 15};
}

QuadratureResult integrate_adaptive(const ComplexIntegrand& f, double a, double b,
                                    const AdaptiveOptions& opts) {
  if (a == b) return {};
  std::priority_queue<Panel> heap;
  cplx total{};
  double error = 0.0;
  int evaluations = 0;

  const int n0 = std::max(1, opts.initial_panels);
  const double step = (b - a) / n0;
  for (int i = 0; i < n0; ++i) {
    const double lo = a + i * step;
    const double hi = (i + 1 == n0) ? b : lo + step;
    Panel p{lo, hi, gauss_kronrod_15(f, lo, hi)};
    total += p.r.value;
    error += p.r.abs_error;
    evaluations += p.r.evaluations;
    heap.push(p);
  }

  auto converged = [&] { return error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

  while (!converged()) {
    if (static_cast<int>(heap.size()) >= opts.max_panels) {
      throw NonConvergence("integrate_adaptive: panel budget exhausted", total, error);
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NonConvergence("integrate_adaptive: panel width reached machine precision", total,
                           error);
    }
    Panel left{worst.a, mid, gauss_kronrod_15(f, worst.a, mid)};
    Panel right{mid, worst.b, gauss_kronrod_15(f, mid, worst.b)};
    total += left.r.value + right.r.value - worst.r.value;
    error += left.r.abs_error + right.r.abs_error - worst.r.abs_error;
    evaluations += left.r.evaluations + right.r.evaluations;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum so the result does not carry the running-update rounding.
  cplx resum{};
  double err = 0.0;
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  for (const auto& p : panels) {
    resum += p.r.value;
    err += p.r.abs_error;
  }
  return {resum, err, evaluations};
}

QuadratureRule kronrod_panels(double a, double b, int panels) {
  QuadratureRule rule;
  if (panels <= 0 || a == b) return rule;
  rule.nodes.reserve(15 * static_cast<std::size_t>(panels));
  rule.weights.reserve(15 * static_cast<std::size_t>(panels));
  const double width = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == panels) ? b : lo + width;
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (int j = 0; j < 7; ++j) {
      rule.nodes.push_back(center - half * kXgk[j]);
      rule.weights.push_back(half * kWgk[j]);
    }
    rule.nodes.push_back(center);
    rule.weights.push_back(half * kWgk[7]);
    for (int j = 6; j >= 0; --j) {
      rule.nodes.push_back(center + half * kXgk[j]);
      rule.weights.push_back(half * kWgk[j]);
    }
  }
  return rule;
}

}  // namespace slablens
