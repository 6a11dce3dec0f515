#pragma once

// Gauss-Kronrod (7, 15) panel quadrature for complex integrands, adaptive and
// fixed-panel variants.

#include <functional>
#include <vector>

#include "slablens/constants.hpp"

namespace slablens {

struct QuadratureResult {
  cplx value;
  double abs_error = 0.0;
  int evaluations = 0;
};

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int initial_panels = 1;
  int max_panels = 20000;
};

using ComplexIntegrand = std::function<cplx(double)>;

/// Integrates f over [a, b] with a single G7-K15 panel.
QuadratureResult gauss_kronrod_15(const ComplexIntegrand& f, double a, double b);

/// Globally adaptive G7-K15: bisects the panel with the largest error until the
/// summed error estimate falls below max(abs_tol, rel_tol * |I|). Throws
/// NonConvergence (carrying the last estimate) after max_panels panels.
QuadratureResult integrate_adaptive(const ComplexIntegrand& f, double a, double b,
                                    const AdaptiveOptions& opts = {});

/// A fixed set of nodes and weights approximating an integral over an interval.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Kronrod 15-point nodes on `panels` equal panels of [a, b].
QuadratureRule kronrod_panels(double a, double b, int panels);

}  // namespace slablens
