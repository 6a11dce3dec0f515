#include <doctest.h>

#include <cmath>

#include "slablens/errors.hpp"
#include "slablens/quadrature.hpp"

using namespace slablens;

TEST_CASE("single G7-K15 panel is exact for degree-22 polynomials") {
  auto f = [](double x) { return cplx{std::pow(x, 22), -std::pow(x, 5)}; };
  const auto r = gauss_kronrod_15(f, -1.0, 2.0);
  const double re = (std::pow(2.0, 23) + 1.0) / 23.0;
  const double im = -(std::pow(2.0, 6) - 1.0) / 6.0;
  CHECK(r.value.real() == doctest::Approx(re).epsilon(1e-14));
  CHECK(r.value.imag() == doctest::Approx(im).epsilon(1e-14));
  CHECK(r.evaluations == 15);
}

TEST_CASE("adaptive integration of oscillatory and peaked integrands") {
  auto osc = [](double x) { return std::exp(kI * 50.0 * x); };
  const auto r = integrate_adaptive(osc, 0.0, 3.0, {1e-12, 0.0, 4, 20000});
  const cplx exact = (std::exp(kI * 150.0) - 1.0) / (kI * 50.0);
  CHECK(std::abs(r.value - exact) < 1e-12 * std::abs(exact) * 10.0);

  auto peak = [](double x) { return cplx{1.0 / (1e-4 + x * x), 0.0}; };
  const auto p = integrate_adaptive(peak, -1.0, 1.0, {1e-10});
  const double exact_peak = 2.0 / 1e-2 * std::atan(1.0 / 1e-2);
  CHECK(p.value.real() == doctest::Approx(exact_peak).epsilon(1e-9));

  CHECK(integrate_adaptive(osc, 1.0, 1.0).value == cplx{});
}

TEST_CASE("adaptive integration reports non-convergence with its estimate") {
  auto rough = [](double x) { return cplx{x > 0.3 ? 1.0 : 0.0, 0.0}; };
  try {
    integrate_adaptive(rough, 0.0, 1.0, {1e-15, 0.0, 1, 20});
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(e.estimate().real() == doctest::Approx(0.7).epsilon(1e-2));
    CHECK(e.error_estimate() > 0.0);
  }
}

TEST_CASE("kronrod_panels reproduces the panel rule") {
  const auto rule = kronrod_panels(0.0, kPi, 6);
  CHECK(rule.size() == 90);
  double sum = 0.0;
  double wsum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    sum += rule.weights[i] * std::sin(rule.nodes[i]);
    wsum += rule.weights[i];
    if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
  }
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(wsum == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(kronrod_panels(0.0, 1.0, 0).size() == 0);
}
