#include <doctest.h>

#include <cmath>

#include "slablens/errors.hpp"
#include "slablens/slab_core.hpp"
#include "support/helpers.hpp"

using namespace slablens;
using testing::rel_diff;

namespace {

// Angular frequency with k0 = 1 rad/m.
Frequency unit_k0() { return Frequency(kSpeedOfLight); }

}  // namespace

TEST_CASE("Frequency and geometry reject non-positive inputs") {
  CHECK_THROWS_AS(Frequency(0.0), DomainError);
  CHECK_THROWS_AS(Frequency(-1.0), DomainError);
  CHECK_THROWS_AS(SlabGeometry(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(SlabGeometry(1.0, -1.0), DomainError);

  const Frequency f = Frequency::from_hz(1e10);
  CHECK(f.hz() == doctest::Approx(1e10));
  CHECK(f.wavelength() == doctest::Approx(kSpeedOfLight / 1e10));
  CHECK(SlabGeometry(0.5, 1.0).source_inside_focus());
  CHECK_FALSE(SlabGeometry(1.0, 1.0).source_inside_focus());
}

TEST_CASE("gamma0 follows the free-space branch") {
  const Frequency w = unit_k0();
  CHECK(w.k0() == doctest::Approx(1.0));
  CHECK(gamma0(w, 0.0) == cplx{1.0, 0.0});
  const cplx g = gamma0(w, std::sqrt(2.0));
  CHECK(std::abs(g - cplx{0.0, 1.0}) < 1e-15);
  CHECK(std::abs(gamma0(w, 0.6) - cplx{0.8, 0.0}) < 1e-15);

  const WaveNumbers at_branch = wave_numbers(w, w.k0(), MaterialResponse{});
  CHECK(at_branch.gamma0 == cplx{});
  CHECK(at_branch.branch_point);
  CHECK(is_branch_point(w, -w.k0()));
}

TEST_CASE("gamma_slab sign rule") {
  const Frequency w = unit_k0();
  CHECK(gamma_slab(w, 0.0, {{1, 0}, {1, 0}}) == cplx{1.0, 0.0});
  CHECK(std::abs(gamma_slab(w, 0.0, {{-1, 0}, {-1, 0}}) - cplx{-1.0, 0.0}) < 1e-15);

  const cplx lossy{-1.0, 1e-6};
  const cplx g = gamma_slab(w, 0.0, {lossy, lossy});
  CHECK(g.imag() > 0.0);
  CHECK(g.real() == doctest::Approx(-1.0).epsilon(1e-9));

  CHECK_THROWS_AS(gamma_slab(w, 0.0, {{1, -0.1}, {1, 0}}), DomainError);
}

TEST_CASE("evaluate_material examples") {
  const Frequency w0 = Frequency::from_hz(1e10);
  const DispersiveDNG model{w0.omega(), 4.0, 1000.0};

  const auto at_carrier = evaluate_material(model, w0);
  CHECK(at_carrier.eps_r == cplx{-1.0, 0.0});
  CHECK(at_carrier.mu_r == cplx{-1.0, 0.0});

  const auto off = evaluate_material(model, Frequency(1.001 * w0.omega()));
  CHECK(off.eps_r.real() == doctest::Approx(-0.996).epsilon(1e-9));
  CHECK(off.eps_r.imag() == doctest::Approx(1.0).epsilon(1e-9));

  for (double f : {1e6, 1e10, 3e14}) {
    const auto c = evaluate_material(ConstantLossyDNG{5.6e-7}, Frequency::from_hz(f));
    CHECK(c.eps_r == cplx{-1.0, 5.6e-7});
    CHECK(c.mu_r == cplx{-1.0, 5.6e-7});
  }
  CHECK(evaluate_material(Vacuum{}, w0).eps_r == cplx{1.0, 0.0});
}

TEST_CASE("custom materials: table interpolation and closures") {
  MaterialTable table;
  table.omega = {1.0, 2.0, 4.0};
  table.response = {{{1, 0}, {1, 0}}, {{3, 1}, {2, 0}}, {{5, 1}, {2, 2}}};
  validate(table);
  const auto mid = evaluate_material(table, Frequency(3.0));
  CHECK(std::abs(mid.eps_r - cplx{4.0, 1.0}) < 1e-15);
  CHECK(std::abs(mid.mu_r - cplx{2.0, 1.0}) < 1e-15);
  CHECK(evaluate_material(table, Frequency(4.0)).mu_r == cplx{2.0, 2.0});
  CHECK_THROWS_AS(evaluate_material(table, Frequency(4.5)), DomainError);
  CHECK_THROWS_AS(evaluate_material(table, Frequency(0.5)), DomainError);

  MaterialTable unsorted = table;
  unsorted.omega = {1.0, 1.0, 4.0};
  CHECK_THROWS_AS(validate(unsorted), DomainError);

  MaterialFunction closure = [](double omega) {
    return MaterialResponse{{-1.0, 1e-3 * omega}, {-1.0, 0.0}};
  };
  CHECK(evaluate_material(closure, Frequency(2.0)).eps_r == cplx{-1.0, 2e-3});
  MaterialFunction active = [](double) { return MaterialResponse{{1.0, -1.0}, {1.0, 0.0}}; };
  CHECK_THROWS_AS(evaluate_material(active, Frequency(2.0)), DomainError);
}

TEST_CASE("material parameter invariants") {
  CHECK_THROWS_AS(validate(DispersiveDNG{1.0, 3.9, 1000.0}), DomainError);
  CHECK_THROWS_AS(validate(ConstantLossyDNG{-1e-9}), DomainError);
  CHECK_NOTHROW(validate(DispersiveDNG{1.0, 4.0, 1000.0}));
}

TEST_CASE("property: branch consistency of both square roots") {
  testing::Draws draws(11);
  for (int i = 0; i < 2000; ++i) {
    const Frequency w = Frequency::from_hz(draws.log_uniform(1e8, 1e12));
    const double k0 = w.k0();
    const double h = draws.uniform(0.0, 6.0) * k0;
    const cplx g0 = gamma0(w, h);
    CHECK(rel_diff(g0 * g0, cplx{k0 * k0 - h * h}) < 1e-14 * std::max(1.0, h * h / std::abs(k0 * k0 - h * h)));
    CHECK(g0.real() >= 0.0);
    CHECK(g0.imag() >= 0.0);
    CHECK((g0.real() == 0.0 || g0.imag() == 0.0));

    const MaterialResponse m = draws.passive_material();
    const cplx g = gamma_slab(w, h, m);
    const cplx k2 = k0 * k0 * m.eps_r * m.mu_r;
    const double scale = std::abs(k2) + h * h;
    CHECK(std::abs(g * g - (k2 - h * h)) < 1e-14 * scale);
    CHECK(g.imag() >= 0.0);
  }
}

TEST_CASE("property: real gamma takes the sign of the medium") {
  testing::Draws draws(12);
  const Frequency w = unit_k0();
  for (int i = 0; i < 500; ++i) {
    const MaterialResponse m = draws.lossless_matched_sign();
    const double k2 = (m.eps_r * m.mu_r).real();
    const double h = draws.uniform(0.0, 0.99) * std::sqrt(k2);
    const cplx g = gamma_slab(w, h, m);
    CHECK(g.imag() == 0.0);
    CHECK((g.real() > 0.0) == (m.eps_r.real() > 0.0));
  }
}

TEST_CASE("property: lossy -1 wavenumber converges to the lossless value") {
  const Frequency w = Frequency::from_hz(1e10);
  const double k0 = w.k0();
  const MaterialResponse lossless{{-1, 0}, {-1, 0}};
  for (double hk : {0.0, 0.3, 0.8, 1.5, 3.0}) {
    const cplx target = gamma_slab(w, hk * k0, lossless);
    double last_err = INFINITY;
    double last_im = INFINITY;
    for (int e = 2; e <= 12; ++e) {
      const double dp = std::pow(10.0, -e);
      const cplx g = gamma_slab(w, hk * k0, {{-1, dp}, {-1, dp}});
      const double err = std::abs(g - target) / k0;
      CHECK(err <= last_err);
      last_err = err;
      if (hk < 1.0) {
        CHECK(g.imag() < last_im);
        last_im = g.imag();
      }
    }
    CHECK(last_err < 1e-10);
  }
}

TEST_CASE("property: dispersive model is passive and has the stated slope") {
  const double w0 = Frequency::from_hz(1e10).omega();
  for (double slope : {4.0, 4.5, 7.0}) {
    const DispersiveDNG model{w0, slope, 1000.0};
    for (int i = 0; i <= 2000; ++i) {
      const double w = w0 * (0.9 + 0.2 * i / 2000.0);
      CHECK(evaluate_material(model, Frequency(w)).eps_r.imag() >= 0.0);
    }
    const double step = 1e-7 * w0;
    const double deriv = (evaluate_material(model, Frequency(w0 + step)).eps_r.real() -
                          evaluate_material(model, Frequency(w0 - step)).eps_r.real()) /
                         (2.0 * step);
    CHECK(deriv * w0 == doctest::Approx(slope).epsilon(1e-6));
    CHECK(deriv >= 4.0 / w0 * (1.0 - 1e-9));
    // Loss vanishes quadratically at the carrier.
    const double tiny = evaluate_material(model, Frequency(w0 * (1.0 + 1e-6))).eps_r.imag();
    CHECK(tiny == doctest::Approx(1e-6).epsilon(1e-4));
  }
}
