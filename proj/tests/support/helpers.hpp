#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "slablens/slab_core.hpp"

namespace testing {

using slablens::cplx;

inline double rel_diff(cplx a, cplx b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

/// 10 GHz, the frequency used throughout the examples.
inline slablens::Frequency ten_ghz() { return slablens::Frequency::from_hz(1e10); }

/// Random passive media and geometries for property tests.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  slablens::MaterialResponse passive_material() {
    return {{uniform(-2.0, 2.0), uniform(0.0, 0.5)}, {uniform(-2.0, 2.0), uniform(0.0, 0.5)}};
  }

  /// Lossless medium with eps and mu of the same sign.
  slablens::MaterialResponse lossless_matched_sign() {
    const double sign = uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    return {{sign * uniform(0.2, 3.0), 0.0}, {sign * uniform(0.2, 3.0), 0.0}};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing
