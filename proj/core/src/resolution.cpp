#include "slablens/resolution.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "slablens/constants.hpp"
#include "slablens/errors.hpp"

namespace slablens {

namespace {

void require_length(double L, double lambda0) {
  if (!(L > 0.0) || !(lambda0 > 0.0)) throw DomainError("resolution: L and lambda0 must be > 0");
}

double log_gain(double log_value, double L, double lambda0) {
  const double s = lambda0 * log_value / (kTwoPi * L);
  return std::sqrt(s * s + 1.0);
}

}  // namespace

double three_db_ratio() { return std::pow(10.0, 0.3); }

double two_source_contrast(const std::function<double(double)>& profile, double D) {
  auto intensity = [&](double x) {
    const double e = profile(x - 0.5 * D) + profile(x + 0.5 * D);
    return e * e;
  };
  const double centre = intensity(0.0);
  const auto peak = boost::math::tools::brent_find_minima(
      [&](double x) { return -intensity(x); }, 0.25 * D, 0.75 * D, 50);
  const double top = -peak.second;
  if (centre == 0.0) return top > 0.0 ? INFINITY : 1.0;
  return top / centre;
}

double three_db_resolution(const std::function<double(double)>& profile,
                           std::pair<double, double> bracket, const ThreeDbOptions& opts) {
  auto [lo, hi] = bracket;
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("three_db_resolution: need 0 < lo < hi");
  const double target = three_db_ratio();
  auto excess = [&](double D) { return two_source_contrast(profile, D) - target; };
  const double f_lo = excess(lo);
  const double f_hi = excess(hi);
  if (!(f_lo < 0.0 && f_hi > 0.0)) {
    throw DomainError("three_db_resolution: the 3 dB contrast is not crossed inside the bracket");
  }
  std::uintmax_t iters = 200;
  const double rel = opts.rel_tol;
  const auto root = boost::math::tools::bisect(
      excess, lo, hi, [rel](double a, double b) { return std::abs(b - a) <= rel * std::abs(a); },
      iters);
  return 0.5 * (root.first + root.second);
}

double enhancement_lossy(double delta_pp, double L, double lambda0) {
  require_length(L, lambda0);
  if (!(delta_pp > 0.0) || !(delta_pp < 1.0)) {
    throw DomainError("enhancement_lossy: requires 0 < delta_pp < 1");
  }
  return log_gain(std::log(delta_pp), L, lambda0);
}

double enhancement_lossy_smith(double delta_pp, double L, double lambda0) {
  require_length(L, lambda0);
  if (!(delta_pp > 0.0) || !(delta_pp < 1.0)) {
    throw DomainError("enhancement_lossy_smith: requires 0 < delta_pp < 1");
  }
  return -lambda0 * std::log(delta_pp) / (kTwoPi * L);
}

double required_loss(double R_e, double L, double lambda0) {
  require_length(L, lambda0);
  if (!(R_e >= 1.0)) throw DomainError("required_loss: requires R_e >= 1");
  return std::exp(-kTwoPi * (L / lambda0) * std::sqrt(R_e * R_e - 1.0));
}

ResolutionReport resolution_lossy(double delta_pp, double L, double lambda0) {
  ResolutionReport r;
  r.enhancement = enhancement_lossy(delta_pp, L, lambda0);
  r.delta_x = kSincResolutionConstant * kPi / (kTwoPi / lambda0 * r.enhancement);
  r.mechanism = LimitingMechanism::Loss;
  r.parameter = delta_pp;
  return r;
}

ResolutionReport enhancement_time(double t, double f0, double L, double lambda0) {
  require_length(L, lambda0);
  if (!(f0 > 0.0)) throw DomainError("enhancement_time: f0 must be > 0");
  const double cycles = f0 * t;
  if (!(cycles > std::exp(1.0))) {
    throw DomainError("enhancement_time: requires f0 t > e, got " + std::to_string(cycles));
  }
  ResolutionReport r;
  r.enhancement = log_gain(std::log(cycles), L, lambda0);
  r.delta_x = kSincResolutionConstant * kPi / (kTwoPi / lambda0 * r.enhancement);
  r.mechanism = LimitingMechanism::OnTime;
  r.parameter = t;
  return r;
}

double required_time(double R_e, double f0, double L, double lambda0) {
  require_length(L, lambda0);
  if (!(f0 > 0.0)) throw DomainError("required_time: f0 must be > 0");
  if (!(R_e >= 1.0)) throw DomainError("required_time: requires R_e >= 1");
  return std::exp(kTwoPi * (L / lambda0) * std::sqrt(R_e * R_e - 1.0)) / f0;
}

}  // namespace slablens
