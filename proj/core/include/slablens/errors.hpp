#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace slablens {

/// Inputs outside an operation's domain (bad geometry, non-passive material,
/// observation point outside a formula's validity band, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical evaluation failed; carries the last estimate that was reached.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, std::complex<double> estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}

  std::complex<double> estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_; }

 private:
  std::complex<double> estimate_;
  double error_;
};

/// A spectral integrand produced a non-finite value at a specific sample.
class NumericalOverflow : public std::runtime_error {
 public:
  NumericalOverflow(const std::string& what, double sample)
      : std::runtime_error(what), sample_(sample) {}

  /// The offending sample (omega in rad/s or h in rad/m, as named in what()).
  double sample() const noexcept { return sample_; }

 private:
  double sample_;
};

}  // namespace slablens
