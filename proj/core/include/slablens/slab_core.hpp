#pragma once

// Geometry, material dispersion models and the branch-correct wavenumbers
// shared by every other part of the library.

#include <functional>
#include <variant>
#include <vector>

#include "slablens/constants.hpp"

namespace slablens {

/// Angular frequency in rad/s; always strictly positive.
class Frequency {
 public:
  explicit Frequency(double omega);
  static Frequency from_hz(double f) { return Frequency(angular_frequency(f)); }

  double omega() const noexcept { return omega_; }
  double hz() const noexcept { return omega_ / kTwoPi; }
  double k0() const noexcept { return free_space_wavenumber(omega_); }
  double wavelength() const noexcept { return kTwoPi / k0(); }

 private:
  double omega_;
};

/// Line source at z = 0, slab occupying d <= z <= d + L.
class SlabGeometry {
 public:
  SlabGeometry(double d, double L);

  double d() const noexcept { return d_; }
  double L() const noexcept { return L_; }
  double back_face() const noexcept { return d_ + L_; }
  /// The image / divergence region maps only apply when d < L.
  bool source_inside_focus() const noexcept { return d_ < L_; }

 private:
  double d_;
  double L_;
};

/// Relative permittivity and permeability at one frequency.
struct MaterialResponse {
  cplx eps_r{1.0, 0.0};
  cplx mu_r{1.0, 0.0};

  bool passive() const noexcept { return eps_r.imag() >= 0.0 && mu_r.imag() >= 0.0; }
};

/// eps_r = mu_r = -1 + i*delta_pp at every frequency.
struct ConstantLossyDNG {
  double delta_pp = 0.0;
};

/// Near-resonance model lossless at omega0:
///   eps_r = mu_r = -1 + slope*x + i*(loss_coeff*x)^2,  x = (omega - omega0)/omega0.
/// slope >= 4 is the causality / energy-conservation lower bound.
struct DispersiveDNG {
  double omega0 = 0.0;
  double slope = 4.0;
  double loss_coeff = 1000.0;
};

struct Vacuum {};

/// Tabulated response, linearly interpolated in omega (real and imaginary
/// parts separately). Rows must be strictly increasing in omega.
struct MaterialTable {
  std::vector<double> omega;
  std::vector<MaterialResponse> response;
};

/// Arbitrary user closure omega -> response.
using MaterialFunction = std::function<MaterialResponse(double omega)>;

using MaterialModel =
    std::variant<Vacuum, ConstantLossyDNG, DispersiveDNG, MaterialTable, MaterialFunction>;

/// Checks the model's parameter invariants (loss >= 0, slope >= 4, sorted table).
void validate(const MaterialModel& model);

MaterialResponse evaluate_material(const MaterialModel& model, Frequency omega);

/// Free-space and slab wavenumbers at one (omega, h) sample.
struct WaveNumbers {
  double k0 = 0.0;
  double h = 0.0;
  cplx gamma0;
  cplx gamma;
  /// gamma0 is exactly zero (h = +-k0).
  bool branch_point = false;
};

/// gamma0 = (k0^2 - h^2)^(1/2): positive real for propagating h, positive
/// imaginary for evanescent h, exactly zero at h = +-k0.
cplx gamma0(Frequency omega, double h);

/// Free-space branch point test, |h| == k0 in floating point.
bool is_branch_point(Frequency omega, double h);

/// gamma = (k^2 - h^2)^(1/2), k^2 = k0^2 eps_r mu_r, with Im(gamma) >= 0.
/// Real results take the vanishing-loss sign: negative when both eps_r and
/// mu_r have negative real parts. Throws DomainError for non-passive media.
cplx gamma_slab(Frequency omega, double h, const MaterialResponse& m);

WaveNumbers wave_numbers(Frequency omega, double h, const MaterialResponse& m);

}  // namespace slablens
