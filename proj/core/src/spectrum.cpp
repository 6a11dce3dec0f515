#include "slablens/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slablens/errors.hpp"

namespace slablens {

namespace {

// Relative nudge used when (omega, h) sits exactly on a point where the
// closed form degenerates to 0/0 (simultaneous free-space and slab branch
// points of the -1 slab). The coefficient is continuous there.
constexpr double kDegenerateNudge = 1e-12;

// T_TE e^{-i(g - g0)L} = numerator_factor e^{shift} / denominator.
struct Transmission {
  cplx numerator_factor;  // 4ab
  cplx denominator;       // (a + b)^2 - (a - b)^2 e^{2igL}, or that times e^{-2igL}
  cplx shift;             // 0, or -2igL with the scaled denominator
  WaveNumbers wn;
};

Transmission transmission_parts(Frequency omega, double h, const MaterialResponse& m, double L) {
  Transmission tr;
  tr.wn = wave_numbers(omega, h, m);
  const cplx a = m.eps_r * tr.wn.gamma0;
  const cplx b = tr.wn.gamma;
  const cplx sum = a + b;
  const cplx diff = a - b;
  tr.numerator_factor = 4.0 * a * b;
  // When (a - b)^2 e^{2igL} dominates, divide through by e^{2igL}; otherwise
  // the -1 slab (a + b = 0) underflows the denominator for large |h|.
  const double log_sum2 = sum == cplx{} ? -INFINITY : 2.0 * std::log(std::abs(sum));
  const double log_diff2p =
      diff == cplx{} ? -INFINITY : 2.0 * std::log(std::abs(diff)) - 2.0 * b.imag() * L;
  if (log_sum2 < log_diff2p) {
    const cplx scaled = sum == cplx{} ? cplx{} : std::exp(2.0 * std::log(sum) - 2.0 * kI * b * L);
    tr.denominator = scaled - diff * diff;
    tr.shift = -2.0 * kI * b * L;
  } else {
    tr.denominator = sum * sum - diff * diff * std::exp(2.0 * kI * b * L);
  }
  return tr;
}

Transmission checked_parts(Frequency omega, double h, const MaterialResponse& m, double L) {
  Transmission tr = transmission_parts(omega, h, m, L);
  if (tr.denominator == cplx{}) {
    const double k0 = omega.k0();
    const double nudged = h + kDegenerateNudge * std::max(std::abs(h), k0);
    tr = transmission_parts(omega, nudged, m, L);
  }
  return tr;
}

}  // namespace

ObservationRegion observation_region(const SlabGeometry& geom, double z) {
  return z >= 2.0 * geom.L() ? ObservationRegion::Beyond2L : ObservationRegion::BetweenFaceAnd2L;
}

cplx t_te(Frequency omega, double h, const MaterialResponse& m, double L) {
  const Transmission tr = checked_parts(omega, h, m, L);
  const cplx phase = kI * (tr.wn.gamma - tr.wn.gamma0) * L + tr.shift;
  return tr.numerator_factor * std::exp(phase) / tr.denominator;
}

cplx t_te_propagated(Frequency omega, double h, const MaterialResponse& m, double L, double z) {
  const Transmission tr = checked_parts(omega, h, m, L);
  const cplx phase = kI * ((tr.wn.gamma - tr.wn.gamma0) * L + tr.wn.gamma0 * z) + tr.shift;
  return tr.numerator_factor * std::exp(phase) / tr.denominator;
}

SpectralCoefficients layer_spectra(Frequency omega, double h, cplx t0_in,
                                   const SlabGeometry& geom, const MaterialResponse& m) {
  if (!std::isfinite(t0_in.real()) || !std::isfinite(t0_in.imag())) {
    throw DomainError("layer_spectra: incident amplitude must be finite");
  }
  double hh = h;
  Transmission tr = checked_parts(omega, hh, m, geom.L());
  if (tr.wn.gamma0 == cplx{} || tr.wn.gamma == cplx{}) {
    hh = h + kDegenerateNudge * std::max(std::abs(h), omega.k0());
    tr = transmission_parts(omega, hh, m, geom.L());
  }
  const cplx g0 = tr.wn.gamma0;
  const cplx g = tr.wn.gamma;
  const double d = geom.d();
  const double back = geom.back_face();

  SpectralCoefficients c;
  c.t0 = t0_in;
  c.t = t0_in * tr.numerator_factor * std::exp(kI * (g - g0) * geom.L() + tr.shift) /
        tr.denominator;
  // eps0 g / (g0 eps)
  const cplx ratio = g / (m.eps_r * g0);
  c.ts = 0.5 * c.t * (1.0 + ratio) * std::exp(kI * (g0 - g) * back);
  c.rs = 0.5 * c.t * (1.0 - ratio) * std::exp(kI * (g0 + g) * back);
  c.r0 = std::exp(kI * g0 * d) *
         (c.ts * std::exp(kI * g * d) + c.rs * std::exp(-kI * g * d) - t0_in * std::exp(kI * g0 * d));
  return c;
}

cplx field_spectrum(Frequency omega, double h, cplx t0_in, const SlabGeometry& geom,
                    const MaterialResponse& m, double z) {
  Transmission tr = checked_parts(omega, h, m, geom.L());
  if (tr.wn.gamma0 == cplx{} || tr.wn.gamma == cplx{}) {
    tr = transmission_parts(omega, h + kDegenerateNudge * std::max(std::abs(h), omega.k0()), m,
                            geom.L());
  }
  const cplx g0 = tr.wn.gamma0;
  const cplx g = tr.wn.gamma;
  const double d = geom.d();
  const double L = geom.L();
  const cplx scale = t0_in * tr.numerator_factor / tr.denominator;

  const cplx sh = tr.shift;
  if (z >= geom.back_face()) return scale * std::exp(kI * ((g - g0) * L + g0 * z) + sh);

  const cplx ratio = g / (m.eps_r * g0);
  if (z >= d) {
    return 0.5 * scale *
           ((1.0 + ratio) * std::exp(kI * (g0 * d + g * (z - d)) + sh) +
            (1.0 - ratio) * std::exp(kI * (g0 * d + g * (2.0 * L + d - z)) + sh));
  }
  const cplx slab_at_front = 0.5 * scale *
                             ((1.0 + ratio) * std::exp(kI * g0 * d + sh) +
                              (1.0 - ratio) * std::exp(kI * (g0 * d + 2.0 * g * L) + sh));
  return t0_in * std::exp(kI * g0 * z) + slab_at_front * std::exp(kI * g0 * (d - z)) -
         t0_in * std::exp(kI * g0 * (2.0 * d - z));
}

double line_source_spectrum(double E0, Frequency omega) { return E0 / omega.k0(); }

double boundary_residual(Frequency omega, double h, const SpectralCoefficients& c,
                         const SlabGeometry& geom, const MaterialResponse& m) {
  const cplx g0 = gamma0(omega, h);
  const cplx g = gamma_slab(omega, h, m);
  const double d = geom.d();
  const double back = geom.back_face();

  auto mismatch = [](std::initializer_list<cplx> lhs, std::initializer_list<cplx> rhs) {
    cplx l{}, r{};
    double scale = 0.0;
    for (cplx v : lhs) {
      l += v;
      scale = std::max(scale, std::abs(v));
    }
    for (cplx v : rhs) {
      r += v;
      scale = std::max(scale, std::abs(v));
    }
    return scale == 0.0 ? 0.0 : std::abs(l - r) / scale;
  };

  // Front face z = d.
  const cplx inc_d = c.t0 * std::exp(kI * g0 * d);
  const cplx ref_d = c.r0 * std::exp(-kI * g0 * d);
  const cplx fwd_d = c.ts * std::exp(kI * g * d);
  const cplx bwd_d = c.rs * std::exp(-kI * g * d);
  // Back face z = d + L.
  const cplx fwd_b = c.ts * std::exp(kI * g * back);
  const cplx bwd_b = c.rs * std::exp(-kI * g * back);
  const cplx out_b = c.t * std::exp(kI * g0 * back);

  const cplx slab_h = m.eps_r * g0;
  const double e_front = mismatch({inc_d, ref_d}, {fwd_d, bwd_d});
  const double h_front = mismatch({g * inc_d, -g * ref_d}, {slab_h * fwd_d, -slab_h * bwd_d});
  const double e_back = mismatch({fwd_b, bwd_b}, {out_b});
  const double h_back = mismatch({slab_h * fwd_b, -slab_h * bwd_b}, {g * out_b});
  return std::max({e_front, h_front, e_back, h_back});
}

TruncationWavenumber h_delta(double delta_pp, const SlabGeometry& geom, Frequency omega0,
                             ObservationRegion region) {
  if (!(delta_pp > 0.0) || !(delta_pp < 1.0)) {
    throw DomainError("h_delta: requires 0 < delta_pp < 1, got " + std::to_string(delta_pp));
  }
  const double k00 = omega0.k0();
  const double decay = region == ObservationRegion::Beyond2L
                           ? std::log(delta_pp) / geom.L()
                           : 2.0 * std::log(delta_pp) / geom.back_face();
  return {std::sqrt(decay * decay + k00 * k00), region, LossLimited{delta_pp}};
}

SpectralCoefficients lossy_evanescent_spectra(Frequency omega, double h, cplx t0_in,
                                              double delta_pp, const SlabGeometry& geom) {
  const double k0 = omega.k0();
  if (!(h * h > k0 * k0)) throw DomainError("lossy_evanescent_spectra: h must be evanescent");
  if (!(delta_pp > 0.0) || !(delta_pp < 1.0)) {
    throw DomainError("lossy_evanescent_spectra: requires 0 < delta_pp < 1");
  }
  const double decay = std::sqrt(h * h - k0 * k0);  // |gamma0|
  const double cutoff = -2.0 * std::log(delta_pp) / geom.back_face();
  const double L = geom.L();
  const double d = geom.d();

  SpectralCoefficients c;
  c.t0 = t0_in;
  c.t = t0_in * std::exp(2.0 * decay * L);
  c.ts = -kI * t0_in * std::exp((2.0 * decay - cutoff) * L);
  c.rs = t0_in * std::exp(-2.0 * decay * d);
  c.r0 = -kI * t0_in * std::exp(2.0 * decay * (L - d) - cutoff * L);
  return c;
}

double asymptotic_divergent_field(double x, double z, double delta_pp, double E0,
                                  Frequency omega0, double L) {
  if (!(delta_pp > 0.0) || !(delta_pp < 1.0)) {
    throw DomainError("asymptotic_divergent_field: requires 0 < delta_pp < 1");
  }
  const double lambda0 = omega0.wavelength();
  if (!(z > L) || z > 2.0 * L - lambda0 / 20.0) {
    throw DomainError("asymptotic_divergent_field: z must lie in (L, 2L - lambda0/20]");
  }
  const double k00 = omega0.k0();
  const double gap = 2.0 * L - z;
  const double rho = std::hypot(x, gap);
  const double growth = std::pow(delta_pp, z / L - 2.0);
  return E0 / (kPi * k00 * rho) * growth * std::cos(x / L * std::log(delta_pp) + std::atan2(x, gap));
}

}  // namespace slablens
