#pragma once

// Run configuration for the command-line tool: JSON schema, defaults,
// overrides and the hash stamped into every output file.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "slablens/field_eval.hpp"
#include "slablens/slab_core.hpp"
#include "slablens/time_domain.hpp"

namespace slablens::cli {

/// Schema or value error in a configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Range {
  double min = 0.0;
  double max = 0.0;
  int count = 0;
};

struct MaterialConfig {
  /// "dispersive" (near-resonance model lossless at f0), "constant"
  /// (-1 + i delta_pp) or "vacuum".
  std::string model = "dispersive";
  double slope = 4.0;
  double loss_coeff = 1000.0;
  double delta_pp = 0.0;
};

struct WindowConfig {
  /// Exactly one of the two is set; periods are carrier periods 1/f0.
  std::optional<double> Te_s = 1e-3;
  std::optional<double> Te_periods;
};

struct OmegaGridSettings {
  int n_points = 100000;
  double split_h_over_k00 = 2.5;
  double halfwidth_low = 1e-3;
  double halfwidth_high = 1e-3;
  double exponent = 4.0;
  double cluster_fraction = 0.5;
};

struct OuterIntegralSettings {
  double h_max_over_k00 = 3.5;
  int propagating_panels = 8;
  int evanescent_panels = 24;
};

struct Fig2Config {
  std::vector<double> delta_pp = {5.6e-7, 1e-10, 4.3e-14};
  Range h_over_k00{0.0, 7.0, 700};  // samples (min, max]
};

struct Fig3Config {
  std::vector<double> t_s = {1e-6, 1e-5, 1e-4};
  Range h_over_k00{0.0, 3.5, 350};  // samples [min, max)
};

struct Fig4Config {
  std::vector<double> t_s = {9e-6, 9e-5, 9e-4};
  std::vector<double> source_x_over_lambda0 = {-0.125, 0.125};
  Range x_over_lambda0{-0.5, 0.5, 201};  // samples [min, max]
};

struct ResolutionTableConfig {
  std::vector<double> delta_pp = {4.3e-14, 1e-10, 5.6e-7};
  std::vector<double> t_s = {1e-6, 1e-5, 9e-6, 9e-5, 1e-4, 9e-4};
  std::vector<double> R_e = {1.0, 2.5, 5.0};
};

struct FieldMapConfig {
  Range x_over_lambda0{-1.0, 1.0, 41};
  Range z_over_lambda0{0.05, 3.0, 60};
  /// Truncation of the lossless / constant-material spectrum.
  double h_max_over_k00 = 3.0;
  double rel_tol = 1e-8;
  /// Extra columns: |E| for -1 + i delta_pp with the matching loss-limited truncation.
  std::vector<double> sweep_delta_pp = {1e-4, 1e-6, 1e-8};
};

struct RunConfig {
  double f0_hz = 1e10;
  double L_over_lambda0 = 1.0;
  double d_over_lambda0 = 0.5;
  /// Observation line z = 2L + z_offset for figures 3 and 4.
  double z_offset_over_lambda0 = 1e-3;
  double E0 = 1.0;
  std::uint64_t seed = 1;
  MaterialConfig material;
  WindowConfig window;
  OmegaGridSettings omega_grid;
  OuterIntegralSettings outer;
  Fig2Config fig2;
  Fig3Config fig3;
  Fig4Config fig4;
  ResolutionTableConfig resolution_table;
  FieldMapConfig field_map;

  Frequency omega0() const { return Frequency::from_hz(f0_hz); }
  double lambda0() const { return wavelength(f0_hz); }
  SlabGeometry geometry() const;
  MaterialModel material_model() const;
  SineWindow window_spec() const;
  TimeDomainSpec time_domain_spec(int threads) const;
  double observation_z() const;
};

nlohmann::json to_json(const RunConfig& cfg);

/// Strict parse: unknown keys, wrong types and invalid values raise ConfigError.
RunConfig from_json(const nlohmann::json& j);

/// Checks cross-field invariants; throws ConfigError.
void validate(const RunConfig& cfg);

/// Applies "a.b.c=value" overrides to a JSON document. The value is parsed as
/// JSON when possible and taken as a string otherwise.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Reads `path` (or the defaults when empty), applies overrides, parses and validates.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides);

/// FNV-1a 64 of the canonical (sorted-key) JSON dump, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

}  // namespace slablens::cli
