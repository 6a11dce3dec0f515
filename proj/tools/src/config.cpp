#include "slablens/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

namespace slablens::cli {

using nlohmann::json;

namespace {

// Reads members of one JSON object and rejects anything it did not consume.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + " must be an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception&) {
      throw ConfigError(fmt::format("{}.{} has the wrong type", path_, key));
    }
  }

  void get_optional(const char* key, std::optional<double>& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) {
      out.reset();
      return;
    }
    if (!it->is_number()) throw ConfigError(fmt::format("{}.{} must be a number", path_, key));
    out = it->get<double>();
  }

  template <class Fn>
  void object(const char* key, Fn&& fn) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    ObjectReader sub(*it, path_ + "." + key);
    fn(sub);
    sub.finish();
  }

  bool has(const char* key) const { return j_.contains(key); }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(fmt::format("unknown key {}.{}", path_, it.key()));
    }
  }

 private:
  std::string where() const { return path_; }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_range(ObjectReader& r, Range& range) {
  r.get("min", range.min);
  r.get("max", range.max);
  r.get("count", range.count);
}

json range_json(const Range& r) { return {{"min", r.min}, {"max", r.max}, {"count", r.count}}; }

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void require_positive_list(const std::vector<double>& v, const std::string& name) {
  require(!v.empty(), name + " must not be empty");
  for (double x : v) require(std::isfinite(x) && x > 0.0, name + " entries must be > 0");
}

void require_range(const Range& r, const std::string& name, int min_count) {
  require(std::isfinite(r.min) && std::isfinite(r.max) && r.max > r.min,
          name + ": need finite min < max");
  require(r.count >= min_count, fmt::format("{}: count must be >= {}", name, min_count));
}

}  // namespace

SlabGeometry RunConfig::geometry() const {
  return SlabGeometry(d_over_lambda0 * lambda0(), L_over_lambda0 * lambda0());
}

MaterialModel RunConfig::material_model() const {
  if (material.model == "vacuum") return Vacuum{};
  if (material.model == "constant") return ConstantLossyDNG{material.delta_pp};
  return DispersiveDNG{omega0().omega(), material.slope, material.loss_coeff};
}

SineWindow RunConfig::window_spec() const {
  const double Te = window.Te_s ? *window.Te_s : *window.Te_periods / f0_hz;
  return SineWindow{Te, omega0().omega()};
}

TimeDomainSpec RunConfig::time_domain_spec(int threads) const {
  TimeDomainSpec s;
  s.grid.n_points = omega_grid.n_points;
  s.grid.split_h_over_k00 = omega_grid.split_h_over_k00;
  s.grid.halfwidth_low = omega_grid.halfwidth_low;
  s.grid.halfwidth_high = omega_grid.halfwidth_high;
  s.grid.exponent = omega_grid.exponent;
  s.grid.cluster_fraction = omega_grid.cluster_fraction;
  s.h_max_over_k00 = outer.h_max_over_k00;
  s.propagating_panels = outer.propagating_panels;
  s.evanescent_panels = outer.evanescent_panels;
  s.threads = threads;
  s.E0 = E0;
  return s;
}

double RunConfig::observation_z() const {
  return 2.0 * L_over_lambda0 * lambda0() + z_offset_over_lambda0 * lambda0();
}

json to_json(const RunConfig& c) {
  json window = json::object();
  if (c.window.Te_s) window["Te_s"] = *c.window.Te_s;
  if (c.window.Te_periods) window["Te_periods"] = *c.window.Te_periods;
  return {
      {"f0_hz", c.f0_hz},
      {"L_over_lambda0", c.L_over_lambda0},
      {"d_over_lambda0", c.d_over_lambda0},
      {"z_offset_over_lambda0", c.z_offset_over_lambda0},
      {"E0", c.E0},
      {"seed", c.seed},
      {"material",
       {{"model", c.material.model},
        {"slope", c.material.slope},
        {"loss_coeff", c.material.loss_coeff},
        {"delta_pp", c.material.delta_pp}}},
      {"window", window},
      {"omega_grid",
       {{"n_points", c.omega_grid.n_points},
        {"split_h_over_k00", c.omega_grid.split_h_over_k00},
        {"halfwidth_low", c.omega_grid.halfwidth_low},
        {"halfwidth_high", c.omega_grid.halfwidth_high},
        {"exponent", c.omega_grid.exponent},
        {"cluster_fraction", c.omega_grid.cluster_fraction}}},
      {"outer",
       {{"h_max_over_k00", c.outer.h_max_over_k00},
        {"propagating_panels", c.outer.propagating_panels},
        {"evanescent_panels", c.outer.evanescent_panels}}},
      {"fig2", {{"delta_pp", c.fig2.delta_pp}, {"h_over_k00", range_json(c.fig2.h_over_k00)}}},
      {"fig3", {{"t_s", c.fig3.t_s}, {"h_over_k00", range_json(c.fig3.h_over_k00)}}},
      {"fig4",
       {{"t_s", c.fig4.t_s},
        {"source_x_over_lambda0", c.fig4.source_x_over_lambda0},
        {"x_over_lambda0", range_json(c.fig4.x_over_lambda0)}}},
      {"resolution_table",
       {{"delta_pp", c.resolution_table.delta_pp},
        {"t_s", c.resolution_table.t_s},
        {"R_e", c.resolution_table.R_e}}},
      {"field_map",
       {{"x_over_lambda0", range_json(c.field_map.x_over_lambda0)},
        {"z_over_lambda0", range_json(c.field_map.z_over_lambda0)},
        {"h_max_over_k00", c.field_map.h_max_over_k00},
        {"rel_tol", c.field_map.rel_tol},
        {"sweep_delta_pp", c.field_map.sweep_delta_pp}}},
  };
}

RunConfig from_json(const json& j) {
  RunConfig c;
  ObjectReader r(j, "config");
  r.get("f0_hz", c.f0_hz);
  r.get("L_over_lambda0", c.L_over_lambda0);
  r.get("d_over_lambda0", c.d_over_lambda0);
  r.get("z_offset_over_lambda0", c.z_offset_over_lambda0);
  r.get("E0", c.E0);
  r.get("seed", c.seed);
  r.object("material", [&](ObjectReader& m) {
    m.get("model", c.material.model);
    m.get("slope", c.material.slope);
    m.get("loss_coeff", c.material.loss_coeff);
    m.get("delta_pp", c.material.delta_pp);
  });
  r.object("window", [&](ObjectReader& w) {
    if (!w.has("Te_s") && !w.has("Te_periods")) {
      throw ConfigError("config.window needs Te_s or Te_periods");
    }
    w.get_optional("Te_s", c.window.Te_s);
    w.get_optional("Te_periods", c.window.Te_periods);
  });
  r.object("omega_grid", [&](ObjectReader& g) {
    g.get("n_points", c.omega_grid.n_points);
    g.get("split_h_over_k00", c.omega_grid.split_h_over_k00);
    g.get("halfwidth_low", c.omega_grid.halfwidth_low);
    g.get("halfwidth_high", c.omega_grid.halfwidth_high);
    g.get("exponent", c.omega_grid.exponent);
    g.get("cluster_fraction", c.omega_grid.cluster_fraction);
  });
  r.object("outer", [&](ObjectReader& o) {
    o.get("h_max_over_k00", c.outer.h_max_over_k00);
    o.get("propagating_panels", c.outer.propagating_panels);
    o.get("evanescent_panels", c.outer.evanescent_panels);
  });
  r.object("fig2", [&](ObjectReader& f) {
    f.get("delta_pp", c.fig2.delta_pp);
    f.object("h_over_k00", [&](ObjectReader& g) { read_range(g, c.fig2.h_over_k00); });
  });
  r.object("fig3", [&](ObjectReader& f) {
    f.get("t_s", c.fig3.t_s);
    f.object("h_over_k00", [&](ObjectReader& g) { read_range(g, c.fig3.h_over_k00); });
  });
  r.object("fig4", [&](ObjectReader& f) {
    f.get("t_s", c.fig4.t_s);
    f.get("source_x_over_lambda0", c.fig4.source_x_over_lambda0);
    f.object("x_over_lambda0", [&](ObjectReader& g) { read_range(g, c.fig4.x_over_lambda0); });
  });
  r.object("resolution_table", [&](ObjectReader& t) {
    t.get("delta_pp", c.resolution_table.delta_pp);
    t.get("t_s", c.resolution_table.t_s);
    t.get("R_e", c.resolution_table.R_e);
  });
  r.object("field_map", [&](ObjectReader& f) {
    f.object("x_over_lambda0", [&](ObjectReader& g) { read_range(g, c.field_map.x_over_lambda0); });
    f.object("z_over_lambda0", [&](ObjectReader& g) { read_range(g, c.field_map.z_over_lambda0); });
    f.get("h_max_over_k00", c.field_map.h_max_over_k00);
    f.get("rel_tol", c.field_map.rel_tol);
    f.get("sweep_delta_pp", c.field_map.sweep_delta_pp);
  });
  r.finish();
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  require(std::isfinite(c.f0_hz) && c.f0_hz > 0.0, "f0_hz must be > 0");
  require(c.L_over_lambda0 > 0.0 && c.d_over_lambda0 > 0.0, "L and d must be > 0");
  require(c.z_offset_over_lambda0 > 0.0, "z_offset_over_lambda0 must be > 0");
  require(c.E0 > 0.0, "E0 must be > 0");

  const auto& m = c.material;
  require(m.model == "dispersive" || m.model == "constant" || m.model == "vacuum",
          "material.model must be dispersive, constant or vacuum");
  require(m.slope >= 4.0, "material.slope must be >= 4");
  require(m.loss_coeff >= 0.0, "material.loss_coeff must be >= 0");
  require(m.delta_pp >= 0.0 && m.delta_pp < 1.0, "material.delta_pp must lie in [0, 1)");

  require(c.window.Te_s.has_value() != c.window.Te_periods.has_value(),
          "window: set exactly one of Te_s and Te_periods");
  require(c.window_spec().Te > 0.0, "window: Te must be > 0");

  const auto& g = c.omega_grid;
  require(g.n_points >= 5, "omega_grid.n_points must be >= 5");
  require(g.halfwidth_low > 0.0 && g.halfwidth_low < 1.0 && g.halfwidth_high > 0.0 &&
              g.halfwidth_high < 1.0,
          "omega_grid halfwidths must lie in (0, 1)");
  require(g.exponent >= 0.0, "omega_grid.exponent must be >= 0");
  require(g.cluster_fraction > 0.0 && g.cluster_fraction <= 1.0,
          "omega_grid.cluster_fraction must lie in (0, 1]");
  require(c.outer.h_max_over_k00 > 1.0 && c.outer.h_max_over_k00 <= 3.5,
          "outer.h_max_over_k00 must lie in (1, 3.5]");
  require(c.outer.propagating_panels >= 1 && c.outer.evanescent_panels >= 1,
          "outer panel counts must be >= 1");

  for (double dp : c.fig2.delta_pp) {
    require(dp > 0.0 && dp < 1.0, "fig2.delta_pp entries must lie in (0, 1)");
  }
  require(!c.fig2.delta_pp.empty(), "fig2.delta_pp must not be empty");
  require_range(c.fig2.h_over_k00, "fig2.h_over_k00", 1);
  require(c.fig2.h_over_k00.min >= 0.0, "fig2.h_over_k00.min must be >= 0");

  require_positive_list(c.fig3.t_s, "fig3.t_s");
  require_range(c.fig3.h_over_k00, "fig3.h_over_k00", 1);
  require(c.fig3.h_over_k00.min >= 0.0 && c.fig3.h_over_k00.max <= 3.5,
          "fig3.h_over_k00 must lie in [0, 3.5]");

  require_positive_list(c.fig4.t_s, "fig4.t_s");
  require(!c.fig4.source_x_over_lambda0.empty(), "fig4.source_x_over_lambda0 must not be empty");
  require_range(c.fig4.x_over_lambda0, "fig4.x_over_lambda0", 2);

  for (double dp : c.resolution_table.delta_pp) {
    require(dp > 0.0 && dp < 1.0, "resolution_table.delta_pp entries must lie in (0, 1)");
  }
  require_positive_list(c.resolution_table.t_s, "resolution_table.t_s");
  for (double re : c.resolution_table.R_e) require(re >= 1.0, "resolution_table.R_e entries must be >= 1");

  const auto& f = c.field_map;
  require_range(f.x_over_lambda0, "field_map.x_over_lambda0", 2);
  require_range(f.z_over_lambda0, "field_map.z_over_lambda0", 2);
  require(f.z_over_lambda0.min > 0.0, "field_map.z_over_lambda0.min must be > 0");
  require(f.h_max_over_k00 > 1.0, "field_map.h_max_over_k00 must be > 1");
  require(f.rel_tol > 0.0 && f.rel_tol <= 1e-2, "field_map.rel_tol must lie in (0, 1e-2]");
  for (double dp : f.sweep_delta_pp) {
    require(dp > 0.0 && dp < 1.0, "field_map.sweep_delta_pp entries must lie in (0, 1)");
  }
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override must look like key=value: " + assignment);
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? dot : dot - start);
    if (part.empty()) throw ConfigError("override has an empty key segment: " + key);
    if (!node->is_object()) throw ConfigError("override path is not an object: " + key);
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  json doc = json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw ConfigError("config file is not valid JSON: " + path);
  }
  for (const auto& o : overrides) {
    // A window override replaces the other duration key.
    if (o.rfind("window.Te_s=", 0) == 0 && doc.contains("window")) doc["window"].erase("Te_periods");
    if (o.rfind("window.Te_periods=", 0) == 0) {
      if (!doc.contains("window")) doc["window"] = json::object();
      doc["window"].erase("Te_s");
    }
    apply_override(doc, o);
  }
  return from_json(doc);
}

std::string config_hash(const RunConfig& cfg) {
  const std::string text = to_json(cfg).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace slablens::cli
