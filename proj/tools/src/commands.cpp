#include "slablens/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>

#include <fmt/format.h>

#include "slablens/parallel.hpp"
#include "slablens/resolution.hpp"

namespace slablens::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class CsvFile {
 public:
  CsvFile(const fs::path& path, const std::string& command, const std::string& hash,
          const std::vector<std::string>& columns)
      : out_(path, std::ios::binary) {
    if (!out_) throw ConfigError("cannot write " + path.string());
    out_ << "# slablens " << command << " config_hash=" << hash << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
  }

  // Cells are pre-formatted strings so text and empty cells can be mixed in.
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

std::vector<double> open_left(const Range& r) {
  std::vector<double> v;
  for (int i = 1; i <= r.count; ++i) v.push_back(r.min + (r.max - r.min) * i / r.count);
  return v;
}

std::vector<double> open_right(const Range& r) {
  std::vector<double> v;
  for (int i = 0; i < r.count; ++i) v.push_back(r.min + (r.max - r.min) * i / r.count);
  return v;
}

std::vector<double> closed(const Range& r) {
  std::vector<double> v;
  for (int i = 0; i < r.count; ++i) v.push_back(r.min + (r.max - r.min) * i / (r.count - 1));
  return v;
}

fs::path prepare(const CommandContext& ctx, const char* name) {
  fs::create_directories(ctx.out_dir);
  return ctx.out_dir / name;
}

std::string fmt_num(double v) { return format_number(v); }

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.16e}", v);
}

Written cmd_fig2(const CommandContext& ctx) {
  const RunConfig& c = ctx.config;
  const Frequency w0 = c.omega0();
  const double k00 = w0.k0();
  const SlabGeometry geom = c.geometry();
  const std::string hash = config_hash(c);
  const auto hs = open_left(c.fig2.h_over_k00);

  const fs::path data = prepare(ctx, "fig2.csv");
  CsvFile csv(data, "fig2", hash, {"h_over_k00", "abs_value", "delta_pp"});
  for (double dp : c.fig2.delta_pp) {
    const MaterialResponse m = evaluate_material(ConstantLossyDNG{dp}, w0);
    for (double hk : hs) {
      const double v = std::abs(t_te_propagated(w0, hk * k00, m, geom.L(), 2.0 * geom.L()));
      csv.row({fmt_num(hk), fmt_num(v), fmt_num(dp)});
    }
  }

  const fs::path markers = prepare(ctx, "fig2_markers.csv");
  CsvFile mk(markers, "fig2", hash, {"delta_pp", "R_e"});
  for (double dp : c.fig2.delta_pp) {
    mk.row({fmt_num(dp), fmt_num(enhancement_lossy(dp, geom.L(), c.lambda0()))});
  }
  return {data, markers};
}

Written cmd_fig3(const CommandContext& ctx) {
  const RunConfig& c = ctx.config;
  const Frequency w0 = c.omega0();
  const double k00 = w0.k0();
  const SlabGeometry geom = c.geometry();
  const std::string hash = config_hash(c);
  const auto hk = open_right(c.fig3.h_over_k00);
  std::vector<double> hs;
  for (double v : hk) hs.push_back(v * k00);

  const auto table = analytic_spectrum_table(hs, c.observation_z(), c.fig3.t_s, geom,
                                             c.material_model(), c.window_spec(),
                                             c.time_domain_spec(ctx.threads));

  const fs::path data = prepare(ctx, "fig3.csv");
  CsvFile csv(data, "fig3", hash, {"h_over_k00", "normalized_abs_W", "t"});
  for (std::size_t it = 0; it < c.fig3.t_s.size(); ++it) {
    double peak = 0.0;
    for (const auto& row : table) peak = std::max(peak, std::abs(row[it]));
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const double v = peak > 0.0 ? std::abs(table[i][it]) / peak : 0.0;
      csv.row({fmt_num(hk[i]), fmt_num(v), fmt_num(c.fig3.t_s[it])});
    }
  }

  const fs::path markers = prepare(ctx, "fig3_markers.csv");
  CsvFile mk(markers, "fig3", hash, {"t", "R_e", "H_t_over_k00"});
  for (double t : c.fig3.t_s) {
    const auto rep = enhancement_time(t, c.f0_hz, geom.L(), c.lambda0());
    const auto H = h_t(t, w0, geom, ObservationRegion::Beyond2L);
    mk.row({fmt_num(t), fmt_num(rep.enhancement), fmt_num(H.value / k00)});
  }
  return {data, markers};
}

Written cmd_fig4(const CommandContext& ctx) {
  const RunConfig& c = ctx.config;
  const double lambda0 = c.lambda0();
  const SlabGeometry geom = c.geometry();
  const std::string hash = config_hash(c);
  const auto xl = closed(c.fig4.x_over_lambda0);
  std::vector<double> xs;
  for (double v : xl) xs.push_back(v * lambda0);
  std::vector<LineSource> sources;
  for (double s : c.fig4.source_x_over_lambda0) sources.push_back({s * lambda0, 1.0});

  const auto samples = time_domain_field(xs, c.observation_z(), c.fig4.t_s, sources, geom,
                                         c.material_model(), c.window_spec(),
                                         c.time_domain_spec(ctx.threads));

  const fs::path data = prepare(ctx, "fig4.csv");
  CsvFile csv(data, "fig4", hash, {"x_over_lambda0", "normalized_abs_E", "t"});
  for (std::size_t it = 0; it < c.fig4.t_s.size(); ++it) {
    double peak = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      peak = std::max(peak, std::abs(samples[it * xs.size() + i].value));
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double v = peak > 0.0 ? std::abs(samples[it * xs.size() + i].value) / peak : 0.0;
      csv.row({fmt_num(xl[i]), fmt_num(v), fmt_num(c.fig4.t_s[it])});
    }
  }

  const fs::path markers = prepare(ctx, "fig4_markers.csv");
  CsvFile mk(markers, "fig4", hash, {"t", "R_e", "delta_x_over_lambda0"});
  for (double t : c.fig4.t_s) {
    const auto rep = enhancement_time(t, c.f0_hz, geom.L(), lambda0);
    mk.row({fmt_num(t), fmt_num(rep.enhancement), fmt_num(rep.delta_x / lambda0)});
  }
  return {data, markers};
}

Written cmd_resolution_table(const CommandContext& ctx) {
  const RunConfig& c = ctx.config;
  const double lambda0 = c.lambda0();
  const double L = c.geometry().L();

  json lossy = json::array();
  for (double dp : c.resolution_table.delta_pp) {
    const auto rep = resolution_lossy(dp, L, lambda0);
    lossy.push_back({{"delta_pp", dp},
                     {"R_e", rep.enhancement},
                     {"R_e_smith", enhancement_lossy_smith(dp, L, lambda0)},
                     {"delta_x_over_lambda0", rep.delta_x / lambda0}});
  }
  json timed = json::array();
  for (double t : c.resolution_table.t_s) {
    const auto rep = enhancement_time(t, c.f0_hz, L, lambda0);
    const double dual = 1.0 / (c.f0_hz * t);
    timed.push_back({{"t_s", t},
                     {"R_e", rep.enhancement},
                     {"delta_x_over_lambda0", rep.delta_x / lambda0},
                     {"dual_delta_pp", dual},
                     {"R_e_lossy_dual", enhancement_lossy(dual, L, lambda0)}});
  }
  json inverse = json::array();
  for (double re : c.resolution_table.R_e) {
    inverse.push_back({{"R_e", re},
                       {"required_loss", required_loss(re, L, lambda0)},
                       {"required_time_s", required_time(re, c.f0_hz, L, lambda0)}});
  }
  const json doc = {{"config_hash", config_hash(c)},
                    {"loss_limited", lossy},
                    {"time_limited", timed},
                    {"inverse", inverse}};

  const fs::path path = prepare(ctx, "resolution_table.json");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << doc.dump(2) << "\n";
  return {path};
}

Written cmd_field_map(const CommandContext& ctx) {
  const RunConfig& c = ctx.config;
  const Frequency w0 = c.omega0();
  const double k00 = w0.k0();
  const double lambda0 = c.lambda0();
  const SlabGeometry geom = c.geometry();
  const MaterialModel model = c.material_model();
  const auto& f = c.field_map;

  const auto xl = closed(f.x_over_lambda0);
  const auto zl = closed(f.z_over_lambda0);
  QuadratureSpec spec;
  spec.h_max = f.h_max_over_k00 * k00;
  spec.rel_tol = f.rel_tol;

  const bool vacuum = c.material.model == "vacuum";
  const bool lossless = !vacuum && (c.material.model == "dispersive" || c.material.delta_pp == 0.0);

  std::vector<std::string> columns = {"x_over_lambda0", "z_over_lambda0", "region",  "abs_E",
                                      "re_E",           "im_E",           "reference", "abs_reference"};
  for (double dp : f.sweep_delta_pp) columns.push_back(fmt::format("abs_E_delta_{:.3g}", dp));

  const std::size_t nx = xl.size();
  std::vector<std::vector<std::string>> rows(zl.size() * nx);
  parallel_for(rows.size(), ctx.threads, [&](std::size_t idx) {
    const double x = xl[idx % nx] * lambda0;
    const double z = zl[idx / nx] * lambda0;
    std::string tag = "none";
    if (geom.source_inside_focus()) tag = to_string(region_map(geom, z));

    const FieldValue e = evaluate_field(w0, x, z, geom, model, spec, c.E0);

    // Closed-form counterpart where one exists under the same truncation.
    std::string ref_kind;
    std::optional<double> shift;
    if (vacuum) {
      ref_kind = "incident";
      shift = z;
    } else if (lossless && geom.source_inside_focus()) {
      if (z <= geom.d()) {
        ref_kind = "incident";
        shift = z;
      } else if (z < 2.0 * geom.d()) {
        ref_kind = "mirror_image";
        shift = 2.0 * geom.d() - z;
      } else if (z >= 2.0 * geom.L()) {
        ref_kind = "perfect_image";
        shift = z - 2.0 * geom.L();
      }
    }
    std::string ref_abs;
    if (shift) ref_abs = fmt_num(std::abs(translated_field(w0, x, *shift, c.E0, *spec.h_max, spec).value));

    std::vector<std::string> row = {fmt_num(xl[idx % nx]), fmt_num(zl[idx / nx]), tag,
                                    fmt_num(std::abs(e.value)), fmt_num(e.value.real()),
                                    fmt_num(e.value.imag()), ref_kind, ref_abs};
    for (double dp : f.sweep_delta_pp) {
      QuadratureSpec s = spec;
      s.h_max = h_delta(dp, geom, w0, observation_region(geom, z)).value;
      row.push_back(fmt_num(std::abs(evaluate_field(w0, x, z, geom, ConstantLossyDNG{dp}, s, c.E0).value)));
    }
    rows[idx] = std::move(row);
  });

  const fs::path path = prepare(ctx, "field_map.csv");
  CsvFile csv(path, "field-map", config_hash(c), columns);
  for (const auto& r : rows) csv.row(r);
  return {path};
}

Written cmd_validate_config(const CommandContext& ctx) {
  const fs::path path = prepare(ctx, "config.json");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  json doc = to_json(ctx.config);
  doc["config_hash"] = config_hash(ctx.config);
  out << doc.dump(2) << "\n";
  return {path};
}

}  // namespace slablens::cli
