#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "slablens/cli/commands.hpp"
#include "slablens/cli/config.hpp"
#include "slablens/resolution.hpp"

using namespace slablens;
using namespace slablens::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("slablens_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(SLABLENS_TOOL) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Small settings so the time-domain commands finish in a second or two.
CommandContext quick_context(const fs::path& out) {
  CommandContext ctx;
  ctx.out_dir = out;
  ctx.threads = 1;
  auto& c = ctx.config;
  c.omega_grid.n_points = 401;
  c.outer.propagating_panels = 1;
  c.outer.evanescent_panels = 2;
  c.fig2.h_over_k00 = {0.0, 7.0, 70};
  c.fig3.h_over_k00 = {0.0, 3.5, 14};
  c.fig4.x_over_lambda0 = {-0.5, 0.5, 11};
  c.field_map.x_over_lambda0 = {-0.5, 0.5, 3};
  c.field_map.z_over_lambda0 = {0.25, 2.5, 4};
  c.field_map.sweep_delta_pp = {1e-4};
  c.field_map.rel_tol = 1e-6;
  return ctx;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  for (std::string line; std::getline(ss, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("defaults round-trip through JSON and match the shipped config") {
  const RunConfig defaults;
  const RunConfig again = from_json(to_json(defaults));
  CHECK(config_hash(again) == config_hash(defaults));
  CHECK(config_hash(defaults).size() == 16);

  const RunConfig shipped = load_config(std::string(SLABLENS_CONFIG_DIR) + "/defaults.json", {});
  CHECK(config_hash(shipped) == config_hash(defaults));
  CHECK(shipped.f0_hz == 1e10);
  CHECK(shipped.window_spec().commensurate());
  CHECK(shipped.observation_z() == doctest::Approx(2.001 * shipped.lambda0()).epsilon(1e-15));
}

TEST_CASE("schema rejects unknown keys, wrong types and bad values") {
  json j = to_json(RunConfig{});
  SUBCASE("unknown top-level key") { j["f1_hz"] = 1.0; }
  SUBCASE("unknown nested key") { j["omega_grid"]["points"] = 10; }
  SUBCASE("wrong type") { j["f0_hz"] = "ten GHz"; }
  SUBCASE("wrong nested type") { j["fig3"]["t_s"] = 1e-5; }
  SUBCASE("negative frequency") { j["f0_hz"] = -1.0; }
  SUBCASE("slope below the causal bound") { j["material"]["slope"] = 3.0; }
  SUBCASE("unknown material") { j["material"]["model"] = "silver"; }
  SUBCASE("both window durations") { j["window"]["Te_periods"] = 1e7; }
  SUBCASE("no window duration") { j["window"] = json::object(); }
  SUBCASE("h range beyond the grid calibration") { j["outer"]["h_max_over_k00"] = 4.0; }
  SUBCASE("empty list") { j["fig4"]["t_s"] = json::array(); }
  CHECK_THROWS_AS(from_json(j), ConfigError);
}

TEST_CASE("overrides") {
  json doc = json::object();
  apply_override(doc, "material.slope=6");
  apply_override(doc, "material.model=constant");
  apply_override(doc, "fig3.t_s=[1e-6,2e-6]");
  CHECK(doc["material"]["slope"] == 6);
  CHECK(doc["material"]["model"] == "constant");
  CHECK(doc["fig3"]["t_s"].size() == 2);
  CHECK_THROWS_AS(apply_override(doc, "novalue"), ConfigError);
  CHECK_THROWS_AS(apply_override(doc, "a..b=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(doc, "material.slope.x=1"), ConfigError);

  const RunConfig c = load_config("", {"window.Te_periods=1000", "material.delta_pp=1e-3"});
  CHECK_FALSE(c.window.Te_s.has_value());
  CHECK(c.window_spec().Te == doctest::Approx(1e-7).epsilon(1e-15));
  CHECK(c.material.delta_pp == 1e-3);
  CHECK(config_hash(c) != config_hash(RunConfig{}));
  CHECK_THROWS_AS(load_config("", {"omega_grid.n_points=abc"}), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json", {}), ConfigError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(1.0) == "1.0000000000000000e+00");
  CHECK(format_number(-2.5e-300) == "-2.5000000000000000e-300");
  CHECK(format_number(NAN) == "nan");
  CHECK(std::stod(format_number(0.1)) == 0.1);
}

TEST_CASE("fig2 output: header, columns and values") {
  const auto out = scratch_dir("fig2");
  const auto ctx = quick_context(out);
  const auto written = cmd_fig2(ctx);
  REQUIRE(written.size() == 2);
  const auto data = lines(slurp(out / "fig2.csv"));
  CHECK(data[0] == "# slablens fig2 config_hash=" + config_hash(ctx.config));
  CHECK(data[1] == "h_over_k00,abs_value,delta_pp");
  CHECK(data.size() == 2 + 3 * 70);
  // Propagating rows of a nearly lossless slab transmit at unit magnitude.
  const auto first = data[2];
  const double abs_value = std::stod(first.substr(first.find(',') + 1));
  CHECK(abs_value == doctest::Approx(1.0).epsilon(1e-5));

  const auto markers = lines(slurp(out / "fig2_markers.csv"));
  CHECK(markers[1] == "delta_pp,R_e");
  const double re = std::stod(markers[2].substr(markers[2].find(',') + 1));
  CHECK(re == doctest::Approx(enhancement_lossy(5.6e-7, ctx.config.lambda0(), ctx.config.lambda0())));
}

TEST_CASE("fig3, fig4 and field-map run on reduced grids") {
  const auto out = scratch_dir("small");
  const auto ctx = quick_context(out);
  cmd_fig3(ctx);
  const auto f3 = lines(slurp(out / "fig3.csv"));
  CHECK(f3[1] == "h_over_k00,normalized_abs_W,t");
  CHECK(f3.size() == 2 + 3 * 14);
  double top = 0.0;
  for (std::size_t i = 2; i < f3.size(); ++i) {
    const auto c1 = f3[i].find(',');
    const double v = std::stod(f3[i].substr(c1 + 1));
    CHECK(v <= 1.0);
    top = std::max(top, v);
  }
  CHECK(top == 1.0);

  cmd_fig4(ctx);
  CHECK(lines(slurp(out / "fig4.csv")).size() == 2 + 3 * 11);
  CHECK(lines(slurp(out / "fig4_markers.csv"))[1] == "t,R_e,delta_x_over_lambda0");

  cmd_field_map(ctx);
  const auto fm = lines(slurp(out / "field_map.csv"));
  CHECK(fm[1] ==
        "x_over_lambda0,z_over_lambda0,region,abs_E,re_E,im_E,reference,abs_reference,abs_E_delta_0.0001");
  CHECK(fm.size() == 2 + 12);
  // Below the front face the lossless field is the incident one.
  std::vector<std::string> cells;
  std::istringstream row(fm[2]);
  for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
  REQUIRE(cells.size() == 9);
  CHECK(cells[2] == "incident");
  CHECK(cells[6] == "incident");
  CHECK(std::stod(cells[3]) == doctest::Approx(std::stod(cells[7])).epsilon(1e-6));
}

TEST_CASE("resolution table content") {
  const auto out = scratch_dir("table");
  const auto ctx = quick_context(out);
  cmd_resolution_table(ctx);
  std::ifstream in(out / "resolution_table.json");
  const json doc = json::parse(in);
  CHECK(doc["config_hash"] == config_hash(ctx.config));
  CHECK(doc["loss_limited"].size() == 3);
  CHECK(std::abs(doc["loss_limited"][0]["R_e"].get<double>() - 5.0) < 0.05);
  for (const auto& row : doc["time_limited"]) {
    CHECK(row["R_e"].get<double>() == doctest::Approx(row["R_e_lossy_dual"].get<double>()).epsilon(1e-14));
  }
  CHECK(doc["inverse"][2]["required_time_s"].get<double>() / (39.0 * 60.0) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("tool: exit codes and byte-identical reruns") {
  const auto out = scratch_dir("tool");
  const std::string quick =
      " --override omega_grid.n_points=401 --override outer.propagating_panels=1"
      " --override outer.evanescent_panels=2 --override fig3.h_over_k00.count=10 --threads 1";

  CHECK(run_tool("validate-config --out " + (out / "a").string()) == 0);
  CHECK(run_tool("validate-config --config " + std::string(SLABLENS_CONFIG_DIR) +
                 "/defaults.json --out " + (out / "b").string()) == 0);
  CHECK(slurp(out / "a" / "config.json") == slurp(out / "b" / "config.json"));

  CHECK(run_tool("fig3 --out " + (out / "r1").string() + quick) == 0);
  CHECK(run_tool("fig3 --out " + (out / "r2").string() + quick) == 0);
  CHECK(slurp(out / "r1" / "fig3.csv") == slurp(out / "r2" / "fig3.csv"));
  CHECK(slurp(out / "r1" / "fig3_markers.csv") == slurp(out / "r2" / "fig3_markers.csv"));

  CHECK(run_tool("resolution-table --out " + (out / "t1").string()) == 0);
  CHECK(run_tool("resolution-table --out " + (out / "t2").string()) == 0);
  CHECK(slurp(out / "t1" / "resolution_table.json") == slurp(out / "t2" / "resolution_table.json"));

  CHECK(run_tool("validate-config --override f0_hz=-1 --out " + out.string()) == 2);
  CHECK(run_tool("validate-config --override bogus=1 --out " + out.string()) == 2);
  CHECK(run_tool("validate-config --config /nonexistent.json --out " + out.string()) == 2);
  CHECK(run_tool("no-such-command") == 2);
  CHECK(run_tool("") == 2);
  CHECK(run_tool("--help") == 0);
}
