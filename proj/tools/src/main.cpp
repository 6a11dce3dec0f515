#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slablens/cli/commands.hpp"
#include "slablens/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int threads_from_env() {
  const char* env = std::getenv("SLABLENS_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    return std::stoi(env);
  } catch (const std::exception&) {
    throw slablens::cli::ConfigError(std::string("SLABLENS_THREADS is not an integer: ") + env);
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace slablens::cli;

  CLI::App app{"Line source imaged by a double-negative slab: figure data and resolution tables"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "out";
  int threads = -1;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "JSON run configuration (defaults when omitted)");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads (default: SLABLENS_THREADS or all cores)");
  app.add_option("--override", overrides, "key.path=value, applied after the config file");

  const std::map<std::string, Written (*)(const CommandContext&)> commands = {
      {"fig2", cmd_fig2},
      {"fig3", cmd_fig3},
      {"fig4", cmd_fig4},
      {"resolution-table", cmd_resolution_table},
      {"field-map", cmd_field_map},
      {"validate-config", cmd_validate_config},
  };
  const std::map<std::string, std::string> help = {
      {"fig2", "|T_TE e^{2i g0 L}| versus h for constant-loss slabs"},
      {"fig3", "normalized |W(h, z, t)| of the switched-on source"},
      {"fig4", "normalized |E(x, z, t)| of two switched-on sources"},
      {"resolution-table", "loss- and time-limited resolution formulas and inverses"},
      {"field-map", "E_x over an (x, z) window with region tags"},
      {"validate-config", "resolve and write the configuration"},
  };
  for (const auto& [name, fn] : commands) {
    (void)fn;
    app.add_subcommand(name, help.at(name));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    CommandContext ctx;
    ctx.threads = threads >= 0 ? threads : threads_from_env();
    ctx.out_dir = out_dir;
    ctx.config = load_config(config_path, overrides);
    const std::string name = app.get_subcommands().front()->get_name();
    for (const auto& path : commands.at(name)(ctx)) std::cout << path.string() << "\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const slablens::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const slablens::NonConvergence& e) {
    std::cerr << "numerical failure: " << e.what() << " (last estimate " << e.estimate()
              << ", error " << e.error_estimate() << ")\n";
    return kExitNumerical;
  } catch (const slablens::NumericalOverflow& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
