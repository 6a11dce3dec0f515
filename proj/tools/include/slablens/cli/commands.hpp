#pragma once

// Figure and table generators behind the CLI subcommands. Every command
// writes into `out_dir` and returns the paths it wrote.
//
// CSV contract: line 1 is "# slablens <command> config_hash=<hex>", line 2
// names the columns, numbers use '.' and scientific notation with 17
// significant digits.

#include <filesystem>
#include <string>
#include <vector>

#include "slablens/cli/config.hpp"

namespace slablens::cli {

struct CommandContext {
  RunConfig config;
  std::filesystem::path out_dir;
  int threads = 0;
};

using Written = std::vector<std::filesystem::path>;

/// fig2.csv {h_over_k00, abs_value, delta_pp} and fig2_markers.csv {delta_pp, R_e}.
Written cmd_fig2(const CommandContext& ctx);

/// fig3.csv {h_over_k00, normalized_abs_W, t} and fig3_markers.csv {t, R_e, H_t_over_k00}.
Written cmd_fig3(const CommandContext& ctx);

/// fig4.csv {x_over_lambda0, normalized_abs_E, t} and
/// fig4_markers.csv {t, R_e, delta_x_over_lambda0, source_x_over_lambda0...}.
Written cmd_fig4(const CommandContext& ctx);

/// resolution_table.json with loss-limited, time-limited and inverse tables.
Written cmd_resolution_table(const CommandContext& ctx);

/// field_map.csv: E_x over an (x, z) window with region tags and reference columns.
Written cmd_field_map(const CommandContext& ctx);

/// Writes config.json, the fully resolved configuration.
Written cmd_validate_config(const CommandContext& ctx);

/// Formats a double the way every CSV column does.
std::string format_number(double v);

}  // namespace slablens::cli
