#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gmfg/cli/config.hpp"

namespace gmfg::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_not_converged = 2;
inline constexpr int exit_violated = 3;
inline constexpr int exit_inconclusive = 4;

/// config.output unless GMFG_OUT is set.
std::filesystem::path output_dir(const RunConfig& config);

/// Writes m.csv, u.csv, rates.csv and diagnostics.json into `out`.
int cmd_solve(const RunConfig& config, const std::filesystem::path& out);

/// Writes uniqueness.json into `out`.
int cmd_check_uniqueness(const RunConfig& config, const std::filesystem::path& out,
                         bool two_solve);

/// Oracle names: legendre, gradient, transport, best_response. Throws
/// ConfigError for anything else. Returns exit_violated if a row fails.
int cmd_oracle(const RunConfig& config, const std::string& which, std::ostream& os);
std::vector<std::string> oracle_names();

/// `param` is a dotted path into to_json(config), e.g. "solver.omega".
int cmd_sweep(const RunConfig& config, const std::string& param,
              const std::vector<std::string>& values, const std::filesystem::path& out);

std::vector<std::string> split_values(const std::string& csv);

}  // namespace gmfg::cli
