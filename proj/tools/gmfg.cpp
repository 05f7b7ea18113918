// gmfg: solve mean field games on directed graphs and check uniqueness.
//
//   gmfg solve <config.json>
//   gmfg check-uniqueness <config.json> [--two-solve]
//   gmfg oracle <config.json> <legendre|gradient|transport|best_response>
//   gmfg sweep <config.json> --param solver.omega --values 0.25,0.5,1.0
//
// Outputs go to the config's "output" directory, or to $GMFG_OUT when set.
//
// Exit codes: 0 success/certified, 1 error, 2 not converged,
// 3 uniqueness violated or oracle failure, 4 inconclusive.

#include <CLI11.hpp>
#include <iostream>

#include "gmfg/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace gmfg::cli;

  CLI::App app{"Mean field games on graphs with congestion"};
  app.require_subcommand(1);

  std::string config_path;
  bool two_solve = false;
  std::string oracle_name;
  std::string param;
  std::string values;

  auto* solve = app.add_subcommand("solve", "Solve the forward-backward system");
  solve->add_option("config", config_path, "JSON config")->required();

  auto* unique = app.add_subcommand("check-uniqueness", "Sample the uniqueness criterion");
  unique->add_option("config", config_path, "JSON config")->required();
  unique->add_flag("--two-solve", two_solve, "Also solve from two initial guesses and compare");

  auto* oracle = app.add_subcommand("oracle", "Run a reference-oracle sweep");
  oracle->add_option("config", config_path, "JSON config")->required();
  oracle->add_option("name", oracle_name, "Oracle name")->required();

  auto* sweep = app.add_subcommand("sweep", "Solve once per parameter value");
  sweep->add_option("config", config_path, "JSON config")->required();
  sweep->add_option("--param", param, "Dotted config path, e.g. solver.omega")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_error;
  }

  try {
    const RunConfig config = load_config(config_path);
    const auto out = output_dir(config);
    if (*solve) return cmd_solve(config, out);
    if (*unique) return cmd_check_uniqueness(config, out, two_solve);
    if (*oracle) return cmd_oracle(config, oracle_name, std::cout);
    if (*sweep) return cmd_sweep(config, param, split_values(values), out);
  } catch (const std::exception& e) {
    std::cerr << "gmfg: " << e.what() << '\n';
    return exit_error;
  }
  return exit_error;
}
