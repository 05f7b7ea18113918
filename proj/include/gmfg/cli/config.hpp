#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmfg/errors.hpp"
#include "gmfg/fixed_point.hpp"
#include "gmfg/hamiltonian.hpp"
#include "gmfg/uniqueness.hpp"

namespace gmfg::cli {

/// Bad config: `field` is the dotted path of the offending entry ("" for
/// syntax errors, whose message carries the line and column).
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct CouplingSpec {
  std::string type = "zero";  // zero | constant | logit | linear
  std::optional<double> kappa;
  std::optional<double> eps;
  std::vector<double> values;  // constant values or linear coefficients
};

struct RunConfig {
  int schema = 1;
  std::size_t n = 1;
  std::vector<Edge> edges;  // 0-based; the file uses 1-based node labels

  std::string family = "quadratic_congestion";
  QuadraticCongestion::Params params;
  double kappa = 1.0;
  CouplingSpec f;
  CouplingSpec g;

  double horizon = 1.0;
  std::size_t steps = 200;
  bool m0_uniform = true;
  std::vector<double> m0;  // resolved and normalized

  SolverOptions solver;
  SamplerConfig uniqueness;
  double tol_agree = 1e-5;
  std::size_t oracle_samples = 100;

  std::string output = "out";
  std::uint64_t seed = 1;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Full document including defaults; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const RunConfig& config);

std::shared_ptr<const HamiltonianModel> make_model(const RunConfig& config);
MfgProblem make_problem(const RunConfig& config);
SamplerConfig sampler_config(const RunConfig& config);

}  // namespace gmfg::cli
