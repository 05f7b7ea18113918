#include "gmfg/cli/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <future>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "gmfg/cli/output.hpp"
#include "gmfg/hjb.hpp"
#include "gmfg/oracle.hpp"
#include "gmfg/sampling.hpp"

namespace gmfg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path output_dir(const RunConfig& config) {
  if (const char* env = std::getenv("GMFG_OUT"); env && *env) return env;
  return config.output;
}

namespace {

SolveResult run_solve(const RunConfig& config, const fs::path& out) {
  const MfgProblem problem = make_problem(config);
  SolveResult res = solve_mfg(problem, config.solver);
  const VerifyReport verify = verify_solution(problem, res.u, res.m);
  const double bound = a_priori_bound(*problem.model, config.horizon);
  const double u_sup = sup_norm(res.u);

  double mass_error = 0.0;
  double min_density = 1.0;
  for (std::size_t k = 0; k < res.m.rows(); ++k) {
    const auto row = res.m.row(k);
    mass_error = std::max(mass_error, std::abs(std::accumulate(row.begin(), row.end(), 0.0) - 1.0));
    for (double x : row) min_density = std::min(min_density, x);
  }

  fs::create_directories(out);
  write_trajectory(out / "m.csv", res.m);
  write_trajectory(out / "u.csv", res.u);
  write_rates(out / "rates.csv", problem.graph(), res.rates);
  json diag;
  diag["converged"] = res.converged;
  diag["iterations"] = res.iterations;
  diag["scheme"] = to_string(res.scheme);
  diag["residual_history"] = res.residual_history;
  diag["final_residual"] = res.residual_history.empty() ? json(nullptr) : json(res.residual_history.back());
  diag["verify"] = to_json(verify);
  diag["a_priori_bound"] = {{"bound", bound},
                            {"slack", a_priori_slack},
                            {"sup_u", u_sup},
                            {"ok", u_sup <= bound + a_priori_slack}};
  diag["mass_error"] = mass_error;
  diag["min_density"] = min_density;
  write_json(out / "diagnostics.json", diag);
  return res;
}

struct OracleRow {
  std::size_t sample;
  double error;
  double tol;
  bool pass() const { return error <= tol; }
};

oracle::LegendreResult adaptive_legendre(const oracle::RunningCost& cost, std::span<const double> p,
                                         std::span<const double> m, std::size_t grid_n) {
  for (double lambda_max = 4.0;; lambda_max *= 2.0) {
    try {
      return oracle::brute_force_legendre(cost, p, m, lambda_max, grid_n);
    } catch (const oracle::BoundaryArgmax&) {
      if (lambda_max > 1e6) throw;
    }
  }
}

std::vector<OracleRow> oracle_rows(const RunConfig& config, const std::string& which) {
  const auto model = make_model(config);
  const Graph& g = model->graph();
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<OracleRow> rows;
  const std::size_t n = config.oracle_samples;

  std::vector<Node> small_nodes;
  for (Node i = 0; i < g.size(); ++i)
    if (g.out_degree(i) >= 1 && g.out_degree(i) <= 2) small_nodes.push_back(i);

  if (which == "legendre" || which == "gradient") {
    if (small_nodes.empty()) return rows;
    for (std::size_t s = 0; s < n; ++s) {
      const Node i = small_nodes[static_cast<std::size_t>(unit(rng) * small_nodes.size()) % small_nodes.size()];
      std::vector<double> p(g.out_degree(i));
      for (auto& x : p) {
        do x = -2.0 + 4.0 * unit(rng);
        while (std::abs(x) < 1e-4);
      }
      const auto m = random_simplex_point(rng, g.size());
      if (which == "legendre") {
        const oracle::RunningCost cost = [&](std::span<const double> lam, std::span<const double> mm) {
          return *model->running_cost(i, lam, mm);
        };
        const double ref = adaptive_legendre(cost, p, m, 1000).value;
        rows.push_back({s, std::abs(model->hamiltonian(i, p, m) - ref), 1e-3});
      } else {
        const auto grad = model->rates(i, p, m);
        double err = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j) {
          const double h = 1e-5;
          auto up = p, dn = p;
          up[j] += h;
          dn[j] -= h;
          const double fd = (model->hamiltonian(i, up, m) - model->hamiltonian(i, dn, m)) / (2 * h);
          err = std::max(err, std::abs(fd - grad[j]));
        }
        rows.push_back({s, err, 1e-6});
      }
    }
  } else if (which == "transport") {
    const Graph two = Graph::build(2, std::vector<Edge>{{0, 1}, {1, 0}});
    const TimeGrid grid(1.0, 200);
    for (std::size_t s = 0; s < n; ++s) {
      const double a = 2.0 * unit(rng);
      const double b = 2.0 * unit(rng);
      const double m1 = unit(rng);
      const std::vector<double> m0{m1, 1.0 - m1};
      const RateProvider rates = [a, b](double, EdgeRates& out) {
        out[0][0] = a;
        out[1][0] = b;
      };
      const Trajectory traj = solve_transport(two, rates, m0, grid);
      double err = 0.0;
      for (std::size_t k = 0; k < traj.rows(); ++k)
        err = std::max(err, std::abs(traj(k, 0) - oracle::closed_form_two_node(a, b, m1, grid.time(k))));
      rows.push_back({s, err, 1e-8});
    }
  } else if (which == "best_response") {
    if (g.max_out_degree() > 2) return rows;
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<double> u(g.size());
      for (auto& x : u) x = -1.0 + 2.0 * unit(rng);
      const auto m = random_simplex_point(rng, g.size());
      const EdgeRates rates = rates_from_u(*model, u, m);
      double lambda_max = 4.0;
      for (const auto& r : rates)
        for (double x : r) lambda_max = std::max(lambda_max, 2.0 * x);
      rows.push_back({s, oracle::best_response_check(*model, u, m, rates, lambda_max, 1000), 1e-3});
    }
  } else {
    throw ConfigError("oracle", "unknown oracle '" + which + "'");
  }
  return rows;
}

void set_path(json& doc, const std::string& path, const json& value) {
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!node->is_object() || !node->contains(key))
      throw ConfigError(path, "unknown parameter path");
    node = &(*node)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (node->is_object()) throw ConfigError(path, "parameter path names a section, not a value");
  *node = value;
}

json parse_value(const std::string& token) {
  try {
    return json::parse(token);
  } catch (const json::parse_error&) {
    return token;
  }
}

}  // namespace

int cmd_solve(const RunConfig& config, const fs::path& out) {
  return run_solve(config, out).converged ? exit_ok : exit_not_converged;
}

int cmd_check_uniqueness(const RunConfig& config, const fs::path& out, bool two_solve) {
  const auto model = make_model(config);
  const UniquenessReport rep = certify_psd(*model, sampler_config(config));
  json doc = to_json(rep);
  if (two_solve) {
    const bool satisfied = rep.verdict == Verdict::certified_on_samples;
    doc["two_solve"] = to_json(two_solve_agreement(make_problem(config), config.solver,
                                                   config.tol_agree, satisfied));
  }
  fs::create_directories(out);
  write_json(out / "uniqueness.json", doc);
  switch (rep.verdict) {
    case Verdict::certified_on_samples: return exit_ok;
    case Verdict::violated: return exit_violated;
    case Verdict::inconclusive: return exit_inconclusive;
  }
  return exit_error;
}

std::vector<std::string> oracle_names() { return {"legendre", "gradient", "transport", "best_response"}; }

int cmd_oracle(const RunConfig& config, const std::string& which, std::ostream& os) {
  const auto rows = oracle_rows(config, which);
  std::size_t passed = 0;
  os << std::left << std::setw(16) << "oracle" << std::setw(8) << "sample" << std::setw(26) << "error"
     << std::setw(10) << "tol" << "status\n";
  for (const auto& r : rows) {
    os << std::setw(16) << which << std::setw(8) << r.sample << std::setw(26) << format_real(r.error)
       << std::setw(10) << format_real(r.tol) << (r.pass() ? "PASS" : "FAIL") << '\n';
    passed += r.pass();
  }
  os << passed << "/" << rows.size() << " passed\n";
  return passed == rows.size() ? exit_ok : exit_violated;
}

std::vector<std::string> split_values(const std::string& csv) {
  std::vector<std::string> out;
  if (csv.empty()) return out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : tok.substr(b, e - b + 1));
  }
  return out;
}

int cmd_sweep(const RunConfig& config, const std::string& param,
              const std::vector<std::string>& values, const fs::path& out) {
  const json base = to_json(config);
  {
    json probe = base;
    set_path(probe, param, json(nullptr));  // validates the path up front
  }
  std::vector<RunConfig> runs;
  for (const auto& v : values) {
    json doc = base;
    set_path(doc, param, parse_value(v));
    runs.push_back(parse_config(doc));
  }

  std::vector<std::future<SolveResult>> jobs;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const fs::path dir = out / ("sweep_" + std::to_string(k));
    jobs.push_back(std::async(std::launch::async, [&runs, k, dir] { return run_solve(runs[k], dir); }));
  }

  std::ostringstream csv;
  csv << "value,converged,iterations,final_residual\n";
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const SolveResult r = jobs[k].get();
    csv << csv_field(values[k]) << ',' << (r.converged ? "true" : "false") << ',' << r.iterations
        << ',' << format_real(r.residual_history.back()) << '\n';
  }
  fs::create_directories(out);
  write_text(out / "sweep_summary.csv", csv.str());
  return exit_ok;
}

}  // namespace gmfg::cli
