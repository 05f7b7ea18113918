#include "gmfg/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gmfg/errors.hpp"

namespace gmfg {

std::string to_string(Scheme s) {
  return s == Scheme::cesaro ? "cesaro" : "damped_picard";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "damped_picard") return Scheme::damped_picard;
  if (name == "cesaro") return Scheme::cesaro;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

Trajectory theta_map(const MfgProblem& problem, const Trajectory& m) {
  const HamiltonianModel& model = *problem.model;
  const Trajectory u = solve_hjb(model, m).u;

  const std::size_t n = model.size();
  std::vector<double> ut(n), mt(n);
  RateProvider rates = [&](double t, EdgeRates& out) {
    u.sample_into(t, ut);
    m.sample_into(t, mt);
    rates_from_u(model, ut, mt, out);
  };
  return solve_transport(model.graph(), rates, problem.m0, m.grid());
}

namespace {

void blend(Trajectory& m, const Trajectory& target, double w) {
  const auto v = m.data();
  const auto& t = target.values();
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = (1.0 - w) * v[k] + w * t[k];
}

}  // namespace

SolveResult solve_mfg(const MfgProblem& problem, const SolverOptions& options,
                      const std::optional<Trajectory>& initial) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (options.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (!(options.omega > 0.0 && options.omega <= 1.0))
    throw std::invalid_argument("omega must lie in (0, 1]");

  Trajectory m = initial ? *initial : Trajectory::constant(problem.grid, problem.m0);
  if (!(m.grid() == problem.grid) || m.dim() != problem.model->size())
    throw std::invalid_argument("initial guess does not match the problem grid");

  SolveResult result{m, m, RateField{problem.grid, {}}, 0, {}, false, options.scheme};
  Scheme scheme = options.scheme;
  std::size_t averaged = 0;  // Cesaro index
  std::size_t stalled = 0;

  for (std::size_t it = 0; it < options.max_iter; ++it) {
    const Trajectory next = theta_map(problem, m);
    const double r = sup_distance(m, next);
    if (!result.residual_history.empty() && r >= result.residual_history.back()) ++stalled;
    else stalled = 0;
    result.residual_history.push_back(r);
    if (r <= options.tol) {
      result.converged = true;
      break;
    }
    if (scheme == Scheme::damped_picard && options.stall_window > 0 &&
        stalled >= options.stall_window) {
      scheme = Scheme::cesaro;
      averaged = 1;
    }
    if (scheme == Scheme::damped_picard) {
      blend(m, next, options.omega);
    } else {
      blend(m, next, 1.0 / static_cast<double>(averaged + 1));
      ++averaged;
    }
    ++result.iterations;
  }

  result.scheme = scheme;
  result.m = m;
  result.u = solve_hjb(*problem.model, m).u;
  result.rates = rate_field(*problem.model, result.u, result.m);
  return result;
}

Trajectory vertex_guess(const MfgProblem& problem) {
  const auto& m0 = problem.m0;
  const auto low = static_cast<std::size_t>(std::min_element(m0.begin(), m0.end()) - m0.begin());
  std::vector<double> vertex(m0.size(), 0.0);
  vertex[low] = 1.0;
  return Trajectory::constant(problem.grid, vertex);
}

VerifyReport verify_solution(const MfgProblem& problem, const Trajectory& u, const Trajectory& m,
                             double check_tol) {
  if (!(u.grid() == m.grid())) throw DomainError("u and m live on different grids");
  const HamiltonianModel& model = *problem.model;
  const Graph& g = model.graph();
  const std::size_t n = g.size();
  const double dt = u.grid().dt();

  VerifyReport rep;
  rep.check_tol = check_tol;
  EdgeRates lam;
  std::vector<double> dm(n);
  for (std::size_t k = 1; k + 1 < u.rows(); ++k) {
    const auto uk = u.row(k);
    const auto mk = m.row(k);
    const auto h_rhs = hjb_rhs(model, uk, mk);
    rates_from_u(model, uk, mk, lam);
    transport_rhs(g, lam, mk, dm);
    for (std::size_t i = 0; i < n; ++i) {
      const double du = (u(k + 1, i) - u(k - 1, i)) / (2.0 * dt);
      const double dmi = (m(k + 1, i) - m(k - 1, i)) / (2.0 * dt);
      rep.hjb_residual = std::max(rep.hjb_residual, std::abs(du - h_rhs[i]));
      rep.transport_residual = std::max(rep.transport_residual, std::abs(dmi - dm[i]));
    }
  }
  return rep;
}

}  // namespace gmfg
