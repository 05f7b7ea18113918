#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gmfg/hamiltonian.hpp"
#include "gmfg/hjb.hpp"
#include "gmfg/trajectory.hpp"
#include "gmfg/transport.hpp"

namespace gmfg {

struct MfgProblem {
  std::shared_ptr<const HamiltonianModel> model;
  std::vector<double> m0;
  TimeGrid grid;

  const Graph& graph() const { return model->graph(); }
};

enum class Scheme { damped_picard, cesaro };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

struct SolverOptions {
  Scheme scheme = Scheme::damped_picard;
  double omega = 0.5;
  double tol = 1e-8;
  std::size_t max_iter = 500;
  // Consecutive non-decreasing residuals after which damped Picard switches
  // to Cesaro averaging. Zero disables the fallback.
  std::size_t stall_window = 10;
};

struct SolveResult {
  Trajectory u;
  Trajectory m;
  RateField rates;
  std::size_t iterations = 0;
  std::vector<double> residual_history;
  bool converged = false;
  Scheme scheme = Scheme::damped_picard;
};

/// m -> (u solving the HJB system against m) -> rates evaluated with u and
/// the same m -> transport from m0. Rates at RK4 stage times are recomputed
/// from the linear interpolants of u and m.
Trajectory theta_map(const MfgProblem& problem, const Trajectory& m);

/// Iterates the damped (or averaged) map until sup_distance(m, theta(m)) <= tol.
/// Running out of iterations is reported through `converged`, not thrown.
/// Starts from the constant trajectory m0 unless `initial` is given.
SolveResult solve_mfg(const MfgProblem& problem, const SolverOptions& options,
                      const std::optional<Trajectory>& initial = std::nullopt);

/// Constant trajectory sitting on the vertex of the least-populated node of
/// m0, used as a second starting point when probing for multiple solutions.
Trajectory vertex_guess(const MfgProblem& problem);

struct VerifyReport {
  double hjb_residual = 0.0;
  double transport_residual = 0.0;
  double check_tol = 1e-3;
  bool ok() const { return hjb_residual <= check_tol && transport_residual <= check_tol; }
};

/// Central-difference residuals of both halves of the system at the interior
/// grid nodes.
VerifyReport verify_solution(const MfgProblem& problem, const Trajectory& u, const Trajectory& m,
                             double check_tol = 1e-3);

}  // namespace gmfg
