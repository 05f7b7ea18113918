#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gmfg/hamiltonian.hpp"
#include "gmfg/trajectory.hpp"

namespace gmfg {

/// Distribution as a function of time, written into `out` (size N).
using DensityPath = std::function<void(double t, std::span<double> out)>;

struct HjbSolution {
  Trajectory u;
  std::vector<double> terminal;  // u(T,i) = g(i, m(T))
  double residual_norm = 0.0;    // central-difference ODE residual over interior nodes
};

/// du_i/dt = -H(i, (u_j - u_i)_{j in V(i)}, m): component i of the result.
std::vector<double> hjb_rhs(const HamiltonianModel& model, std::span<const double> u,
                            std::span<const double> m);

/// Classical RK4 backward from T, one step per grid interval, with m taken
/// from the linear interpolant of `m` at the stage times.
HjbSolution solve_hjb(const HamiltonianModel& model, const Trajectory& m);
HjbSolution solve_hjb(const HamiltonianModel& model, const DensityPath& m, const TimeGrid& grid);

/// Estimate of max_i sup_m |g(i,m)| + T max_{i,m} |H(i,0,m)| with the sups
/// taken over simplex_design(N). Every HJB solution driven by a simplex-valued
/// m stays within this bound (plus a_priori_slack) in sup norm.
double a_priori_bound(const HamiltonianModel& model, double horizon);
inline constexpr double a_priori_slack = 1e-6;

/// Largest |u(t_k, i)| on the grid.
double sup_norm(const Trajectory& u);

}  // namespace gmfg
