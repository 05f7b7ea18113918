#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gmfg/hamiltonian.hpp"
#include "gmfg/trajectory.hpp"

namespace gmfg {

/// Transition rates per node, aligned with Graph::out(i).
using EdgeRates = std::vector<std::vector<double>>;

/// Rates at time t, written into `out` (already shaped like the graph).
using RateProvider = std::function<void(double t, EdgeRates& out)>;

EdgeRates zero_rates(const Graph& graph);

/// lambda*_ij = dH/dp_j(i, (u_l - u_i)_{l in V(i)}, m).
EdgeRates rates_from_u(const HamiltonianModel& model, std::span<const double> u,
                       std::span<const double> m);
void rates_from_u(const HamiltonianModel& model, std::span<const double> u,
                  std::span<const double> m, EdgeRates& out);

/// dm_i/dt = sum_{j in V^-1(i)} lambda_ji m_j - sum_{j in V(i)} lambda_ij m_i.
void transport_rhs(const Graph& graph, const EdgeRates& rates, std::span<const double> m,
                   std::span<double> out);

struct TransportOptions {
  double negative_tol = 1e-9;
  int max_halvings = 6;
};

/// Classical RK4 forward from m0 (a simplex point), one step per grid
/// interval. A step that drives a component below -negative_tol is redone
/// with the step halved, at most max_halvings times; after that a
/// SolverError is raised. Remaining negatives in [-negative_tol, 0) are
/// clamped to zero and the row is rescaled to its pre-clamp mass.
Trajectory solve_transport(const Graph& graph, const RateProvider& rates,
                           std::span<const double> m0, const TimeGrid& grid,
                           const TransportOptions& options = {});

/// Rates at every grid node.
struct RateField {
  TimeGrid grid;
  std::vector<EdgeRates> at;
};

RateField rate_field(const HamiltonianModel& model, const Trajectory& u, const Trajectory& m);

}  // namespace gmfg
