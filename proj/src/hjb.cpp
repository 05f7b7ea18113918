#include "gmfg/hjb.hpp"

#include <algorithm>
#include <cmath>

#include "gmfg/errors.hpp"
#include "gmfg/sampling.hpp"

namespace gmfg {

namespace {

void differences(const Graph& g, Node i, std::span<const double> u, std::vector<double>& p) {
  const auto targets = g.out(i);
  p.resize(targets.size());
  for (std::size_t k = 0; k < targets.size(); ++k) p[k] = u[targets[k]] - u[i];
}

void rhs_into(const HamiltonianModel& model, std::span<const double> u, std::span<const double> m,
              std::vector<double>& p, std::span<double> out) {
  const Graph& g = model.graph();
  for (Node i = 0; i < g.size(); ++i) {
    differences(g, i, u, p);
    out[i] = -model.hamiltonian(i, p, m);
  }
}

}  // namespace

std::vector<double> hjb_rhs(const HamiltonianModel& model, std::span<const double> u,
                            std::span<const double> m) {
  if (u.size() != model.size()) throw DomainError("u has the wrong dimension");
  std::vector<double> out(u.size());
  std::vector<double> p;
  rhs_into(model, u, m, p, out);
  return out;
}

HjbSolution solve_hjb(const HamiltonianModel& model, const Trajectory& m) {
  if (m.dim() != model.size()) throw DomainError("density trajectory has the wrong dimension");
  DensityPath path = [&m](double t, std::span<double> out) { m.sample_into(t, out); };
  return solve_hjb(model, path, m.grid());
}

HjbSolution solve_hjb(const HamiltonianModel& model, const DensityPath& m, const TimeGrid& grid) {
  const std::size_t n = model.size();
  const std::size_t steps = grid.steps();
  const double dt = grid.dt();

  HjbSolution sol{Trajectory(grid, n), std::vector<double>(n), 0.0};
  std::vector<double> mt(n), p;
  m(grid.horizon(), mt);
  for (Node i = 0; i < n; ++i) sol.terminal[i] = model.terminal(i, mt);
  std::copy(sol.terminal.begin(), sol.terminal.end(), sol.u.row(steps).begin());

  std::vector<double> u(sol.terminal), stage(n), k1(n), k2(n), k3(n), k4(n);
  auto guard = [](std::span<const double> v, double at) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!std::isfinite(v[i])) {
        throw SolverError("HJB solve blew up at t = " + format_real(at) + " (node " +
                          std::to_string(i + 1) + ")");
      }
    }
  };
  for (std::size_t k = steps; k > 0; --k) {
    const double t = grid.time(k);
    const double t_mid = t - 0.5 * dt;
    const double t_next = grid.time(k - 1);

    m(t, mt);
    rhs_into(model, u, mt, p, k1);
    guard(k1, t);
    m(t_mid, mt);
    for (std::size_t i = 0; i < n; ++i) stage[i] = u[i] - 0.5 * dt * k1[i];
    guard(stage, t_mid);
    rhs_into(model, stage, mt, p, k2);
    guard(k2, t_mid);
    for (std::size_t i = 0; i < n; ++i) stage[i] = u[i] - 0.5 * dt * k2[i];
    guard(stage, t_mid);
    rhs_into(model, stage, mt, p, k3);
    guard(k3, t_mid);
    m(t_next, mt);
    for (std::size_t i = 0; i < n; ++i) stage[i] = u[i] - dt * k3[i];
    guard(stage, t_next);
    rhs_into(model, stage, mt, p, k4);

    for (std::size_t i = 0; i < n; ++i) u[i] -= dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    guard(u, t_next);
    std::copy(u.begin(), u.end(), sol.u.row(k - 1).begin());
  }

  std::vector<double> rhs(n);
  for (std::size_t k = 1; k < steps; ++k) {
    m(grid.time(k), mt);
    rhs_into(model, sol.u.row(k), mt, p, rhs);
    for (std::size_t i = 0; i < n; ++i) {
      const double du = (sol.u(k + 1, i) - sol.u(k - 1, i)) / (2.0 * dt);
      sol.residual_norm = std::max(sol.residual_norm, std::abs(du - rhs[i]));
    }
  }
  return sol;
}

double a_priori_bound(const HamiltonianModel& model, double horizon) {
  const std::size_t n = model.size();
  const Graph& g = model.graph();
  double g_sup = 0.0;
  double h_sup = 0.0;
  std::vector<double> zero;
  for (const auto& m : simplex_design(n)) {
    for (Node i = 0; i < n; ++i) {
      zero.assign(g.out_degree(i), 0.0);
      g_sup = std::max(g_sup, std::abs(model.terminal(i, m)));
      h_sup = std::max(h_sup, std::abs(model.hamiltonian(i, zero, m)));
    }
  }
  return g_sup + horizon * h_sup;
}

double sup_norm(const Trajectory& u) {
  double s = 0.0;
  for (double v : u.values()) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace gmfg
