#include "gmfg/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gmfg/errors.hpp"

namespace gmfg {

EdgeRates zero_rates(const Graph& graph) {
  EdgeRates r(graph.size());
  for (Node i = 0; i < graph.size(); ++i) r[i].assign(graph.out_degree(i), 0.0);
  return r;
}

void rates_from_u(const HamiltonianModel& model, std::span<const double> u,
                  std::span<const double> m, EdgeRates& out) {
  const Graph& g = model.graph();
  if (u.size() != g.size()) throw DomainError("u has the wrong dimension");
  out.resize(g.size());
  std::vector<double> p;
  for (Node i = 0; i < g.size(); ++i) {
    const auto targets = g.out(i);
    p.resize(targets.size());
    for (std::size_t k = 0; k < targets.size(); ++k) p[k] = u[targets[k]] - u[i];
    out[i] = model.rates(i, p, m);
  }
}

EdgeRates rates_from_u(const HamiltonianModel& model, std::span<const double> u,
                       std::span<const double> m) {
  EdgeRates r;
  rates_from_u(model, u, m, r);
  return r;
}

void transport_rhs(const Graph& graph, const EdgeRates& rates, std::span<const double> m,
                   std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (Node i = 0; i < graph.size(); ++i) {
    const auto targets = graph.out(i);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const double flow = rates[i][k] * m[i];
      out[i] -= flow;
      out[targets[k]] += flow;
    }
  }
}

namespace {

class Rk4Stepper {
 public:
  Rk4Stepper(const Graph& graph, const RateProvider& rates)
      : graph_(graph), rates_(rates), lam_(zero_rates(graph)) {
    const std::size_t n = graph.size();
    stage_.resize(n);
    k1_.resize(n);
    k2_.resize(n);
    k3_.resize(n);
    k4_.resize(n);
  }

  // Advances m in place from t to t + h.
  void step(std::vector<double>& m, double t, double h) {
    const std::size_t n = m.size();
    eval(t, m, k1_);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = m[i] + 0.5 * h * k1_[i];
    eval(t + 0.5 * h, stage_, k2_);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = m[i] + 0.5 * h * k2_[i];
    eval(t + 0.5 * h, stage_, k3_);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = m[i] + h * k3_[i];
    eval(t + h, stage_, k4_);
    for (std::size_t i = 0; i < n; ++i)
      m[i] += h / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }

 private:
  void eval(double t, const std::vector<double>& m, std::vector<double>& out) {
    rates_(t, lam_);
    transport_rhs(graph_, lam_, m, out);
  }

  const Graph& graph_;
  const RateProvider& rates_;
  EdgeRates lam_;
  std::vector<double> stage_, k1_, k2_, k3_, k4_;
};

double min_entry(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

}  // namespace

Trajectory solve_transport(const Graph& graph, const RateProvider& rates,
                           std::span<const double> m0, const TimeGrid& grid,
                           const TransportOptions& options) {
  const std::size_t n = graph.size();
  if (m0.size() != n) throw DomainError("m0 has the wrong dimension");
  double mass = 0.0;
  for (double x : m0) {
    if (!(x >= 0.0)) throw DomainError("m0 has a negative or non-finite entry");
    mass += x;
  }
  if (std::abs(mass - 1.0) > 1e-12) throw DomainError("m0 does not sum to 1");

  Trajectory out(grid, n);
  std::copy(m0.begin(), m0.end(), out.row(0).begin());
  Rk4Stepper stepper(graph, rates);
  std::vector<double> m(m0.begin(), m0.end()), trial(n);

  for (std::size_t k = 0; k < grid.steps(); ++k) {
    const double t0 = grid.time(k);
    const double t1 = grid.time(k + 1);
    bool accepted = false;
    for (int halvings = 0; halvings <= options.max_halvings; ++halvings) {
      const std::size_t pieces = std::size_t{1} << halvings;
      const double h = (t1 - t0) / static_cast<double>(pieces);
      trial = m;
      for (std::size_t s = 0; s < pieces; ++s) stepper.step(trial, t0 + h * s, h);
      for (double x : trial) {
        if (!std::isfinite(x)) {
          throw SolverError("transport solve blew up at t = " + format_real(t1));
        }
      }
      if (min_entry(trial) >= -options.negative_tol) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw SolverError("transport solve lost positivity at t = " + format_real(t1) +
                        " after " + std::to_string(options.max_halvings) + " step halvings");
    }

    if (min_entry(trial) < 0.0) {
      const double before = std::accumulate(trial.begin(), trial.end(), 0.0);
      for (auto& x : trial) x = std::max(x, 0.0);
      const double after = std::accumulate(trial.begin(), trial.end(), 0.0);
      for (auto& x : trial) x *= before / after;
    }
    m = trial;
    std::copy(m.begin(), m.end(), out.row(k + 1).begin());
  }
  return out;
}

RateField rate_field(const HamiltonianModel& model, const Trajectory& u, const Trajectory& m) {
  if (!(u.grid() == m.grid())) throw DomainError("u and m live on different grids");
  RateField field{u.grid(), std::vector<EdgeRates>(u.rows())};
  for (std::size_t k = 0; k < u.rows(); ++k) rates_from_u(model, u.row(k), m.row(k), field.at[k]);
  return field;
}

}  // namespace gmfg
