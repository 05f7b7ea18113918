#include "gmfg/oracle.hpp"

#include <cmath>
#include <limits>

#include "gmfg/errors.hpp"

namespace gmfg::oracle {

LegendreResult brute_force_legendre(const RunningCost& cost, std::span<const double> p,
                                    std::span<const double> m, double lambda_max,
                                    std::size_t grid_n) {
  if (!(lambda_max > 0.0) || grid_n == 0) throw std::invalid_argument("empty lambda grid");
  const std::size_t d = p.size();
  const double h = lambda_max / static_cast<double>(grid_n);

  std::vector<std::size_t> idx(d, 0), best_idx(d, 0);
  std::vector<double> lambda(d, 0.0);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    double obj = -cost(lambda, m);
    for (std::size_t j = 0; j < d; ++j) obj += lambda[j] * p[j];
    if (obj > best) {
      best = obj;
      best_idx = idx;
    }
    std::size_t j = 0;
    for (; j < d; ++j) {
      if (idx[j] < grid_n) {
        ++idx[j];
        lambda[j] = h * static_cast<double>(idx[j]);
        break;
      }
      idx[j] = 0;
      lambda[j] = 0.0;
    }
    if (j == d) break;
  }

  LegendreResult r{best, std::vector<double>(d)};
  for (std::size_t j = 0; j < d; ++j) {
    if (best_idx[j] == grid_n) throw BoundaryArgmax("grid argmax on lambda_max: enlarge the box");
    r.argmax[j] = h * static_cast<double>(best_idx[j]);
  }
  return r;
}

double closed_form_two_node(double a, double b, double m1_0, double t) {
  if (a < 0.0 || b < 0.0) throw std::invalid_argument("rates must be nonnegative");
  const double s = a + b;
  if (s == 0.0) return m1_0;
  const double eq = b / s;
  return eq + (m1_0 - eq) * std::exp(-s * t);
}

double best_response_check(const HamiltonianModel& model, std::span<const double> u,
                           std::span<const double> m, const EdgeRates& rates, double lambda_max,
                           std::size_t grid_n) {
  const Graph& g = model.graph();
  double worst = -std::numeric_limits<double>::infinity();
  for (Node i = 0; i < g.size(); ++i) {
    const auto targets = g.out(i);
    std::vector<double> p(targets.size());
    for (std::size_t k = 0; k < targets.size(); ++k) p[k] = u[targets[k]] - u[i];

    const RunningCost cost = [&model, i](std::span<const double> lam, std::span<const double> mm) {
      const auto c = model.running_cost(i, lam, mm);
      if (!c) throw ModelError("best_response_check needs a closed-form running cost");
      return *c;
    };
    const double grid_best = brute_force_legendre(cost, p, m, lambda_max, grid_n).value;
    double at_rates = -cost(rates.at(i), m);
    for (std::size_t k = 0; k < p.size(); ++k) at_rates += rates[i][k] * p[k];
    worst = std::max(worst, grid_best - at_rates);
  }
  return worst;
}

}  // namespace gmfg::oracle
