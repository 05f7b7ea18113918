#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gmfg/hamiltonian.hpp"
#include "gmfg/transport.hpp"

// Slow, closed-form or exhaustive references for checking the solvers. Nothing
// here calls the Hamiltonian evaluators it is meant to validate.
namespace gmfg::oracle {

/// Raised when the grid maximizer touches lambda_max in some coordinate.
class BoundaryArgmax : public std::range_error {
 public:
  using std::range_error::range_error;
};

using RunningCost = std::function<double(std::span<const double> lambda, std::span<const double> m)>;

struct LegendreResult {
  double value = 0.0;
  std::vector<double> argmax;
};

/// max of lambda.p - L(lambda, m) over {0, h, ..., lambda_max}^d, h = lambda_max / grid_n.
LegendreResult brute_force_legendre(const RunningCost& cost, std::span<const double> p,
                                    std::span<const double> m, double lambda_max,
                                    std::size_t grid_n);

/// m_1(t) for the two-node chain with constant rates a (1 -> 2) and b (2 -> 1).
double closed_form_two_node(double a, double b, double m1_0, double t);

/// max over nodes of [grid-best objective - objective at the given rates],
/// objective lambda.p - L(i, lambda, m) with p_j = u_j - u_i. Needs a model
/// with a closed-form running cost.
double best_response_check(const HamiltonianModel& model, std::span<const double> u,
                           std::span<const double> m, const EdgeRates& rates, double lambda_max,
                           std::size_t grid_n);

}  // namespace gmfg::oracle
