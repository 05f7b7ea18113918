#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gmfg/fixed_point.hpp"
#include "helpers.hpp"

using namespace gmfg;

namespace {

MfgProblem benchmark(std::size_t steps = 200) {
  auto model = test::quadratic(test::two_node(), 0.5, 0.0, 0.01, Coupling::logit(1.0, 0.01),
                               Coupling::logit(0.5, 0.01));
  return MfgProblem{model, {0.8, 0.2}, TimeGrid(1.0, steps)};
}

}  // namespace

TEST_CASE("single node is its own equilibrium") {
  auto model = test::quadratic(Graph::build(1, {}), 0, 0, 0.1, Coupling::logit(1.0, 0.1));
  const MfgProblem p{model, {1.0}, TimeGrid(1.0, 10)};
  const auto r = solve_mfg(p, {});
  CHECK(r.converged);
  CHECK(r.iterations == 0);
  CHECK(r.residual_history == std::vector<double>{0.0});
  for (double v : r.m.values()) CHECK(v == 1.0);
}

TEST_CASE("symmetric ring keeps the uniform distribution") {
  auto model = test::quadratic(test::ring(3), 1.0, 1.0, 0.05, Coupling::logit(1.0, 0.05),
                               Coupling::logit(1.0, 0.05));
  const std::vector<double> m0(3, 1.0 / 3.0);
  const MfgProblem p{model, m0, TimeGrid(1.0, 50)};
  const auto r = solve_mfg(p, {});
  CHECK(r.converged);
  for (double v : r.m.values()) CHECK(std::abs(v - 1.0 / 3.0) <= 1e-10);
}

TEST_CASE("benchmark converges and verifies") {
  const MfgProblem p = benchmark();
  const auto r = solve_mfg(p, {});
  REQUIRE(r.converged);
  CHECK(r.iterations <= 200);
  CHECK(r.residual_history.back() <= 1e-8);
  CHECK(r.residual_history.size() == r.iterations + 1);
  for (std::size_t k = 0; k < r.m.rows(); ++k) {
    const auto row = r.m.row(k);
    CHECK(std::abs(std::accumulate(row.begin(), row.end(), 0.0) - 1.0) <= 1e-10);
  }
  CHECK(r.rates.at.size() == r.m.rows());

  const auto v = verify_solution(p, r.u, r.m);
  CHECK(v.ok());

  Trajectory bent = r.u;
  for (std::size_t k = 0; k < bent.rows(); ++k) bent(k, 0) += 0.1 * std::sin(6.0 * p.grid.time(k));
  CHECK(verify_solution(p, bent, r.m).hjb_residual >= 1e-2);
}

TEST_CASE("starting at the fixed point returns immediately") {
  const MfgProblem p = benchmark();
  const auto first = solve_mfg(p, {});
  REQUIRE(first.converged);
  SolverOptions tight;
  tight.tol = 1e-7;
  const auto again = solve_mfg(p, tight, first.m);
  CHECK(again.converged);
  CHECK(again.iterations == 0);
}

TEST_CASE("solves are deterministic") {
  const MfgProblem p = benchmark(100);
  const auto a = solve_mfg(p, {});
  const auto b = solve_mfg(p, {});
  CHECK(a.m.values() == b.m.values());
  CHECK(a.u.values() == b.u.values());
  CHECK(a.residual_history == b.residual_history);
}

TEST_CASE("Cesaro averaging reaches the same equilibrium") {
  const MfgProblem p = benchmark(100);
  const auto picard = solve_mfg(p, {});
  SolverOptions opts;
  opts.scheme = Scheme::cesaro;
  opts.tol = 1e-6;
  opts.max_iter = 2000;
  const auto ces = solve_mfg(p, opts);
  CHECK(ces.scheme == Scheme::cesaro);
  if (ces.converged) CHECK(sup_distance(ces.m, picard.m) <= 1e-4);
  else CHECK(ces.residual_history.back() < ces.residual_history.front());
}

TEST_CASE("iteration budget is reported, not thrown") {
  const MfgProblem p = benchmark(50);
  SolverOptions opts;
  opts.max_iter = 2;
  const auto r = solve_mfg(p, opts);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 2);
}

TEST_CASE("option validation") {
  const MfgProblem p = benchmark(10);
  SolverOptions bad;
  bad.omega = 0.0;
  CHECK_THROWS_AS(solve_mfg(p, bad), std::invalid_argument);
  bad = {};
  bad.tol = 0.0;
  CHECK_THROWS_AS(solve_mfg(p, bad), std::invalid_argument);
  CHECK(scheme_from_string(to_string(Scheme::cesaro)) == Scheme::cesaro);
  CHECK_THROWS(scheme_from_string("newton"));
}

TEST_CASE("vertex guess sits on the least-populated node") {
  const MfgProblem p = benchmark(10);
  const auto v = vertex_guess(p);
  CHECK(v(0, 0) == 0.0);
  CHECK(v(10, 1) == 1.0);
}
