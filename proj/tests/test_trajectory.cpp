#include <doctest.h>

#include <random>
#include <sstream>

#include "gmfg/trajectory.hpp"

using namespace gmfg;

namespace {

Trajectory ramp(const TimeGrid& grid, std::size_t dim) {
  Trajectory t(grid, dim);
  for (std::size_t k = 0; k < t.rows(); ++k)
    for (std::size_t i = 0; i < dim; ++i) t(k, i) = static_cast<double>(k * 10 + i) * 0.25;
  return t;
}

}  // namespace

TEST_CASE("time grid") {
  const TimeGrid g(1.0, 200);
  CHECK(g.dt() == doctest::Approx(0.005));
  CHECK(g.time(0) == 0.0);
  CHECK(g.time(200) == 1.0);
  CHECK_THROWS(TimeGrid(1.0, 0));
  CHECK_THROWS(TimeGrid(0.0, 10));
}

TEST_CASE("sample is exact at nodes and linear in between") {
  const TimeGrid grid(2.0, 8);
  const Trajectory t = ramp(grid, 3);
  for (std::size_t k = 0; k <= 8; ++k) {
    const auto v = t.sample(grid.time(k));
    for (std::size_t i = 0; i < 3; ++i) CHECK(v[i] == t(k, i));
  }
  const auto mid = t.sample(0.5 * (grid.time(3) + grid.time(4)));
  for (std::size_t i = 0; i < 3; ++i) CHECK(mid[i] == doctest::Approx(0.5 * (t(3, i) + t(4, i))));

  const std::vector<double> c{0.1, 0.9};
  const Trajectory flat = Trajectory::constant(grid, c);
  for (double s : {0.0, 0.3, 1.111, 2.0}) CHECK(flat.sample(s) == c);
}

TEST_CASE("sample range") {
  const Trajectory t = ramp(TimeGrid(1.0, 4), 1);
  CHECK_NOTHROW(t.sample(1.0 + 5e-13));
  CHECK_NOTHROW(t.sample(-5e-13));
  CHECK_THROWS_AS(t.sample(1.0 + 1e-9), std::out_of_range);
  CHECK_THROWS_AS(t.sample(-1e-9), std::out_of_range);
}

TEST_CASE("sample is 1-Lipschitz in the stored values") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0, 1);
  const TimeGrid grid(1.0, 10);
  for (int trial = 0; trial < 100; ++trial) {
    Trajectory a = ramp(grid, 2);
    Trajectory b = a;
    const std::size_t k = static_cast<std::size_t>(unit(rng) * 11) % 11;
    const double delta = 2.0 * unit(rng) - 1.0;
    b(k, 0) += delta;
    b(k, 1) += delta;
    const double t = unit(rng);
    const auto sa = a.sample(t);
    const auto sb = b.sample(t);
    for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(sa[i] - sb[i]) <= std::abs(delta) + 1e-15);
  }
}

TEST_CASE("sup_distance") {
  const TimeGrid grid(1.0, 5);
  const Trajectory a = ramp(grid, 2);
  CHECK(sup_distance(a, a) == 0.0);
  Trajectory b = a;
  for (auto& x : b.data()) x += 0.5;
  CHECK(sup_distance(a, b) == doctest::Approx(0.5));
  Trajectory c = a;
  c(3, 1) -= 2.0;
  CHECK(sup_distance(a, c) == 2.0);
  CHECK_THROWS(sup_distance(a, ramp(TimeGrid(1.0, 6), 2)));
  CHECK_THROWS(sup_distance(a, ramp(grid, 3)));
}

TEST_CASE("csv layout") {
  Trajectory t(TimeGrid(1.0, 2), 2, {0.1, 0.9, 0.25, 0.75, 1.0 / 3.0, 2.0 / 3.0});
  std::ostringstream os;
  t.write_csv(os);
  CHECK(os.str() ==
        "t,node_1,node_2\n"
        "0,0.10000000000000001,0.90000000000000002\n"
        "0.5,0.25,0.75\n"
        "1,0.33333333333333331,0.66666666666666663\n");
}

TEST_CASE("non-finite values are detected") {
  Trajectory t(TimeGrid(1.0, 2), 1);
  CHECK_NOTHROW(t.check_finite());
  t(1, 0) = NAN;
  CHECK_THROWS(t.check_finite());
}
