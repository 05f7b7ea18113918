#include <doctest.h>

#include <cmath>
#include <random>

#include "gmfg/errors.hpp"
#include "gmfg/hamiltonian.hpp"
#include "gmfg/oracle.hpp"
#include "gmfg/sampling.hpp"
#include "helpers.hpp"

using namespace gmfg;
using doctest::Approx;

namespace {

// Smooth family without closed-form second partials:
// H_c(i,p,m) = w_i(m) sum_j log(1 + exp(p_j)), w_i(m) = 1 + m_i^2 + sum_j m_j.
class SoftplusModel final : public HamiltonianModel {
 public:
  explicit SoftplusModel(Graph g) : HamiltonianModel(std::move(g), Coupling::zero(), Coupling::zero(), 0.5) {}

  double weight(Node i, std::span<const double> m) const {
    double w = 1.0 + m[i] * m[i];
    for (Node j : graph().out(i)) w += m[j];
    return w;
  }

 protected:
  double congestion_impl(Node i, std::span<const double> p, std::span<const double> m) const override {
    double s = 0.0;
    for (double x : p) s += std::log1p(std::exp(x));
    return weight(i, m) * s;
  }
  std::vector<double> rates_impl(Node i, std::span<const double> p, std::span<const double> m) const override {
    std::vector<double> r(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) r[k] = weight(i, m) / (1.0 + std::exp(-p[k]));
    return r;
  }
};

double central(const std::function<double(double)>& fn, double x, double h) {
  return (fn(x + h) - fn(x - h)) / (2 * h);
}

}  // namespace

TEST_CASE("congestion-free quadratic closed form") {
  const auto model = test::quadratic(test::complete(3), 0, 0, 1.0);
  const std::vector<double> m{0.2, 0.3, 0.5};
  const std::vector<double> p{0.7, -0.4};
  CHECK(model->hamiltonian(0, p, m) == Approx(0.7 * 0.7 / 2));
  const auto r = model->rates(0, p, m);
  CHECK(r[0] == Approx(0.7));
  CHECK(r[1] == 0.0);
}

TEST_CASE("nonpositive p gives H = f and zero rates") {
  const auto model = test::quadratic(test::complete(3), 1.0, 0.5, 0.1, Coupling::linear({-1, 2, 3}));
  const std::vector<double> m{0.2, 0.3, 0.5};
  const std::vector<double> p{-1.0, -2.0};
  CHECK(model->hamiltonian(0, p, m) == Approx(-0.2));
  const auto r = model->rates(0, p, m);
  CHECK(r[0] == 0.0);
  CHECK(r[1] == 0.0);
}

TEST_CASE("congestion on the source node: rate 2, H term 1") {
  const auto model = test::quadratic(test::two_node(), 1.0, 0.0, 0.1);
  const std::vector<double> m{0.4, 0.6};
  const std::vector<double> p{1.0};
  CHECK(model->rates(0, p, m)[0] == Approx(2.0).epsilon(1e-14));
  CHECK(model->hamiltonian(0, p, m) == Approx(1.0).epsilon(1e-14));

  const oracle::RunningCost cost = [&](std::span<const double> lam, std::span<const double> mm) {
    return *model->running_cost(0, lam, mm);
  };
  const auto ref = oracle::brute_force_legendre(cost, p, m, 5.0, 1000);
  CHECK(ref.value == Approx(1.0).epsilon(1e-6));
  CHECK(ref.argmax[0] == Approx(2.0));
}

TEST_CASE("eval_H examples") {
  const auto model = test::quadratic(test::complete(3), 0, 0, 1.0, Coupling::linear({1, 2, 3}));
  const std::vector<double> m{0.2, 0.3, 0.5};
  CHECK(model->hamiltonian(1, std::vector<double>{0.0, 0.0}, m) == Approx(0.6));

  const auto unit = test::quadratic(test::complete(3), 0, 0, 1.0);
  CHECK(unit->hamiltonian(0, std::vector<double>{1.0, 1.0}, m) == Approx(1.0));

  const auto cong = test::quadratic(test::two_node(), 1.0, 0.5, 0.1);
  const std::vector<double> m2{0.4, 0.6};
  CHECK(cong->hamiltonian(0, std::vector<double>{0.5}, m2) <
        cong->hamiltonian(0, std::vector<double>{0.7}, m2));
}

TEST_CASE("sink nodes: H = f") {
  const Graph g = Graph::build(2, std::vector<Edge>{{0, 1}});
  const auto model = test::quadratic(g, 1, 1, 0.1, Coupling::constant({0.0, 2.5}));
  const std::vector<double> m{0.5, 0.5};
  CHECK(model->hamiltonian(1, std::vector<double>{}, m) == 2.5);
  CHECK(model->rates(1, std::vector<double>{}, m).empty());
}

TEST_CASE("domain and parameter errors") {
  const auto model = test::quadratic(test::two_node(), 1.0, 0.0, 0.01);
  CHECK_THROWS_AS((void)model->hamiltonian(0, std::vector<double>{1.0}, std::vector<double>{-0.02, 1.0}), DomainError);
  CHECK_THROWS_AS((void)model->hamiltonian(0, std::vector<double>{1.0}, std::vector<double>{0.5}), DomainError);
  CHECK_THROWS_AS((void)model->hamiltonian(0, std::vector<double>{1.0, 2.0}, std::vector<double>{0.5, 0.5}), DomainError);
  CHECK_THROWS_AS((void)model->hamiltonian(0, std::vector<double>{NAN}, std::vector<double>{0.5, 0.5}), DomainError);
  CHECK_NOTHROW((void)model->hamiltonian(0, std::vector<double>{1.0}, std::vector<double>{-0.005, 1.005}));
  CHECK_THROWS_AS(test::quadratic(test::two_node(), 1.0, 0.0, 0.0), ModelError);
  CHECK_THROWS_AS(test::quadratic(test::two_node(), 1.0, 0.0, -1.0), ModelError);
  CHECK_THROWS_AS(test::quadratic(test::two_node(), 0, 0, 0.1, Coupling::linear({1.0})), ModelError);
}

TEST_CASE("couplings") {
  const std::vector<double> m{std::exp(-1.0), 1.0 - std::exp(-1.0)};
  CHECK(Coupling::logit(1.0, 0.0)(0, m) == Approx(1.0).epsilon(1e-15));
  CHECK(Coupling::zero()(1, m) == 0.0);
  CHECK(Coupling::linear({2.0, 3.0})(1, m) == Approx(3.0 * m[1]));
  CHECK_THROWS_AS((void)Coupling::logit(1.0, 0.0)(0, std::vector<double>{0.0, 1.0}), DomainError);

  // crowd-averse logit coupling pairs negatively with every distinct pair
  std::mt19937_64 rng(11);
  const Coupling f = Coupling::logit(1.0, 0.01);
  for (int k = 0; k < 200; ++k) {
    const auto a = random_simplex_point(rng, 4);
    const auto b = random_simplex_point(rng, 4);
    double pairing = 0.0;
    for (Node i = 0; i < 4; ++i) pairing += (f(i, a) - f(i, b)) * (a[i] - b[i]);
    CHECK(pairing < 0.0);
  }
}

TEST_CASE("second partials, congestion-free") {
  const auto model = test::quadratic(test::complete(3), 0, 0, 0.5);
  const std::vector<double> m{0.2, 0.3, 0.5};
  const auto sp = model->second_partials(0, std::vector<double>{0.3, -0.2}, m);
  CHECK(sp.pp(0, 0) == 1.0);
  CHECK(sp.pp(1, 1) == 0.0);
  CHECK(sp.pp(0, 1) == 0.0);
  CHECK(sp.pm.isZero());
  CHECK(sp.mp.isZero());
  CHECK(sp.m.isZero());
}

TEST_CASE("second partials match finite differences of H_c and the rates") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const double alpha = trial % 2 ? 1.0 : 0.5;
    const double beta = trial % 3 ? 0.7 : 0.0;
    const auto model = test::quadratic(test::complete(3), alpha, beta, 0.1);
    const Node i = static_cast<Node>(trial % 3);
    auto p = test::uniform_vec(rng, 2, -2, 2);
    const auto m = random_simplex_point(rng, 3);
    const auto sp = model->second_partials(i, p, m);

    const double h = 1e-6;
    for (Node l = 0; l < 3; ++l) {
      auto fn = [&](double x) {
        auto mm = m;
        mm[l] = x;
        return model->congestion(i, p, mm);
      };
      CHECK(sp.m(l) == Approx(central(fn, m[l], h)).epsilon(1e-6));
      for (std::size_t k = 0; k < 2; ++k) {
        auto gk = [&](double x) {
          auto mm = m;
          mm[l] = x;
          return model->rates(i, p, mm)[k];
        };
        const double fd = central(gk, m[l], h);
        CHECK(std::abs(sp.mp(l, k) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
        CHECK(std::abs(sp.pm(k, l) - sp.mp(l, k)) <= 1e-9);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sp.pp);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    CHECK((sp.pp - sp.pp.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("kink points are rejected") {
  const auto model = test::quadratic(test::two_node(), 1.0, 0.0, 0.1);
  CHECK_THROWS_AS((void)model->second_partials(0, std::vector<double>{0.0}, std::vector<double>{0.5, 0.5}),
                  NonDifferentiablePoint);
  CHECK_THROWS_AS((void)model->second_partials(0, std::vector<double>{1e-13}, std::vector<double>{0.5, 0.5}),
                  NonDifferentiablePoint);
}

TEST_CASE("finite-difference fallback on a generic family") {
  const SoftplusModel model(test::complete(3));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Node i = static_cast<Node>(trial % 3);
    const auto p = test::uniform_vec(rng, 2, -2, 2);
    const auto m = random_simplex_point(rng, 3);

    // grad_p against central differences of H at h = 1e-5
    const auto grad = model.rates(i, p, m);
    for (std::size_t j = 0; j < 2; ++j) {
      auto fn = [&](double x) {
        auto pp = p;
        pp[j] = x;
        return model.hamiltonian(i, pp, m);
      };
      CHECK(std::abs(central(fn, p[j], 1e-5) - grad[j]) <= 1e-6);
      CHECK(grad[j] >= 0.0);
    }

    // analytic second partials of the softplus family
    const auto sp = model.second_partials(i, p, m);
    const double w = model.weight(i, m);
    for (std::size_t j = 0; j < 2; ++j) {
      const double s = 1.0 / (1.0 + std::exp(-p[j]));
      CHECK(sp.pp(j, j) == Approx(w * s * (1 - s)).epsilon(1e-7));
    }
    const auto targets = model.graph().out(i);
    double softplus_sum = 0.0;
    for (double x : p) softplus_sum += std::log1p(std::exp(x));
    for (Node l = 0; l < 3; ++l) {
      double dw = (l == i ? 2.0 * m[i] : 0.0);
      if (std::find(targets.begin(), targets.end(), l) != targets.end()) dw += 1.0;
      CHECK(sp.m(l) == Approx(dw * softplus_sum).epsilon(1e-7));
      for (std::size_t k = 0; k < 2; ++k) {
        const double s = 1.0 / (1.0 + std::exp(-p[k]));
        CHECK(sp.mp(l, k) == Approx(dw * s).epsilon(1e-7));
        CHECK(sp.pm(k, l) == sp.mp(l, k));
      }
    }
  }
}

TEST_CASE("Legendre consistency, envelope identity and rate sign on random points") {
  std::mt19937_64 rng(17);
  const auto model = test::quadratic(test::complete(3), 1.0, 0.5, 0.1, Coupling::logit(1.0, 0.1));
  for (int s = 0; s < 100; ++s) {
    const Node i = static_cast<Node>(s % 3);
    const auto p = test::uniform_vec(rng, 2, -2, 2);
    const auto m = random_simplex_point(rng, 3);
    const auto r = model->rates(i, p, m);
    const double h = model->hamiltonian(i, p, m);

    CHECK(r[0] >= 0.0);
    CHECK(r[1] >= 0.0);
    const double envelope = r[0] * p[0] + r[1] * p[1] - *model->running_cost(i, r, m);
    CHECK(h == Approx(envelope).epsilon(1e-12));

    // decoupled coordinates: the 2-d sup splits into two 1-d sups
    const Node j0 = model->graph().out(i)[0];
    const Node j1 = model->graph().out(i)[1];
    double ref = Coupling::logit(1.0, 0.1)(i, m);
    for (std::size_t k = 0; k < 2; ++k) {
      const Node j = k == 0 ? j0 : j1;
      const double c = std::pow(0.1 + m[i], 1.0) * std::pow(0.1 + m[j], 0.5);
      const oracle::RunningCost cost = [c](std::span<const double> lam, std::span<const double>) {
        return 0.5 * c * lam[0] * lam[0];
      };
      const double lam_max = 1.0 + 2.0 * std::max(p[k], 0.0) / c;
      ref += oracle::brute_force_legendre(cost, std::vector<double>{p[k]}, m, lam_max, 20000).value;
    }
    CHECK(std::abs(h - ref) <= 1e-6);
  }
}

TEST_CASE("monotone in p") {
  std::mt19937_64 rng(23);
  const auto model = test::quadratic(test::complete(4), 0.5, 0.5, 0.05);
  for (int s = 0; s < 100; ++s) {
    const auto p = test::uniform_vec(rng, 3, -2, 2);
    auto q = p;
    for (auto& x : q) x += std::uniform_real_distribution<double>(0, 1)(rng);
    const auto m = random_simplex_point(rng, 4);
    CHECK(model->hamiltonian(1, p, m) <= model->hamiltonian(1, q, m));
  }
}
