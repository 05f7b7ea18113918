#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "gmfg/hamiltonian.hpp"
#include "gmfg/sampling.hpp"

namespace gmfg::test {

inline Graph ring(std::size_t n) {
  std::vector<Edge> e;
  for (Node i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::build(n, e);
}

inline Graph two_node() { return Graph::build(2, std::vector<Edge>{{0, 1}, {1, 0}}); }

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Node i = 0; i < n; ++i)
    for (Node j = 0; j < n; ++j)
      if (i != j) e.emplace_back(i, j);
  return Graph::build(n, e);
}

/// Random graph without self-loops; every node gets at most `max_deg` out-edges.
inline Graph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t max_deg) {
  std::vector<Edge> e;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (Node i = 0; i < n; ++i) {
    std::size_t deg = 0;
    for (Node j = 0; j < n && deg < max_deg; ++j) {
      if (i != j && unit(rng) < 0.5) {
        e.emplace_back(i, j);
        ++deg;
      }
    }
  }
  return Graph::build(n, e);
}

inline std::shared_ptr<QuadraticCongestion> quadratic(Graph g, double alpha, double beta, double eps,
                                                      Coupling f = Coupling::zero(),
                                                      Coupling g_term = Coupling::zero()) {
  return std::make_shared<QuadraticCongestion>(std::move(g),
                                               QuadraticCongestion::Params{alpha, beta, eps},
                                               std::move(f), std::move(g_term));
}

inline std::vector<double> uniform_vec(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace gmfg::test
