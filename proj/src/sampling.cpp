#include "gmfg/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gmfg {

namespace {

std::vector<unsigned> first_primes(std::size_t count) {
  std::vector<unsigned> primes;
  for (unsigned c = 2; primes.size() < count; ++c) {
    bool prime = true;
    for (unsigned p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

double radical_inverse(std::uint64_t index, unsigned base) {
  const double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

}  // namespace

Halton::Halton(std::size_t dim, std::uint64_t seed) : bases_(first_primes(dim)), shift_(dim, 0.0) {
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (auto& s : shift_) s = unif(rng);
  }
}

void Halton::point(std::uint64_t index, std::span<double> out) const {
  for (std::size_t d = 0; d < bases_.size(); ++d) {
    double x = radical_inverse(index + 1, bases_[d]) + shift_[d];
    if (x >= 1.0) x -= 1.0;
    out[d] = x;
  }
}

void cube_to_simplex(std::span<const double> unit, std::span<double> out) {
  constexpr double tiny = 1e-300;
  double total = 0.0;
  for (std::size_t i = 0; i < unit.size(); ++i) {
    out[i] = -std::log(std::max(unit[i], tiny));
    total += out[i];
  }
  if (total <= 0.0) {
    // every coordinate hit 1.0: fall back to the barycenter
    for (auto& x : out) x = 1.0 / static_cast<double>(out.size());
    return;
  }
  for (auto& x : out) x /= total;
}

std::vector<std::vector<double>> simplex_design(std::size_t n, std::size_t count) {
  std::vector<std::vector<double>> pts;
  pts.reserve(n + count);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(n, 0.0);
    v[i] = 1.0;
    pts.push_back(std::move(v));
  }
  Halton seq(n);
  std::vector<double> u(n);
  for (std::size_t k = 0; k < count; ++k) {
    seq.point(k, u);
    std::vector<double> v(n);
    cube_to_simplex(u, v);
    pts.push_back(std::move(v));
  }
  return pts;
}

std::vector<double> random_simplex_point(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = expo(rng);
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  for (auto& x : v) x /= total;
  return v;
}

}  // namespace gmfg
