#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace gmfg {

/// Halton sequence in [0,1)^dim, optionally with a Cranley-Patterson rotation
/// drawn from `seed` (seed 0 means no rotation). Index 0 is skipped so no
/// coordinate is exactly zero in the unrotated sequence.
class Halton {
 public:
  explicit Halton(std::size_t dim, std::uint64_t seed = 0);

  std::size_t dim() const { return bases_.size(); }
  void point(std::uint64_t index, std::span<double> out) const;

 private:
  std::vector<unsigned> bases_;
  std::vector<double> shift_;
};

/// Maps a point of the open unit cube onto the simplex through normalized
/// exponential spacings (uniform Dirichlet). out.size() == unit.size().
void cube_to_simplex(std::span<const double> unit, std::span<double> out);

/// Fixed design used to estimate sups over the simplex: the N vertices
/// followed by `count` Halton points mapped onto the simplex.
std::vector<std::vector<double>> simplex_design(std::size_t n, std::size_t count = 1000);

std::vector<double> random_simplex_point(std::mt19937_64& rng, std::size_t n);

}  // namespace gmfg
