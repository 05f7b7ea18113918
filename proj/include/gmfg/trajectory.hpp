#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace gmfg {

/// Uniform grid t_k = k T / K, k = 0..K.
class TimeGrid {
 public:
  TimeGrid(double horizon, std::size_t steps);

  double horizon() const { return horizon_; }
  std::size_t steps() const { return steps_; }
  double dt() const { return horizon_ / static_cast<double>(steps_); }
  double time(std::size_t k) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double horizon_;
  std::size_t steps_;
};

/// Function [0,T] -> R^N stored at the grid nodes, (K+1) rows of N values.
class Trajectory {
 public:
  Trajectory(TimeGrid grid, std::size_t dim);
  Trajectory(TimeGrid grid, std::size_t dim, std::vector<double> values);

  /// Same vector at every node.
  static Trajectory constant(TimeGrid grid, std::span<const double> value);

  const TimeGrid& grid() const { return grid_; }
  std::size_t dim() const { return dim_; }
  std::size_t rows() const { return grid_.steps() + 1; }

  std::span<double> row(std::size_t k);
  std::span<const double> row(std::size_t k) const;
  double operator()(std::size_t k, std::size_t i) const { return values_[k * dim_ + i]; }
  double& operator()(std::size_t k, std::size_t i) { return values_[k * dim_ + i]; }
  const std::vector<double>& values() const { return values_; }
  std::span<double> data() { return values_; }

  /// Piecewise-linear interpolation, exact at the nodes. t may exceed [0,T]
  /// by 1e-12; anything further throws std::out_of_range.
  std::vector<double> sample(double t) const;
  void sample_into(double t, std::span<double> out) const;

  /// Throws std::invalid_argument if any entry is NaN or infinite.
  void check_finite() const;

  /// Header `t,node_1,...,node_N`, one row per grid node, 17 significant digits.
  void write_csv(std::ostream& os) const;

 private:
  TimeGrid grid_;
  std::size_t dim_;
  std::vector<double> values_;
};

/// max over nodes and coordinates of |a - b|; grids and dims must match.
double sup_distance(const Trajectory& a, const Trajectory& b);

/// Round-trip text for a double, 17 significant digits.
std::string format_real(double x);

}  // namespace gmfg
