#include "gmfg/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace gmfg {

TimeGrid::TimeGrid(double horizon, std::size_t steps) : horizon_(horizon), steps_(steps) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("time horizon must be positive and finite");
  if (steps < 1) throw std::invalid_argument("time grid needs at least one step");
}

double TimeGrid::time(std::size_t k) const {
  if (k == steps_) return horizon_;
  return horizon_ * static_cast<double>(k) / static_cast<double>(steps_);
}

Trajectory::Trajectory(TimeGrid grid, std::size_t dim)
    : grid_(grid), dim_(dim), values_((grid.steps() + 1) * dim, 0.0) {}

Trajectory::Trajectory(TimeGrid grid, std::size_t dim, std::vector<double> values)
    : grid_(grid), dim_(dim), values_(std::move(values)) {
  if (values_.size() != (grid_.steps() + 1) * dim_)
    throw std::invalid_argument("trajectory values do not match grid and dimension");
}

Trajectory Trajectory::constant(TimeGrid grid, std::span<const double> value) {
  Trajectory t(grid, value.size());
  for (std::size_t k = 0; k < t.rows(); ++k) std::copy(value.begin(), value.end(), t.row(k).begin());
  return t;
}

std::span<double> Trajectory::row(std::size_t k) {
  return std::span<double>(values_).subspan(k * dim_, dim_);
}

std::span<const double> Trajectory::row(std::size_t k) const {
  return std::span<const double>(values_).subspan(k * dim_, dim_);
}

void Trajectory::sample_into(double t, std::span<double> out) const {
  constexpr double slack = 1e-12;
  const double horizon = grid_.horizon();
  if (!(t >= -slack && t <= horizon + slack))
    throw std::out_of_range("sample time " + format_real(t) + " outside [0, T]");
  t = std::clamp(t, 0.0, horizon);

  const std::size_t steps = grid_.steps();
  const double x = t / grid_.dt();
  std::size_t k = static_cast<std::size_t>(std::floor(x));
  if (k >= steps) k = steps - 1;
  double w = x - static_cast<double>(k);
  w = std::clamp(w, 0.0, 1.0);

  const auto lo = row(k);
  const auto hi = row(k + 1);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (w == 0.0) out[i] = lo[i];
    else if (w == 1.0) out[i] = hi[i];
    else out[i] = lo[i] + w * (hi[i] - lo[i]);
  }
}

std::vector<double> Trajectory::sample(double t) const {
  std::vector<double> out(dim_);
  sample_into(t, out);
  return out;
}

void Trajectory::check_finite() const {
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("trajectory contains non-finite values");
}

void Trajectory::write_csv(std::ostream& os) const {
  os << 't';
  for (std::size_t i = 0; i < dim_; ++i) os << ",node_" << (i + 1);
  os << '\n';
  for (std::size_t k = 0; k < rows(); ++k) {
    os << format_real(grid_.time(k));
    for (double v : row(k)) os << ',' << format_real(v);
    os << '\n';
  }
}

double sup_distance(const Trajectory& a, const Trajectory& b) {
  if (!(a.grid() == b.grid()) || a.dim() != b.dim())
    throw std::invalid_argument("sup_distance: trajectories live on different grids");
  double d = 0.0;
  for (std::size_t n = 0; n < a.values().size(); ++n)
    d = std::max(d, std::abs(a.values()[n] - b.values()[n]));
  return d;
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace gmfg
