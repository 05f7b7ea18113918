#include "gmfg/coupling.hpp"

#include <cmath>

#include "gmfg/errors.hpp"

namespace gmfg {

Coupling Coupling::zero() { return Coupling{}; }

Coupling Coupling::constant(std::vector<double> values) {
  Coupling c;
  c.kind_ = Kind::constant;
  c.coeffs_ = std::move(values);
  return c;
}

Coupling Coupling::logit(double kappa, double eps) {
  if (!(eps >= 0.0)) throw ModelError("logit coupling: eps must be >= 0");
  Coupling c;
  c.kind_ = Kind::logit;
  c.kappa_ = kappa;
  c.eps_ = eps;
  return c;
}

Coupling Coupling::linear(std::vector<double> coefficients) {
  Coupling c;
  c.kind_ = Kind::linear;
  c.coeffs_ = std::move(coefficients);
  return c;
}

std::string Coupling::name() const {
  switch (kind_) {
    case Kind::zero: return "zero";
    case Kind::constant: return "constant";
    case Kind::logit: return "logit";
    case Kind::linear: return "linear";
  }
  return "?";
}

void Coupling::check_size(std::size_t n) const {
  if ((kind_ == Kind::constant || kind_ == Kind::linear) && coeffs_.size() != n) {
    throw ModelError(name() + " coupling has " + std::to_string(coeffs_.size()) +
                     " coefficients for " + std::to_string(n) + " nodes");
  }
}

double Coupling::operator()(std::size_t i, std::span<const double> m) const {
  switch (kind_) {
    case Kind::zero: return 0.0;
    case Kind::constant: return coeffs_.at(i);
    case Kind::linear: return coeffs_.at(i) * m[i];
    case Kind::logit: {
      const double x = eps_ + m[i];
      if (!(x > 0.0)) {
        throw DomainError("logit coupling evaluated at eps + m_" + std::to_string(i) + " <= 0");
      }
      return -kappa_ * std::log(x);
    }
  }
  return 0.0;
}

}  // namespace gmfg
