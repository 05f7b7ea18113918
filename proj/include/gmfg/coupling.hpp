#pragma once

#include <span>
#include <string>
#include <vector>

namespace gmfg {

/// Per-node function of the distribution, used both as the additive part f of
/// the Hamiltonian and as the terminal payoff g.
///
///   zero      h(i,m) = 0
///   constant  h(i,m) = c_i
///   logit     h(i,m) = -kappa * log(eps + m_i)
///   linear    h(i,m) = a_i * m_i
class Coupling {
 public:
  enum class Kind { zero, constant, logit, linear };

  static Coupling zero();
  static Coupling constant(std::vector<double> values);
  static Coupling logit(double kappa, double eps);
  static Coupling linear(std::vector<double> coefficients);

  Kind kind() const { return kind_; }
  std::string name() const;
  double kappa() const { return kappa_; }
  double eps() const { return eps_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  /// Throws DomainError when eps + m_i <= 0 for the logit kind.
  double operator()(std::size_t i, std::span<const double> m) const;

  /// Per-node coefficient vectors must match the node count.
  void check_size(std::size_t n) const;

 private:
  Kind kind_ = Kind::zero;
  double kappa_ = 0.0;
  double eps_ = 0.0;
  std::vector<double> coeffs_;
};

}  // namespace gmfg
