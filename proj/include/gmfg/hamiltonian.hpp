#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "gmfg/coupling.hpp"
#include "gmfg/graph.hpp"

namespace gmfg {

/// Raw partial derivatives of the congestion part H_c at (i, p, m), with
/// d = out_degree(i) and N = graph size. Edge coordinates follow Graph::out(i).
struct SecondPartials {
  Eigen::MatrixXd pp;  // d x d, d2 H_c / dp_j dp_k
  Eigen::MatrixXd pm;  // d x N, d2 H_c / dp_j dm_l
  Eigen::MatrixXd mp;  // N x d, d2 H_c / dm_l dp_k
  Eigen::VectorXd m;   // N,     d H_c / dm_l
};

/// Hamiltonians H(i,p,m) = sup over nonnegative rates of lambda.p - L(i,lambda,m),
/// given in the split form H = H_c + f together with the terminal payoff g.
///
/// Public evaluators validate (i, p, m) and then dispatch to the family. A
/// point is in the domain when m has one finite entry per node, each greater
/// than -domain_margin(), and p has one finite entry per out-edge of i.
/// Nodes without out-edges have H(i,(),m) = f(i,m).
class HamiltonianModel {
 public:
  HamiltonianModel(Graph graph, Coupling f, Coupling g, double domain_margin);
  virtual ~HamiltonianModel() = default;

  const Graph& graph() const { return graph_; }
  std::size_t size() const { return graph_.size(); }
  double domain_margin() const { return domain_margin_; }
  const Coupling& f() const { return f_; }
  const Coupling& g() const { return g_; }

  double hamiltonian(Node i, std::span<const double> p, std::span<const double> m) const;
  double congestion(Node i, std::span<const double> p, std::span<const double> m) const;

  /// Optimal transition rates dH/dp(i,p,m); nonnegative.
  std::vector<double> rates(Node i, std::span<const double> p, std::span<const double> m) const;

  /// Throws NonDifferentiablePoint where H_c is not twice differentiable.
  SecondPartials second_partials(Node i, std::span<const double> p,
                                 std::span<const double> m) const;

  double coupling(Node i, std::span<const double> m) const;
  double terminal(Node i, std::span<const double> m) const;

  /// Running cost L(i, lambda, m) when the family has it in closed form.
  virtual std::optional<double> running_cost(Node i, std::span<const double> lambda,
                                             std::span<const double> m) const;

  void check_distribution(std::span<const double> m) const;

 protected:
  virtual double congestion_impl(Node i, std::span<const double> p,
                                 std::span<const double> m) const = 0;
  virtual std::vector<double> rates_impl(Node i, std::span<const double> p,
                                         std::span<const double> m) const = 0;

  /// Central differences with step 1e-5 * max(1, |x|). D_pp comes from the
  /// rates and is symmetrized; both mixed blocks come from the m-derivative
  /// of the rates, so pm == mp^T exactly on this path.
  virtual SecondPartials second_partials_impl(Node i, std::span<const double> p,
                                              std::span<const double> m) const;

 private:
  void check_point(Node i, std::span<const double> p, std::span<const double> m) const;

  Graph graph_;
  Coupling f_;
  Coupling g_;
  double domain_margin_;
};

/// H_c(i,p,m) = sum_{j in V(i)} max(p_j,0)^2 / (2 c_ij(m)),
/// c_ij(m) = (eps + m_i)^alpha (eps + m_j)^beta,
/// i.e. the Legendre transform of L(i,lambda,m) = sum_j c_ij(m) lambda_j^2 / 2 - f(i,m).
class QuadraticCongestion final : public HamiltonianModel {
 public:
  struct Params {
    double alpha = 0.0;
    double beta = 0.0;
    double eps = 1e-2;
  };

  static constexpr double kink_tol = 1e-12;

  QuadraticCongestion(Graph graph, Params params, Coupling f, Coupling g);

  const Params& params() const { return params_; }

  /// Congestion weight c_ij(m) of edge (i, j).
  double weight(Node i, Node j, std::span<const double> m) const;

  std::optional<double> running_cost(Node i, std::span<const double> lambda,
                                     std::span<const double> m) const override;

 protected:
  double congestion_impl(Node i, std::span<const double> p,
                         std::span<const double> m) const override;
  std::vector<double> rates_impl(Node i, std::span<const double> p,
                                 std::span<const double> m) const override;
  SecondPartials second_partials_impl(Node i, std::span<const double> p,
                                      std::span<const double> m) const override;

 private:
  Params params_;
};

}  // namespace gmfg
