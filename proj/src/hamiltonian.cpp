#include "gmfg/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmfg/errors.hpp"

namespace gmfg {

namespace {

double fd_step(double x) { return 1e-5 * std::max(1.0, std::abs(x)); }

}  // namespace

HamiltonianModel::HamiltonianModel(Graph graph, Coupling f, Coupling g, double domain_margin)
    : graph_(std::move(graph)), f_(std::move(f)), g_(std::move(g)), domain_margin_(domain_margin) {
  if (!(domain_margin_ > 0.0)) throw ModelError("domain margin must be > 0");
  f_.check_size(graph_.size());
  g_.check_size(graph_.size());
}

void HamiltonianModel::check_distribution(std::span<const double> m) const {
  if (m.size() != graph_.size()) {
    throw DomainError("distribution has " + std::to_string(m.size()) + " entries, graph has " +
                      std::to_string(graph_.size()) + " nodes");
  }
  for (std::size_t l = 0; l < m.size(); ++l) {
    if (!std::isfinite(m[l]) || !(m[l] > -domain_margin_)) {
      throw DomainError("m_" + std::to_string(l) + " = " + std::to_string(m[l]) +
                        " lies outside the evaluation domain");
    }
  }
}

void HamiltonianModel::check_point(Node i, std::span<const double> p,
                                   std::span<const double> m) const {
  if (i >= graph_.size()) throw DomainError("node " + std::to_string(i) + " out of range");
  if (p.size() != graph_.out_degree(i)) {
    throw DomainError("p has " + std::to_string(p.size()) + " entries, node " + std::to_string(i) +
                      " has out-degree " + std::to_string(graph_.out_degree(i)));
  }
  for (double x : p)
    if (!std::isfinite(x)) throw DomainError("non-finite p entry");
  check_distribution(m);
}

double HamiltonianModel::hamiltonian(Node i, std::span<const double> p,
                                     std::span<const double> m) const {
  check_point(i, p, m);
  return congestion_impl(i, p, m) + f_(i, m);
}

double HamiltonianModel::congestion(Node i, std::span<const double> p,
                                    std::span<const double> m) const {
  check_point(i, p, m);
  return congestion_impl(i, p, m);
}

std::vector<double> HamiltonianModel::rates(Node i, std::span<const double> p,
                                            std::span<const double> m) const {
  check_point(i, p, m);
  return rates_impl(i, p, m);
}

SecondPartials HamiltonianModel::second_partials(Node i, std::span<const double> p,
                                                 std::span<const double> m) const {
  check_point(i, p, m);
  return second_partials_impl(i, p, m);
}

double HamiltonianModel::coupling(Node i, std::span<const double> m) const {
  check_distribution(m);
  return f_(i, m);
}

double HamiltonianModel::terminal(Node i, std::span<const double> m) const {
  check_distribution(m);
  return g_(i, m);
}

std::optional<double> HamiltonianModel::running_cost(Node, std::span<const double>,
                                                     std::span<const double>) const {
  return std::nullopt;
}

SecondPartials HamiltonianModel::second_partials_impl(Node i, std::span<const double> p,
                                                      std::span<const double> m) const {
  const std::size_t d = p.size();
  const std::size_t n = m.size();
  SecondPartials out{Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Zero(d, n),
                     Eigen::MatrixXd::Zero(n, d), Eigen::VectorXd::Zero(n)};

  std::vector<double> pw(p.begin(), p.end());
  for (std::size_t j = 0; j < d; ++j) {
    const double h = fd_step(p[j]);
    pw[j] = p[j] + h;
    const auto up = rates_impl(i, pw, m);
    pw[j] = p[j] - h;
    const auto dn = rates_impl(i, pw, m);
    pw[j] = p[j];
    for (std::size_t k = 0; k < d; ++k) out.pp(j, k) = (up[k] - dn[k]) / (2 * h);
  }
  out.pp = 0.5 * (out.pp + out.pp.transpose()).eval();

  std::vector<double> mw(m.begin(), m.end());
  for (std::size_t l = 0; l < n; ++l) {
    const double h = fd_step(m[l]);
    mw[l] = m[l] + h;
    const double hu = congestion_impl(i, p, mw);
    const auto ru = rates_impl(i, p, mw);
    mw[l] = m[l] - h;
    const double hd = congestion_impl(i, p, mw);
    const auto rd = rates_impl(i, p, mw);
    mw[l] = m[l];
    out.m(l) = (hu - hd) / (2 * h);
    for (std::size_t k = 0; k < d; ++k) out.mp(l, k) = (ru[k] - rd[k]) / (2 * h);
  }
  out.pm = out.mp.transpose();
  return out;
}

QuadraticCongestion::QuadraticCongestion(Graph graph, Params params, Coupling f, Coupling g)
    : HamiltonianModel(std::move(graph), std::move(f), std::move(g),
                       params.eps > 0.0 ? params.eps : 1.0),
      params_(params) {
  if (!(params_.eps > 0.0)) throw ModelError("quadratic_congestion: eps must be > 0");
  if (!(params_.alpha >= 0.0)) throw ModelError("quadratic_congestion: alpha must be >= 0");
  if (!(params_.beta >= 0.0)) throw ModelError("quadratic_congestion: beta must be >= 0");
}

double QuadraticCongestion::weight(Node i, Node j, std::span<const double> m) const {
  return std::pow(params_.eps + m[i], params_.alpha) * std::pow(params_.eps + m[j], params_.beta);
}

double QuadraticCongestion::congestion_impl(Node i, std::span<const double> p,
                                            std::span<const double> m) const {
  const auto targets = graph().out(i);
  double h = 0.0;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const double pos = std::max(p[k], 0.0);
    h += pos * pos / (2.0 * weight(i, targets[k], m));
  }
  return h;
}

std::vector<double> QuadraticCongestion::rates_impl(Node i, std::span<const double> p,
                                                    std::span<const double> m) const {
  const auto targets = graph().out(i);
  std::vector<double> r(targets.size());
  for (std::size_t k = 0; k < targets.size(); ++k)
    r[k] = std::max(p[k], 0.0) / weight(i, targets[k], m);
  return r;
}

SecondPartials QuadraticCongestion::second_partials_impl(Node i, std::span<const double> p,
                                                         std::span<const double> m) const {
  const auto targets = graph().out(i);
  const std::size_t d = targets.size();
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < d; ++k) {
    if (std::abs(p[k]) < kink_tol) {
      throw NonDifferentiablePoint("quadratic_congestion: p_" + std::to_string(k) + " at node " +
                                   std::to_string(i) + " sits on the positive-part kink");
    }
  }

  const double a = params_.alpha;
  const double b = params_.beta;
  const double si = params_.eps + m[i];
  SecondPartials out{Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Zero(d, n),
                     Eigen::MatrixXd::Zero(n, d), Eigen::VectorXd::Zero(n)};

  for (std::size_t k = 0; k < d; ++k) {
    const Node j = targets[k];
    const double sj = params_.eps + m[j];
    const double c = weight(i, j, m);
    const double pos = std::max(p[k], 0.0);
    const double term = pos * pos / (2.0 * c);
    const double rate = pos / c;

    // d/dm of 1/c_ij is -(alpha/s_i) / c_ij along m_i and -(beta/s_j) / c_ij along m_j.
    out.m(i) -= a / si * term;
    out.m(j) -= b / sj * term;

    out.pp(k, k) = p[k] > 0.0 ? 1.0 / c : 0.0;

    out.mp(i, k) -= a / si * rate;
    out.mp(j, k) -= b / sj * rate;
  }
  for (std::size_t k = 0; k < d; ++k) {
    const Node j = targets[k];
    const double rate = std::max(p[k], 0.0) / weight(i, j, m);
    out.pm(k, i) -= a / si * rate;
    out.pm(k, j) -= b / (params_.eps + m[j]) * rate;
  }
  return out;
}

std::optional<double> QuadraticCongestion::running_cost(Node i, std::span<const double> lambda,
                                                        std::span<const double> m) const {
  const auto targets = graph().out(i);
  if (lambda.size() != targets.size()) throw DomainError("lambda size does not match out-degree");
  check_distribution(m);
  double cost = 0.0;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if (lambda[k] < 0.0) throw DomainError("rates must be nonnegative");
    cost += 0.5 * weight(i, targets[k], m) * lambda[k] * lambda[k];
  }
  return cost - f()(i, m);
}

}  // namespace gmfg
