#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmfg/fixed_point.hpp"
#include "gmfg/hamiltonian.hpp"

namespace gmfg {

/// Block matrix of the uniqueness criterion, dimension N + sum_i d_i:
///
///   [ A    B^1  ...  B^N ]      A_ij     = -dH_c/dm_j (i, q_i, m)
///   [ C^1  D^1       0   ]      B^i_jk   = m_i d2H_c/dm_j dq_ik
///   [ ...       ...      ]      C^i_jk   = m_i d2H_c/dq_ij dm_k
///   [ C^N  0    ...  D^N ]      D^i_jk   = m_i d2H_c/dq_ij dq_ik
///
/// Node i's edge block starts at offset(i) and follows Graph::out(i).
struct BlockMatrixM {
  Eigen::MatrixXd matrix;
  std::vector<std::size_t> offsets;
  std::vector<std::vector<double>> q;
  std::vector<double> m;
  double schwarz_defect = 0.0;  // max |C^i - (B^i)^T|

  std::size_t nodes() const { return m.size(); }
  std::size_t offset(Node i) const { return offsets[i]; }
  std::size_t block_size(Node i) const { return q[i].size(); }

  Eigen::MatrixXd A() const;
  Eigen::MatrixXd B(Node i) const;
  Eigen::MatrixXd C(Node i) const;
  Eigen::MatrixXd D(Node i) const;
};

inline constexpr double schwarz_tol = 1e-8;

/// Throws NonDifferentiablePoint from the model at kinks, and ModelError if
/// the two mixed blocks disagree by more than schwarz_tol.
BlockMatrixM assemble_M(const HamiltonianModel& model, const std::vector<std::vector<double>>& q,
                        std::span<const double> m);

/// Smallest eigenvalue of (M + M^T) / 2.
double min_sym_eigenvalue(const Eigen::MatrixXd& M);

using NodeFunction = std::function<double(Node, std::span<const double>)>;

struct MonotonicityRecord {
  std::size_t n_pairs = 0;
  std::size_t flagged_pairs = 0;  // pairings >= -mono_tol with m != mu
  double min_pairing = 0.0;
  double max_pairing = 0.0;
  std::vector<double> worst_m;  // argmax of the pairing, the pair closest to violating
  std::vector<double> worst_mu;

  bool holds() const { return n_pairs > 0 && flagged_pairs == 0; }
};

/// Samples random simplex pairs (m, mu) and records
/// sum_i (fn(i,m) - fn(i,mu)) (m_i - mu_i). The implication
/// "pairing >= 0 implies m = mu" holds on the sample iff every pairing is
/// below -mono_tol.
MonotonicityRecord check_monotone(const NodeFunction& fn, std::size_t n, std::size_t n_pairs,
                                  std::uint64_t seed, double mono_tol = 1e-12);

enum class Verdict { certified_on_samples, violated, inconclusive };
std::string to_string(Verdict v);

struct SamplerConfig {
  std::size_t n_samples = 2000;
  std::size_t n_pairs = 1000;
  double psd_tol = 1e-9;
  double mono_tol = 1e-12;
  std::optional<double> q_max;  // default: 2 * a_priori_bound(model, horizon)
  double horizon = 1.0;
  std::uint64_t seed = 1;
};

struct UniquenessReport {
  std::size_t n_samples = 0;
  std::size_t evaluated_samples = 0;
  std::size_t skipped_kink_samples = 0;
  double q_max = 0.0;
  std::optional<double> min_eig_overall;
  std::vector<std::vector<double>> witness_q;
  std::vector<double> witness_m;
  MonotonicityRecord f_monotone;
  MonotonicityRecord g_monotone;
  Verdict verdict = Verdict::inconclusive;
};

/// Evaluates min_sym_eigenvalue(M) on n_samples Halton points of
/// [-q_max, q_max]^{sum d_i} x simplex, skipping kink points, and checks f and
/// g for monotonicity on n_pairs random pairs each.
UniquenessReport certify_psd(const HamiltonianModel& model, const SamplerConfig& config);

struct AgreementReport {
  bool criterion_satisfied = true;
  bool inconclusive = false;
  bool converged_first = false;
  bool converged_second = false;
  double m_distance = 0.0;
  double u_distance = 0.0;
  double tol_agree = 1e-5;
  bool agree() const {
    return !inconclusive && m_distance <= tol_agree && u_distance <= tol_agree;
  }
};

/// Solves from the constant m0 guess and from vertex_guess and compares the
/// results in sup norm. Non-convergence of either solve makes the report
/// inconclusive.
AgreementReport two_solve_agreement(const MfgProblem& problem, const SolverOptions& options,
                                    double tol_agree, bool criterion_satisfied = true);

}  // namespace gmfg
