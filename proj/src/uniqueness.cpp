#include "gmfg/uniqueness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <thread>

#include "gmfg/errors.hpp"
#include "gmfg/hjb.hpp"
#include "gmfg/sampling.hpp"

namespace gmfg {

Eigen::MatrixXd BlockMatrixM::A() const {
  const auto n = static_cast<Eigen::Index>(nodes());
  return matrix.topLeftCorner(n, n);
}

Eigen::MatrixXd BlockMatrixM::B(Node i) const {
  const auto n = static_cast<Eigen::Index>(nodes());
  return matrix.block(0, static_cast<Eigen::Index>(offset(i)), n,
                      static_cast<Eigen::Index>(block_size(i)));
}

Eigen::MatrixXd BlockMatrixM::C(Node i) const {
  const auto n = static_cast<Eigen::Index>(nodes());
  return matrix.block(static_cast<Eigen::Index>(offset(i)), 0,
                      static_cast<Eigen::Index>(block_size(i)), n);
}

Eigen::MatrixXd BlockMatrixM::D(Node i) const {
  const auto o = static_cast<Eigen::Index>(offset(i));
  const auto d = static_cast<Eigen::Index>(block_size(i));
  return matrix.block(o, o, d, d);
}

BlockMatrixM assemble_M(const HamiltonianModel& model, const std::vector<std::vector<double>>& q,
                        std::span<const double> m) {
  const Graph& g = model.graph();
  const std::size_t n = g.size();
  if (q.size() != n) throw DomainError("q needs one block per node");

  BlockMatrixM M;
  M.q = q;
  M.m.assign(m.begin(), m.end());
  M.offsets.resize(n);
  std::size_t dim = n;
  for (Node i = 0; i < n; ++i) {
    M.offsets[i] = dim;
    dim += g.out_degree(i);
  }
  M.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));

  const auto N = static_cast<Eigen::Index>(n);
  for (Node i = 0; i < n; ++i) {
    const SecondPartials sp = model.second_partials(i, q[i], m);
    const auto row = static_cast<Eigen::Index>(i);
    const auto off = static_cast<Eigen::Index>(M.offsets[i]);
    const auto d = static_cast<Eigen::Index>(g.out_degree(i));
    const double w = m[i];

    M.matrix.block(row, 0, 1, N) = -sp.m.transpose();
    M.matrix.block(0, off, N, d) = w * sp.mp;
    M.matrix.block(off, 0, d, N) = w * sp.pm;
    M.matrix.block(off, off, d, d) = w * sp.pp;

    if (d > 0) {
      const double defect = (w * sp.pm - (w * sp.mp).transpose()).cwiseAbs().maxCoeff();
      M.schwarz_defect = std::max(M.schwarz_defect, defect);
    }
  }
  if (M.schwarz_defect > schwarz_tol) {
    throw ModelError("mixed partials of H_c are not symmetric (defect " +
                     format_real(M.schwarz_defect) + ")");
  }
  return M;
}

double min_sym_eigenvalue(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return 0.0;
  const Eigen::MatrixXd sym = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("symmetric eigensolver failed");
  return solver.eigenvalues().minCoeff();
}

MonotonicityRecord check_monotone(const NodeFunction& fn, std::size_t n, std::size_t n_pairs,
                                  std::uint64_t seed, double mono_tol) {
  MonotonicityRecord rec;
  std::mt19937_64 rng(seed);
  rec.min_pairing = std::numeric_limits<double>::infinity();
  rec.max_pairing = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n_pairs; ++k) {
    const auto m = random_simplex_point(rng, n);
    const auto mu = random_simplex_point(rng, n);
    if (m == mu) continue;
    double pairing = 0.0;
    for (Node i = 0; i < n; ++i) pairing += (fn(i, m) - fn(i, mu)) * (m[i] - mu[i]);
    ++rec.n_pairs;
    rec.min_pairing = std::min(rec.min_pairing, pairing);
    if (pairing > rec.max_pairing) {
      rec.max_pairing = pairing;
      rec.worst_m = m;
      rec.worst_mu = mu;
    }
    if (pairing >= -mono_tol) ++rec.flagged_pairs;
  }
  if (rec.n_pairs == 0) rec.min_pairing = rec.max_pairing = 0.0;
  return rec;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::certified_on_samples: return "certified_on_samples";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

struct ChunkResult {
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  double min_eig = std::numeric_limits<double>::infinity();
  std::size_t argmin = 0;
};

struct SamplePoint {
  std::vector<std::vector<double>> q;
  std::vector<double> m;
};

class PointDesign {
 public:
  PointDesign(const Graph& g, double q_max, std::uint64_t seed)
      : graph_(g), q_max_(q_max), edges_(g.edge_count()), seq_(g.edge_count() + g.size(), seed) {}

  SamplePoint operator()(std::size_t index) const {
    std::vector<double> u(seq_.dim());
    seq_.point(index, u);
    SamplePoint pt;
    pt.q.resize(graph_.size());
    std::size_t c = 0;
    for (Node i = 0; i < graph_.size(); ++i) {
      pt.q[i].resize(graph_.out_degree(i));
      for (auto& x : pt.q[i]) x = q_max_ * (2.0 * u[c++] - 1.0);
    }
    pt.m.resize(graph_.size());
    cube_to_simplex(std::span<const double>(u).subspan(edges_), pt.m);
    return pt;
  }

 private:
  const Graph& graph_;
  double q_max_;
  std::size_t edges_;
  Halton seq_;
};

ChunkResult scan(const HamiltonianModel& model, const PointDesign& design, std::size_t begin,
                 std::size_t end) {
  ChunkResult r;
  for (std::size_t s = begin; s < end; ++s) {
    const SamplePoint pt = design(s);
    try {
      const double e = min_sym_eigenvalue(assemble_M(model, pt.q, pt.m).matrix);
      ++r.evaluated;
      if (e < r.min_eig) {
        r.min_eig = e;
        r.argmin = s;
      }
    } catch (const NonDifferentiablePoint&) {
      ++r.skipped;
    }
  }
  return r;
}

}  // namespace

UniquenessReport certify_psd(const HamiltonianModel& model, const SamplerConfig& config) {
  const Graph& g = model.graph();
  UniquenessReport rep;
  rep.n_samples = config.n_samples;
  if (config.q_max) {
    if (!(*config.q_max > 0.0)) throw std::invalid_argument("q_max must be > 0");
    rep.q_max = *config.q_max;
  } else {
    rep.q_max = 2.0 * a_priori_bound(model, config.horizon);
    if (!(rep.q_max > 0.0)) rep.q_max = 1.0;
  }

  const PointDesign design(g, rep.q_max, config.seed);
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  const std::size_t chunk = (config.n_samples + workers - 1) / std::max<std::size_t>(workers, 1);
  std::vector<std::future<ChunkResult>> jobs;
  for (std::size_t b = 0; b < config.n_samples; b += chunk) {
    const std::size_t e = std::min(config.n_samples, b + chunk);
    jobs.push_back(std::async(std::launch::async, [&model, &design, b, e] {
      return scan(model, design, b, e);
    }));
  }

  // chunks are in index order and each keeps its first minimum, so strict
  // comparison here picks the lowest-index minimizer overall
  ChunkResult total;
  for (auto& job : jobs) {
    const ChunkResult r = job.get();
    total.evaluated += r.evaluated;
    total.skipped += r.skipped;
    if (r.evaluated > 0 && r.min_eig < total.min_eig) {
      total.min_eig = r.min_eig;
      total.argmin = r.argmin;
    }
  }
  rep.evaluated_samples = total.evaluated;
  rep.skipped_kink_samples = total.skipped;
  if (total.evaluated > 0) {
    rep.min_eig_overall = total.min_eig;
    SamplePoint w = design(total.argmin);
    rep.witness_q = std::move(w.q);
    rep.witness_m = std::move(w.m);
  }

  const std::size_t n = g.size();
  rep.f_monotone = check_monotone([&model](Node i, std::span<const double> m) {
    return model.coupling(i, m);
  }, n, config.n_pairs, config.seed * 2 + 1, config.mono_tol);
  rep.g_monotone = check_monotone([&model](Node i, std::span<const double> m) {
    return model.terminal(i, m);
  }, n, config.n_pairs, config.seed * 2 + 2, config.mono_tol);

  const bool psd_violated = rep.min_eig_overall && *rep.min_eig_overall < -config.psd_tol;
  const bool mono_violated = rep.f_monotone.flagged_pairs > 0 || rep.g_monotone.flagged_pairs > 0;
  if (psd_violated || mono_violated) {
    rep.verdict = Verdict::violated;
  } else if (rep.evaluated_samples == 0 || rep.f_monotone.n_pairs == 0 ||
             rep.g_monotone.n_pairs == 0) {
    rep.verdict = Verdict::inconclusive;
  } else {
    rep.verdict = Verdict::certified_on_samples;
  }
  return rep;
}

AgreementReport two_solve_agreement(const MfgProblem& problem, const SolverOptions& options,
                                    double tol_agree, bool criterion_satisfied) {
  AgreementReport rep;
  rep.tol_agree = tol_agree;
  rep.criterion_satisfied = criterion_satisfied;
  const SolveResult a = solve_mfg(problem, options);
  const SolveResult b = solve_mfg(problem, options, vertex_guess(problem));
  rep.converged_first = a.converged;
  rep.converged_second = b.converged;
  rep.inconclusive = !(a.converged && b.converged);
  rep.m_distance = sup_distance(a.m, b.m);
  rep.u_distance = sup_distance(a.u, b.u);
  return rep;
}

}  // namespace gmfg
