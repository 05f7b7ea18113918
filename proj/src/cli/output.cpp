#include "gmfg/cli/output.hpp"

#include <fstream>
#include <sstream>

#include "gmfg/errors.hpp"

namespace gmfg::cli {

using nlohmann::json;

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

void write_trajectory(const std::filesystem::path& path, const Trajectory& traj) {
  std::ostringstream os;
  traj.write_csv(os);
  write_text(path, os.str());
}

void write_rates(const std::filesystem::path& path, const Graph& graph, const RateField& field) {
  std::ostringstream os;
  os << "t,source,target,rate\n";
  for (std::size_t k = 0; k < field.at.size(); ++k) {
    const std::string t = format_real(field.grid.time(k));
    for (Node i = 0; i < graph.size(); ++i) {
      const auto targets = graph.out(i);
      for (std::size_t s = 0; s < targets.size(); ++s) {
        os << t << ',' << (i + 1) << ',' << (targets[s] + 1) << ',' << format_real(field.at[k][i][s])
           << '\n';
      }
    }
  }
  write_text(path, os.str());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

json to_json(const MonotonicityRecord& rec) {
  return {{"n_pairs", rec.n_pairs},
          {"flagged_pairs", rec.flagged_pairs},
          {"holds", rec.holds()},
          {"min_pairing", rec.min_pairing},
          {"max_pairing", rec.max_pairing},
          {"worst_pair", {{"m", rec.worst_m}, {"mu", rec.worst_mu}}}};
}

json to_json(const UniquenessReport& rep) {
  json witness = nullptr;
  if (rep.min_eig_overall) witness = {{"q", rep.witness_q}, {"m", rep.witness_m}};
  return {{"verdict", to_string(rep.verdict)},
          {"n_samples", rep.n_samples},
          {"evaluated_samples", rep.evaluated_samples},
          {"skipped_kink_samples", rep.skipped_kink_samples},
          {"q_max", rep.q_max},
          {"min_eigenvalue", rep.min_eig_overall ? json(*rep.min_eig_overall) : json(nullptr)},
          {"witness", witness},
          {"f_monotone", to_json(rep.f_monotone)},
          {"g_monotone", to_json(rep.g_monotone)}};
}

json to_json(const AgreementReport& rep) {
  return {{"criterion_satisfied", rep.criterion_satisfied},
          {"inconclusive", rep.inconclusive},
          {"converged", {rep.converged_first, rep.converged_second}},
          {"m_distance", rep.m_distance},
          {"u_distance", rep.u_distance},
          {"tol_agree", rep.tol_agree},
          {"agree", rep.agree()}};
}

json to_json(const VerifyReport& rep) {
  return {{"hjb_residual", rep.hjb_residual},
          {"transport_residual", rep.transport_residual},
          {"check_tol", rep.check_tol},
          {"ok", rep.ok()}};
}

}  // namespace gmfg::cli
