#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "gmfg/fixed_point.hpp"
#include "gmfg/uniqueness.hpp"

namespace gmfg::cli {

void write_text(const std::filesystem::path& path, const std::string& content);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);
void write_trajectory(const std::filesystem::path& path, const Trajectory& traj);

/// Columns t,source,target,rate with 1-based node labels, one row per grid
/// node and edge.
void write_rates(const std::filesystem::path& path, const Graph& graph, const RateField& field);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

nlohmann::json to_json(const MonotonicityRecord& rec);
nlohmann::json to_json(const UniquenessReport& rep);
nlohmann::json to_json(const AgreementReport& rep);
nlohmann::json to_json(const VerifyReport& rep);

}  // namespace gmfg::cli
