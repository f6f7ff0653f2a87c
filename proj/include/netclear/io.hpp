#pragma once

#include <filesystem>

#include <json.hpp>

#include "netclear/graph.hpp"
#include "netclear/model.hpp"
#include "netclear/oracle.hpp"
#include "netclear/solver.hpp"

// On-disk instance format:
//   { "n": int, "pi": [[...], ...], "p_bar": [...], "e": [...] }
// with pi row-major.  All node labels in report JSON are 1-based.

namespace netclear::io {

using json = nlohmann::ordered_json;

RawSystem parse_instance(const json& j);
RawSystem load_instance(const std::filesystem::path& path);

json instance_json(const RawSystem& raw);
json instance_json(const FinancialSystem& sys);
void save_instance(const FinancialSystem& sys, const std::filesystem::path& path);

json partition_json(const NodePartition& part);

/// { regular, witness, P, A, N, orbits } -- the analyze report.
json analyze_json(const FinancialSystem& sys);

/// { p_star, method, iterations, residual_ll, residual_ap, bracket_gap, partition }
json solve_report_json(const SolveReport& report);

json certificate_json(const PositivityCertificate& cert);

json fixed_point_set_json(const FixedPointSet& fps);

}  // namespace netclear::io
