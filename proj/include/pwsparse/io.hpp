#pragma once

#include <json.hpp>
#include <string>

#include "pwsparse/coherence.hpp"
#include "pwsparse/conditions.hpp"
#include "pwsparse/solvers.hpp"

namespace pwsparse {

/// Shortest round-trippable decimal for a double (up to 17 significant
/// digits); used everywhere a number is printed.
std::string format_double(double v);

nlohmann::json to_json(const CoherenceProfile& p);
nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const RecoveryResult& r);

BlockPartition partition_from_json(const nlohmann::json& j);
BlockPartition parse_widths(const std::string& comma_separated);

std::string bound_table_csv(const std::vector<BoundTableRow>& rows);

}  // namespace pwsparse
