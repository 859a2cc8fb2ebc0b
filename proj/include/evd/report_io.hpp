#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "evd/fixedpoint.hpp"
#include "evd/jacobi.hpp"
#include "evd/ranges.hpp"

namespace evd {

inline constexpr int kSchemaVersion = 1;

/// Compact decimal rendering; infinities become "-inf"/"+inf".
std::string format_double(double v, int precision = 6);

/// JSON value for a real: a plain number, or the string sentinel for ±inf.
nlohmann::json json_real(double v);

nlohmann::json to_json(const Interval& iv);
nlohmann::json to_json(const RangeReport& rep);
nlohmann::json to_json(const EvdResult& res);
nlohmann::json to_json(const OverflowEvent& ev);

/// Variable rows by method columns, aligned for terminals.
std::string ranges_table(const std::vector<RangeReport>& reports);

/// Long format: method,variable,lo,hi — one row per pair.
std::string ranges_csv(const std::vector<RangeReport>& reports);

/// Columns: sweep,i,j,variable,operation,ideal_value,stored_value.
std::string overflow_csv(const std::vector<OverflowEvent>& events);

}  // namespace evd
