#ifndef DISCONJ_JSON_IO_HPP
#define DISCONJ_JSON_IO_HPP

#include <json.hpp>

#include "disconj/config.hpp"
#include "disconj/criteria.hpp"
#include "disconj/oracle.hpp"

namespace disconj {

nlohmann::json to_json(const Interval& iv);
nlohmann::json to_json(const CriterionReport& r);
nlohmann::json to_json(const OracleVerdict& v);
nlohmann::json to_json(const ConjugatePoint& cp);

/// Versioned report envelope: schema, tool version, the problem, and the
/// reproducibility options (grid, tolerances, horizon, seed).
nlohmann::json report_envelope(const RunConfig& cfg, const std::string& command);

nlohmann::json battery_report(const RunConfig& cfg, const BatteryResult& result);

}  // namespace disconj

#endif
