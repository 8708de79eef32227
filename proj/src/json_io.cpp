#include "disconj/json_io.hpp"

#include <cmath>

#include "disconj/version.hpp"

namespace disconj {

namespace {

nlohmann::json endpoint(double v) {
    if (v == std::numeric_limits<double>::infinity()) return "inf";
    if (v == -std::numeric_limits<double>::infinity()) return "-inf";
    return v;
}

}  // namespace

nlohmann::json to_json(const Interval& iv) {
    return {{"interval", {endpoint(iv.lower), endpoint(iv.upper)}},
            {"closed_lower", iv.closed_lower},
            {"closed_upper", iv.closed_upper}};
}

nlohmann::json to_json(const CriterionReport& r) {
    nlohmann::json j{{"criterion", r.id},
                     {"verdict", to_string(r.verdict)},
                     {"witness", r.witness},
                     {"grid", {{"points", r.grid.points}, {"window", to_json(r.grid.window)}}}};
    if (!r.detail.empty()) j["detail"] = r.detail;
    if (r.concluded) j["concluded"] = to_json(*r.concluded);
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

nlohmann::json to_json(const OracleVerdict& v) {
    nlohmann::json j{{"status", to_string(v.status)},
                     {"queried", to_json(v.queried)},
                     {"window_used", to_json(v.window_used)},
                     {"horizon", v.horizon},
                     {"tolerances", {{"abs", v.abs_tol}, {"rel", v.rel_tol}}}};
    if (v.witness)
        j["witness"] = {v.witness->first, v.witness->second};
    else
        j["witness"] = nullptr;
    if (!v.message.empty()) j["message"] = v.message;
    return j;
}

nlohmann::json to_json(const ConjugatePoint& cp) {
    nlohmann::json j{{"base", cp.base},
                     {"side", cp.side == Side::Plus ? "+" : "-"},
                     {"horizon_end", cp.horizon_end}};
    if (cp.found()) {
        j["abscissa"] = *cp.abscissa;
        j["error_bound"] = cp.error_bound;
    } else {
        j["abscissa"] = nullptr;
    }
    if (!cp.message.empty()) j["message"] = cp.message;
    return j;
}

nlohmann::json report_envelope(const RunConfig& cfg, const std::string& command) {
    nlohmann::json problem{{"p", cfg.problem.p.str()}, {"q", cfg.problem.q.str()}};
    if (cfg.problem.f) problem["f"] = cfg.problem.f->str();
    problem.update(to_json(cfg.problem.interval));
    return {{"schema", kReportSchema},
            {"version", kVersion},
            {"command", command},
            {"problem", problem},
            {"options",
             {{"grid", cfg.grid},
              {"tol_abs", cfg.tol_abs},
              {"tol_rel", cfg.tol_rel},
              {"horizon", cfg.horizon},
              {"nu_max", cfg.nu_max},
              {"gamma_max", cfg.gamma_max},
              {"seed", cfg.seed}}}};
}

nlohmann::json battery_report(const RunConfig& cfg, const BatteryResult& result) {
    nlohmann::json j = report_envelope(cfg, "check");
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : result.reports) reports.push_back(to_json(r));
    j["criteria"] = reports;
    j["aggregate"] = to_string(result.aggregate);
    if (result.oracle) j["oracle"] = to_json(*result.oracle);
    if (!result.notes.empty()) j["notes"] = result.notes;
    return j;
}

}  // namespace disconj
