#include "disconj/config.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

namespace disconj {

void RunConfig::check() const {
    if (grid < 3) throw ConfigError("grid", "density must be at least 3");
    if (!(tol_abs > 0.0)) throw ConfigError("tol_abs", "tolerance must be positive");
    if (!(tol_rel > 0.0)) throw ConfigError("tol_rel", "tolerance must be positive");
    if (!(horizon > 0.0)) throw ConfigError("horizon", "horizon must be positive");
    if (!(nu_max > 0.0)) throw ConfigError("nu_max", "search bound must be positive");
    if (!(gamma_max > 0.0))
        throw ConfigError("gamma_max", "search bound must be positive");
    if (format != "json" && format != "csv" && format != "pretty")
        throw ConfigError("format", "expected json, csv, or pretty");
    if (problem.p.empty() || problem.q.empty())
        throw ConfigError("p/q", "both coefficients are required");
}

IvpOptions RunConfig::ivp_options() const {
    IvpOptions o;
    o.abs_tol = tol_abs;
    o.rel_tol = tol_rel;
    return o;
}

OracleOptions RunConfig::oracle_options() const {
    OracleOptions o;
    o.horizon = horizon;
    o.ivp = ivp_options();
    return o;
}

CriteriaOptions RunConfig::criteria_options() const {
    CriteriaOptions o;
    o.grid_points = grid;
    o.nu_max = nu_max;
    o.gamma_max = gamma_max;
    o.ivp = ivp_options();
    o.aux_oracle = oracle_options();
    return o;
}

BatteryOptions RunConfig::battery_options() const {
    BatteryOptions o;
    o.criteria = criteria_options();
    o.oracle = oracle_options();
    o.test_function_v = v;
    o.r = r;
    o.seed = seed;
    return o;
}

namespace {

double endpoint_from_json(const nlohmann::json& j, const char* field) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw ConfigError(field, "expected a number or \"inf\"/\"-inf\", got \"" + s +
                                     "\"");
    }
    throw ConfigError(field, "expected a number or an \"inf\" sentinel");
}

Expr parse_field(const nlohmann::json& j, const char* field) {
    if (!j.is_string()) throw ConfigError(field, "expected an expression string");
    try {
        return parse(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ConfigError(field, e.what());
    }
}

}  // namespace

RunConfig load_config_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("<document>", e.what());
    }
    RunConfig cfg;

    if (j.contains("p")) cfg.problem.p = parse_field(j["p"], "p");
    if (j.contains("q")) cfg.problem.q = parse_field(j["q"], "q");
    if (j.contains("f")) cfg.problem.f = parse_field(j["f"], "f");
    if (j.contains("v")) cfg.v = parse_field(j["v"], "v");
    if (j.contains("r")) cfg.r = parse_field(j["r"], "r");

    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    if (j.contains("interval")) {
        const auto& iv = j["interval"];
        if (!iv.is_array() || iv.size() != 2)
            throw ConfigError("interval", "expected a two-element array");
        lo = endpoint_from_json(iv[0], "interval[0]");
        hi = endpoint_from_json(iv[1], "interval[1]");
    }
    bool closed_lo = std::isfinite(lo);
    bool closed_hi = std::isfinite(hi);
    if (j.contains("closed_lower")) {
        if (!j["closed_lower"].is_boolean())
            throw ConfigError("closed_lower", "expected a boolean");
        closed_lo = j["closed_lower"].get<bool>();
    }
    if (j.contains("closed_upper")) {
        if (!j["closed_upper"].is_boolean())
            throw ConfigError("closed_upper", "expected a boolean");
        closed_hi = j["closed_upper"].get<bool>();
    }
    try {
        cfg.problem.interval = Interval(lo, hi, closed_lo, closed_hi);
    } catch (const IntervalShapeError& e) {
        throw ConfigError("interval", e.what());
    }

    auto number = [&](const char* field, double* dst) {
        if (!j.contains(field)) return;
        if (!j[field].is_number()) throw ConfigError(field, "expected a number");
        *dst = j[field].get<double>();
    };
    if (j.contains("grid")) {
        if (!j["grid"].is_number_unsigned()) throw ConfigError("grid", "expected a count");
        cfg.grid = j["grid"].get<std::size_t>();
    }
    number("tol_abs", &cfg.tol_abs);
    number("tol_rel", &cfg.tol_rel);
    number("horizon", &cfg.horizon);
    number("nu_max", &cfg.nu_max);
    number("gamma_max", &cfg.gamma_max);
    if (j.contains("format")) {
        if (!j["format"].is_string()) throw ConfigError("format", "expected a string");
        cfg.format = j["format"].get<std::string>();
    }
    if (j.contains("out")) {
        if (!j["out"].is_string()) throw ConfigError("out", "expected a path string");
        cfg.out_path = j["out"].get<std::string>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ConfigError("seed", "expected a seed");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    return cfg;
}

}  // namespace disconj
