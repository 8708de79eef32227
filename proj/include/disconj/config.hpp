#ifndef DISCONJ_CONFIG_HPP
#define DISCONJ_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "disconj/criteria.hpp"
#include "disconj/problem.hpp"

namespace disconj {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error("config field '" + field + "': " + what), field_(field) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Everything a run needs: the problem plus grids, tolerances, horizons,
/// search bounds and output selection. Built from a JSON file and/or CLI
/// flags (flags win).
struct RunConfig {
    OdeProblem problem;
    std::optional<Expr> v;  ///< user test function for the Vallee-Poussin checker
    std::optional<Expr> r;  ///< auxiliary r for the r-condition checker

    std::size_t grid = 2001;
    double tol_abs = 1e-10;
    double tol_rel = 1e-9;
    double horizon = 100.0;
    double nu_max = 100.0;
    double gamma_max = 100.0;
    std::string format = "pretty";  // json | csv | pretty
    std::string out_path;           // empty: stdout
    std::uint64_t seed = 0;

    void check() const;  ///< throws ConfigError on out-of-range values

    IvpOptions ivp_options() const;
    OracleOptions oracle_options() const;
    CriteriaOptions criteria_options() const;
    BatteryOptions battery_options() const;
};

/// Parse the problem-and-options JSON document. Fields: p, q, optional f, v,
/// r, interval ([lo, hi] with "inf"/"-inf" sentinels), closed_lower,
/// closed_upper, grid, tol_abs, tol_rel, horizon, nu_max, gamma_max, format,
/// out, seed.
RunConfig load_config_json(const std::string& text);

}  // namespace disconj

#endif
