// Command-line front end: check | conjugate | green | factor | bvp.
//
// Exit codes: 0 success (for `check`: proven or oracle-disconjugate),
// 1 oracle refutation, 2 inconclusive, 3 configuration/parse error,
// 4 precondition failure (resonance, missing disconjugacy), 5 numerical
// failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "disconj/config.hpp"
#include "disconj/factorize.hpp"
#include "disconj/greens.hpp"
#include "disconj/json_io.hpp"
#include "disconj/version.hpp"

namespace {

using namespace disconj;

constexpr int kExitProven = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitConfig = 3;
constexpr int kExitPrecondition = 4;
constexpr int kExitNumerical = 5;

struct Flags {
    std::string config_path;
    std::string p, q, f, v, r;
    std::string interval;
    std::string closed;
    std::string format;
    std::string out;
    std::size_t grid = 0;
    double tol = 0.0;
    double horizon = 0.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t points = 21;
    // conjugate
    double base = 0.0;
    std::string side = "+";
};

void add_common_flags(CLI::App* cmd, Flags& fl) {
    cmd->add_option("--config", fl.config_path, "JSON config file (flags override it)");
    cmd->add_option("--p", fl.p, "coefficient p(t)");
    cmd->add_option("--q", fl.q, "coefficient q(t)");
    cmd->add_option("--f", fl.f, "right-hand side f(t)");
    cmd->add_option("--v", fl.v, "test function v(t) for the Vallee-Poussin checker");
    cmd->add_option("--r", fl.r, "auxiliary r(t) for the r-condition checker");
    cmd->add_option("--interval", fl.interval,
                    "interval as 'a,b' (use inf/-inf for unbounded ends)");
    cmd->add_option("--closed", fl.closed,
                    "closed endpoints: both | lower | upper | none");
    cmd->add_option("--grid", fl.grid, "grid density for pointwise checks");
    cmd->add_option("--tol", fl.tol, "integrator absolute tolerance (rel = 10x)");
    cmd->add_option("--horizon", fl.horizon, "shooting horizon");
    cmd->add_option("--format", fl.format, "output format: json | csv | pretty");
    cmd->add_option("--out", fl.out, "output path (default: stdout)");
    cmd->add_option("--seed", fl.seed, "RNG seed recorded in reports")
        ->each([&fl](const std::string&) { fl.seed_set = true; });
}

double parse_endpoint(const std::string& text, const char* field) {
    if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(field, "cannot parse endpoint '" + text + "'");
    }
}

RunConfig build_config(const Flags& fl) {
    RunConfig cfg;
    if (!fl.config_path.empty()) {
        std::ifstream in(fl.config_path);
        if (!in) throw ConfigError("config", "cannot open " + fl.config_path);
        std::stringstream buf;
        buf << in.rdbuf();
        cfg = load_config_json(buf.str());
    }
    auto parse_into = [](const std::string& text, const char* field) {
        try {
            return parse(text);
        } catch (const ParseError& e) {
            throw ConfigError(field, e.what());
        }
    };
    if (!fl.p.empty()) cfg.problem.p = parse_into(fl.p, "p");
    if (!fl.q.empty()) cfg.problem.q = parse_into(fl.q, "q");
    if (!fl.f.empty()) cfg.problem.f = parse_into(fl.f, "f");
    if (!fl.v.empty()) cfg.v = parse_into(fl.v, "v");
    if (!fl.r.empty()) cfg.r = parse_into(fl.r, "r");

    if (!fl.interval.empty()) {
        auto comma = fl.interval.find(',');
        if (comma == std::string::npos)
            throw ConfigError("interval", "expected 'a,b'");
        double lo = parse_endpoint(fl.interval.substr(0, comma), "interval");
        double hi = parse_endpoint(fl.interval.substr(comma + 1), "interval");
        bool clo = std::isfinite(lo), chi = std::isfinite(hi);
        try {
            cfg.problem.interval = Interval(lo, hi, clo, chi);
        } catch (const IntervalShapeError& e) {
            throw ConfigError("interval", e.what());
        }
    }
    if (!fl.closed.empty()) {
        bool clo, chi;
        if (fl.closed == "both") {
            clo = chi = true;
        } else if (fl.closed == "lower") {
            clo = true;
            chi = false;
        } else if (fl.closed == "upper") {
            clo = false;
            chi = true;
        } else if (fl.closed == "none") {
            clo = chi = false;
        } else {
            throw ConfigError("closed", "expected both | lower | upper | none");
        }
        const Interval& iv = cfg.problem.interval;
        try {
            cfg.problem.interval = Interval(iv.lower, iv.upper, clo, chi);
        } catch (const IntervalShapeError& e) {
            throw ConfigError("closed", e.what());
        }
    }
    if (fl.grid != 0) cfg.grid = fl.grid;
    if (fl.tol != 0.0) {
        cfg.tol_abs = fl.tol;
        cfg.tol_rel = 10.0 * fl.tol;
    }
    if (fl.horizon != 0.0) cfg.horizon = fl.horizon;
    if (!fl.format.empty()) cfg.format = fl.format;
    if (!fl.out.empty()) cfg.out_path = fl.out;
    if (fl.seed_set) cfg.seed = fl.seed;
    cfg.check();
    cfg.problem.validate();
    return cfg;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(cfg.out_path);
    if (!out) throw ConfigError("out", "cannot write " + cfg.out_path);
    out << text;
}

std::string pretty_battery(const BatteryResult& result) {
    std::ostringstream os;
    os << "criterion          verdict         detail\n";
    for (const auto& r : result.reports) {
        os << r.id;
        for (std::size_t i = r.id.size(); i < 19; ++i) os << ' ';
        std::string v = to_string(r.verdict);
        os << v;
        for (std::size_t i = v.size(); i < 16; ++i) os << ' ';
        os << r.detail << '\n';
    }
    if (result.oracle) {
        os << "oracle: " << to_string(result.oracle->status);
        if (result.oracle->witness)
            os << "  witness zeros {" << result.oracle->witness->first << ", "
               << result.oracle->witness->second << "}";
        if (!result.oracle->message.empty()) os << "  (" << result.oracle->message << ")";
        os << '\n';
    }
    os << "aggregate: " << to_string(result.aggregate) << '\n';
    for (const auto& n : result.notes) os << "note: " << n << '\n';
    return os.str();
}

int cmd_check(const RunConfig& cfg) {
    BatteryResult result = run_battery(cfg.problem, cfg.problem.interval,
                                       cfg.battery_options());
    int code;
    bool proven = result.aggregate == Verdict::Proven ||
                  (result.oracle && result.oracle->status == OracleStatus::Disconjugate);
    if (proven)
        code = kExitProven;
    else if (result.oracle && result.oracle->status == OracleStatus::NotDisconjugate)
        code = kExitRefuted;
    else if (result.aggregate == Verdict::Disproven)
        code = kExitRefuted;
    else
        code = kExitInconclusive;

    if (cfg.format == "json") {
        nlohmann::json j = battery_report(cfg, result);
        j["exit_code"] = code;
        emit(cfg, j.dump(2));
    } else if (cfg.format == "csv") {
        emit(cfg, battery_csv(result));
    } else {
        emit(cfg, pretty_battery(result));
    }
    return code;
}

int cmd_conjugate(const RunConfig& cfg, double a, const std::string& side_text) {
    Side side;
    if (side_text == "+" || side_text == "plus")
        side = Side::Plus;
    else if (side_text == "-" || side_text == "minus")
        side = Side::Minus;
    else
        throw ConfigError("side", "expected + or -");
    ConjugatePoint cp = rho(cfg.problem, a, side, cfg.oracle_options());
    if (cfg.format == "json") {
        nlohmann::json j = report_envelope(cfg, "conjugate");
        j["conjugate_point"] = to_json(cp);
        emit(cfg, j.dump(2));
    } else {
        std::ostringstream os;
        os << "rho" << (side == Side::Plus ? "+" : "-") << "(" << a << ") = ";
        if (cp.found())
            os << std::setprecision(15) << *cp.abscissa << "  (+/- " << cp.error_bound
               << ")";
        else
            os << "none within horizon (searched to " << cp.horizon_end << ")";
        if (!cp.message.empty()) os << "  [" << cp.message << "]";
        os << '\n';
        emit(cfg, os.str());
    }
    return cp.found() || cp.message.empty() ? kExitProven : kExitNumerical;
}

Interval finite_window(const RunConfig& cfg) {
    if (!cfg.problem.interval.finite())
        throw ConfigError("interval",
                          "this command needs a finite interval; pass --interval a,b");
    return cfg.problem.interval;
}

int cmd_green(const RunConfig& cfg, std::size_t points) {
    GreenOptions opt;
    opt.ivp = cfg.ivp_options();
    opt.oracle = cfg.oracle_options();
    GreenFunction G = build_green(cfg.problem, finite_window(cfg), opt);
    emit(cfg, G.kernel().to_csv(points));
    return kExitProven;
}

int cmd_factor(const RunConfig& cfg, std::size_t points) {
    GreenOptions opt;
    opt.ivp = cfg.ivp_options();
    opt.oracle = cfg.oracle_options();
    Factorization fac = factorize(cfg.problem, finite_window(cfg), opt);
    emit(cfg, fac.to_csv(points));
    return kExitProven;
}

int cmd_bvp(const RunConfig& cfg) {
    GreenOptions opt;
    opt.ivp = cfg.ivp_options();
    opt.oracle = cfg.oracle_options();
    Trajectory x = solve_bvp(cfg.problem, finite_window(cfg), opt);
    emit(cfg, x.to_csv());
    return kExitProven;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Disconjugacy toolkit for x'' + p(t) x' + q(t) x = f(t)"};
    app.set_version_flag("--version", disconj::kVersion);
    app.require_subcommand(1);

    Flags fl;
    CLI::App* check = app.add_subcommand("check", "run the criteria battery + oracle");
    add_common_flags(check, fl);
    CLI::App* conj = app.add_subcommand("conjugate", "locate a conjugate point");
    add_common_flags(conj, fl);
    conj->add_option("--a", fl.base, "base point")->required();
    conj->add_option("--side", fl.side, "+ (right) or - (left)");
    CLI::App* green = app.add_subcommand("green", "emit the Green kernel as CSV");
    add_common_flags(green, fl);
    green->add_option("--points", fl.points, "grid points per axis");
    CLI::App* factor = app.add_subcommand("factor", "emit the factorization as CSV");
    add_common_flags(factor, fl);
    factor->add_option("--points", fl.points, "grid points");
    CLI::App* bvp = app.add_subcommand("bvp", "solve the zero-Dirichlet problem");
    add_common_flags(bvp, fl);

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = build_config(fl);
        if (check->parsed()) return cmd_check(cfg);
        if (conj->parsed()) return cmd_conjugate(cfg, fl.base, fl.side);
        if (green->parsed()) return cmd_green(cfg, fl.points);
        if (factor->parsed()) return cmd_factor(cfg, fl.points);
        if (bvp->parsed()) return cmd_bvp(cfg);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ResonanceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const IntervalShapeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}
