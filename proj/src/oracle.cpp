#include "disconj/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace disconj {

const char* to_string(OracleStatus s) {
    switch (s) {
        case OracleStatus::Disconjugate: return "disconjugate";
        case OracleStatus::NotDisconjugate: return "not_disconjugate";
        case OracleStatus::Undetermined: return "undetermined";
    }
    return "?";
}

namespace {

// Farthest point shooting may reach in the given direction without leaving
// the problem interval (with an inset at open/singular ends).
double shooting_limit(const OdeProblem& prob, double from, Side side,
                      const OracleOptions& opt) {
    if (side == Side::Plus) {
        double limit = from + opt.horizon;
        if (prob.interval.upper_finite()) {
            double edge = prob.interval.upper;
            if (!prob.interval.closed_upper) edge -= endpoint_inset(edge);
            limit = std::min(limit, edge);
        }
        return limit;
    }
    double limit = from - opt.horizon;
    if (prob.interval.lower_finite()) {
        double edge = prob.interval.lower;
        if (!prob.interval.closed_lower) edge += endpoint_inset(edge);
        limit = std::max(limit, edge);
    }
    return limit;
}

std::optional<double> first_zero_after(const Trajectory& traj, double a,
                                       double min_sep) {
    for (const auto& z : traj.zeros()) {
        if (traj.forward() ? z.t > a + min_sep : z.t < a - min_sep) return z.t;
    }
    return std::nullopt;
}

}  // namespace

ConjugatePoint rho(const OdeProblem& prob, double a, Side side,
                   const OracleOptions& opt) {
    ConjugatePoint cp;
    cp.base = a;
    cp.side = side;
    double target = shooting_limit(prob, a, side, opt);
    cp.horizon_end = target;
    if ((side == Side::Plus && target <= a) || (side == Side::Minus && target >= a))
        throw PreconditionError("base point is not interior to the problem interval");
    try {
        IvpOptions shooting = opt.ivp;
        shooting.stop_at_first_zero = true;
        shooting.abs_tol = 0.0;  // homogeneous: only the direction matters
        Trajectory traj = solve_ivp(prob, a, 0.0, 1.0, target, shooting);
        cp.horizon_end = traj.t_end();  // may be cut where the state died
        double sep = opt.ivp.events.zero_separation;
        if (auto z = first_zero_after(traj, a, sep)) {
            cp.abscissa = *z;
            cp.error_bound = std::max(opt.ivp.events.abscissa_tol,
                                      1e-12 * (1.0 + std::fabs(*z)));
        }
        // !found with an empty message means the search completed cleanly
    } catch (const IntegrationError& e) {
        cp.message = std::string("integration failed: ") + e.what();
    } catch (const EvalError& e) {
        cp.message = std::string("coefficient domain error: ") + e.what();
    }
    return cp;
}

namespace {

struct FiniteDecision {
    OracleStatus status;
    std::optional<std::pair<double, double>> witness;
    std::string message;
};

// Decide disconjugacy on a finite interval by shooting from the lower end.
FiniteDecision decide_finite(const OdeProblem& prob, const Interval& J,
                             const OracleOptions& opt) {
    const double a = J.lower, b = J.upper;
    const double launch = J.closed_lower ? a : a + endpoint_inset(a);
    const double band = std::max(opt.boundary_band, 1e-12 * (1.0 + std::fabs(b)));

    // look a little past b when the problem interval allows, so that a zero
    // sitting exactly on b is seen
    double target = b + 10.0 * band;
    if (prob.interval.upper_finite()) {
        double edge = prob.interval.upper;
        if (!prob.interval.closed_upper) edge -= endpoint_inset(edge);
        target = std::min(target, edge);
    }
    if (target <= launch)
        return {OracleStatus::Undetermined, std::nullopt, "degenerate window"};

    IvpOptions shooting = opt.ivp;
    shooting.stop_at_first_zero = true;
    shooting.abs_tol = 0.0;  // homogeneous: only the direction matters

    // First zero past the launch; a zero sitting numerically on a closed
    // endpoint b (where integration cannot look beyond the problem interval)
    // is recovered by a Newton correction from x(b), x'(b).
    auto candidate = [&](const Trajectory& tr, double sep) -> std::optional<double> {
        if (auto z = first_zero_after(tr, launch, sep)) return z;
        if (J.closed_upper && tr.covers(b)) {
            State2 yb = tr.eval(b);
            if (yb.xp != 0.0) {
                double corr = -yb.x / yb.xp;
                if (std::fabs(corr) <= 10.0 * band) return b + corr;
            }
        }
        return std::nullopt;
    };

    Trajectory traj;
    try {
        traj = solve_ivp(prob, launch, 0.0, 1.0, target, shooting);
    } catch (const std::exception& e) {
        return {OracleStatus::Undetermined, std::nullopt,
                std::string("integration failed: ") + e.what()};
    }
    auto z = candidate(traj, opt.ivp.events.zero_separation);

    bool refuted;
    if (!z) {
        // no zero seen; that decides the window only if the whole requested
        // span was actually covered (the state may have died numerically)
        if (traj.t_end() < target - 1e-12 * (1.0 + std::fabs(target)))
            return {OracleStatus::Undetermined, std::nullopt,
                    "solution vanished numerically at t=" +
                        std::to_string(traj.t_end()) + " before the window end"};
        refuted = false;
    } else if (J.closed_upper) {
        refuted = *z <= b + band;
    } else {
        refuted = *z < b - band;
    }
    if (!refuted) return {OracleStatus::Disconjugate, std::nullopt, ""};

    // re-verify the witness with an independent, tighter re-integration
    double z2 = *z;
    try {
        IvpOptions tight = shooting;
        tight.rel_tol *= 1e-2;
        Trajectory check = solve_ivp(prob, launch, 0.0, 1.0, target, tight);
        auto zc = candidate(check, tight.events.zero_separation);
        if (!zc || std::fabs(*zc - z2) > 1e-6 * (1.0 + std::fabs(z2)))
            return {OracleStatus::Undetermined, std::nullopt,
                    "witness failed re-verification"};
        z2 = *zc;
    } catch (const std::exception& e) {
        return {OracleStatus::Undetermined, std::nullopt,
                std::string("witness re-verification failed: ") + e.what()};
    }
    // clamp a boundary zero onto the closed endpoint it represents
    if (J.closed_upper && z2 > b) z2 = b;
    return {OracleStatus::NotDisconjugate, std::make_pair(launch, z2), ""};
}

}  // namespace

OracleVerdict is_disconjugate(const OdeProblem& prob, const Interval& J,
                              const OracleOptions& opt) {
    if (J.lower_finite() && prob.interval.lower_finite() && J.lower < prob.interval.lower)
        throw PreconditionError("J extends below the problem interval");
    if (J.upper_finite() && prob.interval.upper_finite() && J.upper > prob.interval.upper)
        throw PreconditionError("J extends above the problem interval");
    if (!J.lower_finite() && prob.interval.lower_finite())
        throw PreconditionError("J is unbounded below but the problem is not");
    if (!J.upper_finite() && prob.interval.upper_finite())
        throw PreconditionError("J is unbounded above but the problem is not");

    OracleVerdict v;
    v.queried = J;
    v.horizon = opt.horizon;
    v.abs_tol = opt.ivp.abs_tol;
    v.rel_tol = opt.ivp.rel_tol;

    if (J.finite()) {
        v.window_used = Interval::closed(J.lower, J.upper);
        FiniteDecision d = decide_finite(prob, J, opt);
        v.status = d.status;
        v.witness = d.witness;
        v.message = d.message;
        return v;
    }

    // Unbounded J: exhaust by growing finite windows. All windows passing up
    // to the horizon only establishes a passing trend, never disconjugacy.
    TruncationOptions trunc = opt.trunc;
    trunc.whole_line_halfwidth = std::max(trunc.whole_line_halfwidth, opt.horizon);
    trunc.half_line_span = std::max(trunc.half_line_span, opt.horizon);
    Interval full = truncate_interval(J, trunc);
    v.window_used = full;

    const std::size_t count = std::max<std::size_t>(1, opt.window_count);
    double mid = 0.5 * (full.lower + full.upper);
    for (std::size_t k = 1; k <= count; ++k) {
        double frac = static_cast<double>(k) / static_cast<double>(count);
        Interval w = Interval::closed(mid + (full.lower - mid) * frac,
                                      mid + (full.upper - mid) * frac);
        FiniteDecision d = decide_finite(prob, w, opt);
        if (d.status == OracleStatus::NotDisconjugate) {
            v.status = d.status;
            v.witness = d.witness;
            v.window_used = w;
            return v;
        }
        if (d.status == OracleStatus::Undetermined) {
            v.status = d.status;
            v.message = d.message;
            v.window_used = w;
            return v;
        }
    }
    v.status = OracleStatus::Undetermined;
    v.message = "horizon reached with every window passing";
    return v;
}

bool check_separation(const OdeProblem& prob, const Interval& window,
                      std::uint64_t seed, const OracleOptions& opt) {
    if (!window.finite()) throw PreconditionError("separation check needs a finite window");
    std::mt19937_64 rng(seed == 0 ? 0x9e3779b97f4a7c15ull : seed);
    std::uniform_real_distribution<double> angle(0.1, 1.4);

    double t0 = window.lower;
    for (int attempt = 0; attempt < 8; ++attempt) {
        double phi = angle(rng);
        Trajectory u1 = solve_ivp(prob, t0, std::cos(phi), std::sin(phi), window.upper,
                                  opt.ivp);
        Trajectory u2 = solve_ivp(prob, t0, -std::sin(phi), std::cos(phi), window.upper,
                                  opt.ivp);
        if (std::fabs(wronskian(u1, u2, 0.5 * (window.lower + window.upper))) < 1e-12)
            continue;  // numerically dependent; re-sample

        auto inside = [&](double t) { return t > window.lower && t < window.upper; };
        auto strictly_interlaced = [&](const Trajectory& x, const Trajectory& y) {
            const auto& zx = x.zeros();
            for (std::size_t i = 0; i + 1 < zx.size(); ++i) {
                if (!inside(zx[i].t) || !inside(zx[i + 1].t)) continue;
                int between = 0;
                for (const auto& zy : y.zeros())
                    if (zy.t > zx[i].t && zy.t < zx[i + 1].t) ++between;
                if (between != 1) return false;
            }
            return true;
        };
        return strictly_interlaced(u1, u2) && strictly_interlaced(u2, u1);
    }
    throw PreconditionError("could not draw independent solutions");
}

bool check_rho_monotone(const OdeProblem& prob, const std::vector<double>& samples,
                        const OracleOptions& opt) {
    std::vector<std::pair<double, double>> pairs;  // (a, rho_plus(a))
    for (double a : samples) {
        ConjugatePoint cp = rho(prob, a, Side::Plus, opt);
        if (!cp.found()) continue;  // vacuous at this sample
        pairs.emplace_back(a, *cp.abscissa);
    }
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
        if (!(pairs[i + 1].second > pairs[i].second)) return false;
    for (const auto& [a, rp] : pairs) {
        ConjugatePoint back = rho(prob, rp, Side::Minus, opt);
        if (!back.found()) return false;
        if (std::fabs(*back.abscissa - a) > 1e-6 * (1.0 + std::fabs(a))) return false;
    }
    return true;
}

bool check_comparison(const OdeProblem& prob1, const OdeProblem& prob2,
                      const Interval& window, const OracleOptions& opt) {
    if (!window.finite()) throw PreconditionError("comparison check needs a finite window");
    const int n = 201;
    for (int i = 0; i < n; ++i) {
        double t = window.lower + window.length() * i / (n - 1);
        double q1 = prob1.q.evaluate(t), q2 = prob2.q.evaluate(t);
        if (q1 > q2 + 1e-12 * (1.0 + std::fabs(q2)))
            throw PreconditionError("q1 <= q2 fails on the verification grid at t=" +
                                    std::to_string(t));
    }
    OracleVerdict v2 = is_disconjugate(prob2, window, opt);
    if (v2.status != OracleStatus::Disconjugate) return true;
    OracleVerdict v1 = is_disconjugate(prob1, window, opt);
    return v1.status != OracleStatus::NotDisconjugate;
}

}  // namespace disconj
