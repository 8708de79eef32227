#include "disconj/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <limits>
#include <numbers>

#include "disconj/quadrature.hpp"

namespace disconj {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Proven: return "proven";
        case Verdict::Disproven: return "disproven";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::NotApplicable: return "not_applicable";
    }
    return "?";
}

namespace {

constexpr double kPi = std::numbers::pi;

double rel_guard(double a, double b) {
    return 1e-12 * (1.0 + std::fabs(a) + std::fabs(b));
}

bool leq(double lhs, double rhs) { return lhs <= rhs + rel_guard(lhs, rhs); }

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n < 3) n = 3;
    std::vector<double> ts(n);
    for (std::size_t i = 0; i < n; ++i)
        ts[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return ts;
}

struct Scan {
    bool holds = true;
    bool error = false;
    std::string message;
    double worst_t = 0.0;
    double worst_margin = -std::numeric_limits<double>::infinity();  // lhs - rhs
    std::size_t points = 0;
};

// Check lhs(t) <= rhs(t) on a uniform grid over [lo, hi], refining by cell
// midpoints wherever the margin comes within `refine` of the boundary.
template <typename Lhs, typename Rhs>
Scan scan_leq(const Lhs& lhs, const Rhs& rhs, double lo, double hi, std::size_t n,
              double refine) {
    Scan out;
    auto ts = linspace(lo, hi, n);
    std::vector<double> margins(ts.size());
    auto probe = [&](double t) -> double {
        double l = lhs(t), r = rhs(t);
        double m = l - r;
        if (m > out.worst_margin) {
            out.worst_margin = m;
            out.worst_t = t;
        }
        if (!leq(l, r)) out.holds = false;
        return m;
    };
    try {
        for (std::size_t i = 0; i < ts.size(); ++i) margins[i] = probe(ts[i]);
        out.points = ts.size();
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            if (margins[i] > -refine || margins[i + 1] > -refine) {
                probe(0.5 * (ts[i] + ts[i + 1]));
                ++out.points;
            }
        }
    } catch (const std::exception& e) {
        out.error = true;
        out.holds = false;
        out.message = e.what();
    }
    return out;
}

const char* kGridNote =
    "pointwise conditions semi-verified on the reported grid, not certified";

CriterionReport base_report(std::string id, const Interval& window, std::size_t points) {
    CriterionReport r;
    r.id = std::move(id);
    r.grid.window = window;
    r.grid.points = points;
    r.notes.push_back(kGridNote);
    return r;
}

void finish_scan(CriterionReport& r, const Scan& scan, const Interval& concluded) {
    r.grid.points = scan.points;
    if (scan.error) {
        r.verdict = Verdict::NotApplicable;
        r.detail = "evaluation failed: " + scan.message;
        return;
    }
    r.witness["margin"] = scan.worst_margin;
    r.witness["worst_t"] = scan.worst_t;
    if (scan.holds) {
        r.verdict = Verdict::Proven;
        r.concluded = concluded;
    } else {
        r.verdict = Verdict::Inconclusive;
        r.detail = "inequality fails near t=" + std::to_string(scan.worst_t);
    }
}

// Constant-expression detection: symbolic (no variable) or equal values at
// scattered sample points.
bool expr_constant(const Expr& e, const Interval& w, double* value) {
    if (!e.has_variable()) {
        *value = e.evaluate(0.5 * (w.lower + w.upper));
        return true;
    }
    static constexpr double fractions[] = {0.1234567, 0.4321987, 0.5567389,
                                           0.7718231, 0.9432101};
    double v0 = 0.0;
    bool first = true;
    for (double f : fractions) {
        double t = w.lower + (w.upper - w.lower) * f;
        double v = e.evaluate(t);
        if (first) {
            v0 = v;
            first = false;
        } else if (std::fabs(v - v0) > 1e-10 * (1.0 + std::fabs(v0))) {
            return false;
        }
    }
    *value = v0;
    return true;
}

// Finite working window: the queried interval clipped to the problem
// interval, truncated when unbounded.
Interval criterion_window(const OdeProblem& prob, const Interval& J,
                          const CriteriaOptions& opt) {
    double lo = J.lower, hi = J.upper;
    bool clo = J.closed_lower, chi = J.closed_upper;
    if (prob.interval.lower > lo) {
        lo = prob.interval.lower;
        clo = prob.interval.closed_lower;
    }
    if (prob.interval.upper < hi) {
        hi = prob.interval.upper;
        chi = prob.interval.closed_upper;
    }
    return truncate_interval(Interval(lo, hi, clo, chi), opt.trunc);
}

}  // namespace

// --- constant coefficients --------------------------------------------------

CriterionReport crit_constant(const OdeProblem& prob, const Interval& J,
                              const CriteriaOptions& opt) {
    Interval w = criterion_window(prob, J, opt);
    CriterionReport r = base_report("constant", w, 5);
    double pc = 0.0, qc = 0.0;
    try {
        if (!expr_constant(prob.p, w, &pc) || !expr_constant(prob.q, w, &qc)) {
            r.detail = "coefficients are not constant";
            return r;
        }
    } catch (const std::exception& e) {
        r.detail = std::string("evaluation failed: ") + e.what();
        return r;
    }
    double disc = pc * pc - 4.0 * qc;
    r.witness["p"] = pc;
    r.witness["q"] = qc;
    r.witness["discriminant"] = disc;
    if (disc >= 0.0) {
        r.verdict = Verdict::Proven;
        r.concluded = Interval::whole_line();
        r.detail = "real characteristic roots";
        return r;
    }
    double spacing = kPi / (0.5 * std::sqrt(-disc));  // distance between zeros
    r.witness["zero_spacing"] = spacing;
    if (!J.finite()) {
        r.verdict = Verdict::Disproven;
        r.detail = "complex characteristic roots on an unbounded interval";
        return r;
    }
    double len = J.length();
    bool closed_both = J.closed_lower && J.closed_upper;
    if (std::fabs(len - spacing) <= rel_guard(len, spacing)) {
        r.verdict = closed_both ? Verdict::Disproven : Verdict::Proven;
    } else if (len < spacing) {
        r.verdict = Verdict::Proven;
    } else {
        r.verdict = Verdict::Disproven;
    }
    if (r.verdict == Verdict::Proven) {
        r.concluded = J;
        r.detail = "window shorter than the oscillation spacing";
    } else {
        r.detail = "oscillation fits inside the window";
    }
    return r;
}

// --- Euler form ---------------------------------------------------------------

CriterionReport crit_euler(const OdeProblem& prob, const CriteriaOptions& opt) {
    Interval w = criterion_window(prob, prob.interval, opt);
    CriterionReport r = base_report("euler", w, 0);
    if (prob.interval.lower < 0.0 || w.lower <= 0.0) {
        r.detail = "interval is not inside (0, inf)";
        return r;
    }
    auto ts = linspace(w.lower, w.upper, opt.grid_points);
    double mean = 0.0;
    std::vector<double> c(ts.size());
    try {
        for (std::size_t i = 0; i < ts.size(); ++i) {
            c[i] = ts[i] * prob.p.evaluate(ts[i]);
            mean += c[i];
        }
    } catch (const std::exception& e) {
        r.detail = std::string("evaluation failed: ") + e.what();
        return r;
    }
    mean /= static_cast<double>(ts.size());
    for (double ci : c) {
        if (std::fabs(ci - mean) > 1e-9 * (1.0 + std::fabs(mean))) {
            r.detail = "p(t) is not of the form const/t";
            return r;
        }
    }
    r.witness["p_const"] = mean;
    const double num = (mean - 1.0) * (mean - 1.0);
    Scan scan = scan_leq([&](double t) { return prob.q.evaluate(t); },
                         [&](double t) { return num / (4.0 * t * t); }, w.lower,
                         w.upper, opt.grid_points, opt.margin_refine);
    Interval concluded = Interval::open(std::max(0.0, prob.interval.lower),
                                        std::numeric_limits<double>::infinity());
    finish_scan(r, scan, concluded);
    return r;
}

// --- Lyapunov integral test -----------------------------------------------------

CriterionReport crit_lyapunov(const OdeProblem& prob, const Interval& J,
                              bool use_q_plus, const CriteriaOptions& opt) {
    CriterionReport r = base_report(use_q_plus ? "lyapunov_qplus" : "lyapunov", J,
                                    opt.grid_points);
    if (!J.finite()) {
        r.detail = "needs a finite interval";
        return r;
    }
    const double a = J.lower, b = J.upper;
    Scan pzero = scan_leq([&](double t) { return std::fabs(prob.p.evaluate(t)); },
                          [](double) { return 0.0; }, a, b, opt.grid_points,
                          opt.margin_refine);
    if (pzero.error) {
        r.detail = "evaluation failed: " + pzero.message;
        return r;
    }
    if (!pzero.holds) {
        r.detail = "p is not identically zero";
        return r;
    }
    if (!use_q_plus) {
        Scan qpos = scan_leq([&](double t) { return -prob.q.evaluate(t); },
                             [](double) { return 0.0; }, a, b, opt.grid_points,
                             opt.margin_refine);
        if (qpos.error) {
            r.detail = "evaluation failed: " + qpos.message;
            return r;
        }
        if (!qpos.holds) {
            r.detail = "q takes negative values; use the q_plus form";
            return r;
        }
    }
    Expr integrand = use_q_plus ? (prob.q + abs(prob.q)) / Expr::number(2.0) : prob.q;
    double value;
    try {
        value = integrate([&](double t) { return integrand.evaluate(t); }, a, b,
                          opt.quad_tol);
    } catch (const std::exception& e) {
        r.detail = std::string("quadrature failed: ") + e.what();
        return r;
    }
    double bound = 4.0 / (b - a);
    r.witness["integral"] = value;
    r.witness["bound"] = bound;
    if (leq(value, bound)) {
        r.verdict = Verdict::Proven;
        r.concluded = Interval::closed(a, b);
    } else {
        r.verdict = Verdict::Inconclusive;
        r.detail = "integral exceeds 4/(b-a)";
    }
    return r;
}

// --- q <= 0 ----------------------------------------------------------------------

CriterionReport crit_q_nonpositive(const OdeProblem& prob, const Interval& J,
                                   const CriteriaOptions& opt) {
    Interval w = criterion_window(prob, J, opt);
    CriterionReport r = base_report("q_nonpositive", w, opt.grid_points);
    Scan scan = scan_leq([&](double t) { return prob.q.evaluate(t); },
                         [](double) { return 0.0; }, w.lower, w.upper,
                         opt.grid_points, opt.margin_refine);
    Interval concluded = J.finite() ? J : Interval::closed(w.lower, w.upper);
    finish_scan(r, scan, concluded);
    if (r.verdict == Verdict::Proven && !J.finite())
        r.notes.push_back("stated for the unbounded interval; checked on the window");
    return r;
}

// --- sine test -------------------------------------------------------------------

CriterionReport crit_sine(const OdeProblem& prob, const Interval& J,
                          const CriteriaOptions& opt) {
    CriterionReport r = base_report("sine", J, 0);
    if (!J.finite()) {
        r.detail = "needs a finite interval";
        return r;
    }
    const double a = J.lower, b = J.upper, L = b - a;
    // endpoint hypothesis p = O(t-a), O(b-t): finite limit estimates on
    // geometric approach grids, with a pragmatic 1e6 cap
    try {
        for (int j = 2; j <= 8; ++j) {
            double d = L * std::pow(10.0, -j);
            if (std::fabs(prob.p.evaluate(a + d) / d) > 1e6 ||
                std::fabs(prob.p.evaluate(b - d) / d) > 1e6) {
                r.detail = "p does not vanish fast enough at an endpoint";
                return r;
            }
        }
    } catch (const std::exception& e) {
        r.detail = std::string("evaluation failed: ") + e.what();
        return r;
    }
    const double eps = 1e-6 * L;
    const double bound = kPi * kPi / (L * L);
    Scan scan = scan_leq(
        [&](double t) {
            double phase = kPi * (t - a) / L;
            double cot = std::cos(phase) / std::sin(phase);
            return (kPi / L) * cot * prob.p.evaluate(t) + prob.q.evaluate(t);
        },
        [&](double) { return bound; }, a + eps, b - eps, opt.grid_points,
        opt.margin_refine);
    finish_scan(r, scan, Interval::half_open(a, b));
    return r;
}

// --- parabola test ------------------------------------------------------------------

CriterionReport crit_parabola(const OdeProblem& prob, const Interval& J,
                              ParabolaForm form, const CriteriaOptions& opt) {
    CriterionReport r = base_report(
        form == ParabolaForm::Pointwise ? "parabola_c1" : "parabola_c2", J,
        opt.grid_points);
    if (!J.finite()) {
        r.detail = "needs a finite interval";
        return r;
    }
    const double a = J.lower, b = J.upper, L = b - a, mid = 0.5 * (a + b);
    if (form == ParabolaForm::Pointwise) {
        Scan scan = scan_leq(
            [&](double t) {
                return std::fabs(prob.p.evaluate(t)) * std::fabs(mid - t) +
                       std::fabs(prob.q.evaluate(t)) * (b - t) * (t - a) / 2.0;
            },
            [](double) { return 1.0; }, a, b, opt.grid_points, opt.margin_refine);
        finish_scan(r, scan, Interval::half_open(a, b));
        return r;
    }
    double max_p = 0.0, max_q = 0.0;
    try {
        for (double t : linspace(a, b, opt.grid_points)) {
            max_p = std::max(max_p, std::fabs(prob.p.evaluate(t)));
            max_q = std::max(max_q, std::fabs(prob.q.evaluate(t)));
        }
    } catch (const std::exception& e) {
        r.detail = std::string("evaluation failed: ") + e.what();
        return r;
    }
    // grid maxima stand in for essential suprema
    double lhs = (L / 2.0) * max_p + (L * L / 8.0) * max_q;
    r.witness["sup_p"] = max_p;
    r.witness["sup_q"] = max_q;
    r.witness["lhs"] = lhs;
    r.notes.push_back("essential suprema approximated by grid maxima");
    if (lhs <= 1.0 + 1e-12) {
        r.verdict = Verdict::Proven;
        r.concluded = Interval::half_open(a, b);
    } else {
        r.verdict = Verdict::Inconclusive;
        r.detail = "uniform bound exceeds 1";
    }
    return r;
}

// --- characteristic polynomial --------------------------------------------------------

namespace {

double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double tol, int iters = 100) {
    constexpr double phi = 0.6180339887498949;
    double c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < iters && hi - lo > tol; ++it) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

CriterionReport crit_char_poly(const OdeProblem& prob, const CriteriaOptions& opt) {
    Interval w = criterion_window(prob, prob.interval, opt);
    CriterionReport r = base_report("char_poly", w, opt.grid_points);
    auto ts = linspace(w.lower, w.upper, opt.grid_points);
    std::vector<double> ps(ts.size()), qs(ts.size());
    try {
        for (std::size_t i = 0; i < ts.size(); ++i) {
            ps[i] = prob.p.evaluate(ts[i]);
            qs[i] = prob.q.evaluate(ts[i]);
        }
    } catch (const std::exception& e) {
        r.detail = std::string("evaluation failed: ") + e.what();
        return r;
    }
    auto objective = [&](double nu) {
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ts.size(); ++i)
            worst = std::max(worst, nu * nu + ps[i] * nu + qs[i]);
        return worst;
    };
    // coarse symmetric logarithmic grid through zero, then golden-section
    std::vector<double> grid;
    grid.push_back(0.0);
    const std::size_t half = opt.nu_points / 2;
    for (std::size_t k = 0; k < half; ++k) {
        double expo = -3.0 + (std::log10(opt.nu_max) + 3.0) * static_cast<double>(k) /
                                 static_cast<double>(half > 1 ? half - 1 : 1);
        double u = std::pow(10.0, expo);
        grid.push_back(u);
        grid.push_back(-u);
    }
    std::sort(grid.begin(), grid.end());
    std::size_t best_idx = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double v = objective(grid[i]);
        if (v < best) {
            best = v;
            best_idx = i;
        }
    }
    double lo = grid[best_idx > 0 ? best_idx - 1 : 0];
    double hi = grid[std::min(best_idx + 1, grid.size() - 1)];
    // the endpoint max makes the objective kink at the minimizer, so refine
    // down to rounding to keep boundary-equality cases decidable
    double nu = golden_min(objective, lo, hi,
                           1e-15 * (1.0 + std::fabs(lo) + std::fabs(hi)), 200);
    double val = objective(nu);
    if (best < val) {
        val = best;
        nu = grid[best_idx];
    }
    r.witness["nu"] = nu;
    r.witness["margin"] = val;
    if (leq(val, 0.0)) {
        r.verdict = Verdict::Proven;
        r.concluded = Interval::closed(w.lower, w.upper);
        if (!prob.interval.finite())
            r.notes.push_back("stated for the unbounded interval; checked on the window");
    } else {
        r.verdict = Verdict::Inconclusive;
        r.detail = "no nu makes the characteristic polynomial nonpositive";
    }
    return r;
}

// --- Vallee-Poussin ----------------------------------------------------------------------

CriterionReport crit_vallee_poussin(const OdeProblem& prob, const Interval& J,
                                    const Expr& v, const CriteriaOptions& opt) {
    CriterionReport r = base_report("vallee_poussin", J, opt.grid_points);
    if (!J.finite()) {
        r.detail = "needs a finite interval";
        return r;
    }
    Expr v1, v2;
    try {
        v1 = v.derivative();
        v2 = v1.derivative();
    } catch (const NonDifferentiableError& e) {
        r.detail = std::string("test function not twice differentiable: ") + e.what();
        return r;
    }
    const double a = J.lower, b = J.upper, L = b - a;
    const double eps = 1e-6 * L;
    const bool closed = J.closed_lower && J.closed_upper;

    // positivity of v: on (a, b] for a closed target, on (a, b) otherwise
    Scan pos = scan_leq([&](double t) { return -v.evaluate(t); },
                        [](double) { return 0.0; }, a + eps, closed ? b : b - eps,
                        opt.grid_points, opt.margin_refine);
    if (pos.error) {
        r.detail = "evaluation failed: " + pos.message;
        return r;
    }
    if (!pos.holds || pos.worst_margin >= 0.0) {
        r.verdict = Verdict::Inconclusive;
        r.detail = "v is not strictly positive on the interval";
        r.witness["fail_t"] = pos.worst_t;
        return r;
    }
    Scan scan = scan_leq(
        [&](double t) {
            return v2.evaluate(t) + prob.p.evaluate(t) * v1.evaluate(t) +
                   prob.q.evaluate(t) * v.evaluate(t);
        },
        [&](double) { return opt.vp_slack; }, a + eps, b - eps, opt.grid_points,
        opt.margin_refine);
    finish_scan(r, scan, closed ? Interval::closed(a, b) : Interval::half_open(a, b));
    return r;
}

// --- auxiliary constant-coefficient kernel ------------------------------------------------

namespace {

// Cauchy kernel of x'' + P x' + Q x = 0 as a function of the separation
// tau = t - s >= 0, written against the smaller root so large separations
// stay finite.
struct ConstCauchy {
    double sqrt_disc = 0.0;
    double lam_minus = 0.0;
    double lam_plus = 0.0;

    static std::optional<ConstCauchy> make(double P, double Q) {
        double disc = P * P - 4.0 * Q;
        if (disc < 0.0) return std::nullopt;
        ConstCauchy k;
        k.sqrt_disc = std::sqrt(disc);
        k.lam_minus = 0.5 * (-P - k.sqrt_disc);
        k.lam_plus = 0.5 * (-P + k.sqrt_disc);
        return k;
    }

    static double expm1_over(double x) {
        if (std::fabs(x) < 1e-5) return 1.0 + 0.5 * x + x * x / 6.0;
        return std::expm1(x) / x;
    }

    double value(double tau) const {
        return tau * std::exp(lam_minus * tau) * expm1_over(sqrt_disc * tau);
    }
    double slope(double tau) const {
        return std::exp(lam_minus * tau) *
               (lam_plus * tau * expm1_over(sqrt_disc * tau) + 1.0);
    }
};

}  // namespace

CriterionReport crit_kernel_const_pq(const OdeProblem& prob, const Interval& J,
                                     double P, double Q, const CriteriaOptions& opt) {
    CriterionReport r = base_report("kernel_const_pq", J, opt.grid_points);
    r.witness["P"] = P;
    r.witness["Q"] = Q;
    if (!J.finite()) {
        r.detail = "needs a finite interval";
        return r;
    }
    auto kern = ConstCauchy::make(P, Q);
    if (!kern) {
        r.detail = "auxiliary equation has complex characteristic roots";
        return r;
    }
    const double a = J.lower, b = J.upper;
    {
        OdeProblem aux;
        aux.interval = Interval::whole_line();
        aux.p = Expr::number(P);
        aux.q = Expr::number(Q);
        OracleVerdict check = is_disconjugate(aux, Interval::closed(a, b), opt.aux_oracle);
        if (check.status == OracleStatus::NotDisconjugate) {
            r.detail = "auxiliary equation is not disconjugate on [a, b]";
            return r;
        }
    }
    // M(t,s) = c(t-a)c(b-s)/c(b-a) - [s<t] c(t-s); with this kernel the
    // deflection v(t) = ∫ M ds solves the auxiliary problem v'' + Pv' + Qv = -1
    // with v(a) = v(b) = 0 exactly (c' + Pc + Q∫c == 1).
    const double denom = kern->value(b - a);
    const double whole = integrate([&](double s) { return kern->value(b - s); }, a, b,
                                   opt.quad_tol);
    Scan scan = scan_leq(
        [&](double t) {
            double tail = integrate([&](double s) { return kern->value(t - s); }, a, t,
                                    opt.quad_tol);
            double i_m = kern->value(t - a) * whole / denom - tail;
            double i_dm = kern->slope(t - a) * whole / denom - kern->value(t - a);
            return (prob.p.evaluate(t) - P) * i_dm + (prob.q.evaluate(t) - Q) * i_m;
        },
        [](double) { return 1.0; }, a, b, opt.grid_points, opt.margin_refine);
    finish_scan(r, scan, Interval::half_open(a, b));
    return r;
}

CriterionReport crit_kernel_const_pq_auto(const OdeProblem& prob, const Interval& J,
                                          const CriteriaOptions& opt) {
    CriterionReport best = base_report("kernel_const_pq", J, 0);
    if (!J.finite()) {
        best.detail = "needs a finite interval";
        return best;
    }
    double mean_p = 0.0, mean_qneg = 0.0;
    try {
        auto ts = linspace(J.lower, J.upper, std::min<std::size_t>(opt.grid_points, 201));
        for (double t : ts) {
            mean_p += prob.p.evaluate(t);
            mean_qneg += std::min(prob.q.evaluate(t), 0.0);
        }
        mean_p /= static_cast<double>(ts.size());
        mean_qneg /= static_cast<double>(ts.size());
    } catch (const std::exception& e) {
        best.detail = std::string("evaluation failed: ") + e.what();
        return best;
    }
    const std::pair<double, double> candidates[] = {
        {mean_p, 0.0}, {mean_p, mean_qneg}, {0.0, 0.0}};
    bool have = false;
    for (auto [P, Q] : candidates) {
        CriterionReport r = crit_kernel_const_pq(prob, J, P, Q, opt);
        if (r.verdict == Verdict::Proven) return r;
        if (!have || (r.verdict == Verdict::Inconclusive &&
                      best.verdict == Verdict::NotApplicable)) {
            best = r;
            have = true;
        }
    }
    return best;
}

// --- Q = 0 kernel with explicit bound factors ----------------------------------------------

CriterionReport crit_kernel_q0(const OdeProblem& prob, const Interval& J, double P,
                               const CriteriaOptions& opt) {
    CriterionReport r = base_report("kernel_q0", J, opt.grid_points);
    r.witness["P"] = P;
    if (!J.finite()) {
        r.detail = "needs a finite interval";
        return r;
    }
    if (P == 0.0) {
        r.detail = "P = 0; use the constant-(P,Q) kernel with P = Q = 0";
        return r;
    }
    // reflection in t maps the auxiliary problem for P to the one for -P with
    // the same sup v and sup |v'|, so the bound factors are evaluated at |P|
    const double L = J.length();
    const double A = std::fabs(P);
    const double slope_bound =
        std::fabs(A * L + std::exp(-A * L) - 1.0) / (A * (1.0 - std::exp(-A * L)));
    const double value_bound =
        2.0 * (L / 2.0 - (1.0 / A) * (1.0 - std::exp(-A * L / 2.0))) /
        (A * (1.0 + std::exp(-A * L / 2.0)));
    r.witness["slope_bound"] = slope_bound;
    r.witness["value_bound"] = value_bound;
    if (P < 0.0)
        r.notes.push_back("bound factors evaluated at |P| (reflection symmetry)");
    Scan scan = scan_leq(
        [&](double t) {
            return std::fabs(prob.p.evaluate(t) - P) * slope_bound +
                   std::fabs(prob.q.evaluate(t)) * value_bound;
        },
        [](double) { return 1.0; }, J.lower, J.upper, opt.grid_points,
        opt.margin_refine);
    finish_scan(r, scan, Interval::half_open(J.lower, J.upper));
    return r;
}

// --- variable-p kernel ------------------------------------------------------------------------

CriterionReport crit_kernel_varp(const OdeProblem& prob, const Interval& J,
                                 const CriteriaOptions& opt) {
    CriterionReport r = base_report("kernel_varp", J, opt.grid_points);
    if (!J.finite()) {
        r.detail = "needs a finite interval";
        return r;
    }
    const double a = J.lower, b = J.upper;
    // F' = p, V' = exp(-F): F is the cumulative of p, V the cumulative
    // integrating factor
    Trajectory ode;
    try {
        Expr p = prob.p;
        Rhs2 rhs = [p](double t, const State2& y) -> State2 {
            return {p.evaluate(t), std::exp(-y.x)};
        };
        IvpOptions io = opt.ivp;
        io.locate_events = false;
        ode = rk45_solve(rhs, a, {0.0, 0.0}, b, io);
    } catch (const std::exception& e) {
        r.detail = std::string("integrating factor failed: ") + e.what();
        return r;
    }
    // M(t,s) = (V(b)-V(t)) V(s) / (V(b) W(s)) for s <= t and
    //          V(t) (V(b)-V(s)) / (V(b) W(s)) for s > t,
    // the (sign-flipped) kernel of v'' + p v' = -1, v(a) = v(b) = 0
    auto V = [&](double s) { return ode.eval(s).xp; };
    auto W = [&](double s) { return std::exp(-ode.eval(s).x); };
    const double Vb = V(b);
    Scan scan = scan_leq(
        [&](double t) {
            double left =
                integrate([&](double s) { return V(s) / W(s); }, a, t, opt.quad_tol);
            double right = integrate([&](double s) { return (Vb - V(s)) / W(s); }, t, b,
                                     opt.quad_tol);
            double m_int = ((Vb - V(t)) * left + V(t) * right) / Vb;
            return prob.q.evaluate(t) * m_int;
        },
        [](double) { return 1.0; }, a, b, opt.grid_points, opt.margin_refine);
    finish_scan(r, scan, Interval::half_open(a, b));
    return r;
}

// --- half-plane test ----------------------------------------------------------------------------

CriterionReport crit_halfplane(const OdeProblem& prob, const CriteriaOptions& opt) {
    Interval w = criterion_window(prob, prob.interval, opt);
    CriterionReport r = base_report("halfplane", w, opt.grid_points);
    auto ts = linspace(w.lower, w.upper, opt.grid_points);
    std::vector<double> ps(ts.size()), qs(ts.size());
    try {
        for (std::size_t i = 0; i < ts.size(); ++i) {
            ps[i] = prob.p.evaluate(ts[i]);
            qs[i] = prob.q.evaluate(ts[i]);
        }
    } catch (const std::exception& e) {
        r.detail = std::string("evaluation failed: ") + e.what();
        return r;
    }
    double best = std::numeric_limits<double>::infinity();
    double best_gamma = 0.0;
    int best_sign = +1;
    for (int sign : {+1, -1}) {
        auto objective = [&](double gamma) {
            double worst = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < ts.size(); ++i)
                worst = std::max(worst, qs[i] + gamma * gamma - sign * gamma * ps[i]);
            return worst;
        };
        double gamma = golden_min(objective, 0.0, opt.gamma_max, 1e-10);
        double val = objective(gamma);
        if (objective(0.0) <= val) {
            val = objective(0.0);
            gamma = 0.0;
        }
        if (val < best) {
            best = val;
            best_gamma = gamma;
            best_sign = sign;
        }
    }
    r.witness["gamma"] = best_gamma;
    r.witness["sign"] = best_sign;
    r.witness["margin"] = best;
    if (leq(best, 0.0)) {
        r.verdict = Verdict::Proven;
        r.concluded = Interval::closed(w.lower, w.upper);
        if (!prob.interval.finite())
            r.notes.push_back("stated for the unbounded interval; checked on the window");
    } else {
        r.verdict = Verdict::Inconclusive;
        r.detail = "coefficient curve leaves every tangent half-plane";
    }
    return r;
}

// --- affine coefficient curve ------------------------------------------------------------------

CriterionReport crit_line(const OdeProblem& prob, const CriteriaOptions& opt) {
    Interval w = criterion_window(prob, prob.interval, opt);
    CriterionReport r = base_report("line", w, opt.grid_points);
    auto ts = linspace(w.lower, w.upper, opt.grid_points);
    std::vector<double> ps(ts.size()), qs(ts.size());
    try {
        for (std::size_t i = 0; i < ts.size(); ++i) {
            ps[i] = prob.p.evaluate(ts[i]);
            qs[i] = prob.q.evaluate(ts[i]);
        }
    } catch (const std::exception& e) {
        r.detail = std::string("evaluation failed: ") + e.what();
        return r;
    }
    const auto n = static_cast<double>(ts.size());
    double mp = 0.0, mq = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        mp += ps[i];
        mq += qs[i];
    }
    mp /= n;
    mq /= n;
    double qspread = 0.0;
    for (double q : qs) qspread = std::max(qspread, std::fabs(q - mq));

    if (qspread <= 1e-12 * (1.0 + std::fabs(mq))) {  // q constant: any p allowed
        r.witness["q_const"] = mq;
        if (leq(mq, 0.0)) {
            r.verdict = Verdict::Proven;
            r.concluded = Interval::closed(w.lower, w.upper);
            r.detail = "q is a nonpositive constant";
            if (!prob.interval.finite())
                r.notes.push_back(
                    "stated for the unbounded interval; checked on the window");
        } else {
            r.verdict = Verdict::Inconclusive;
            r.detail = "q is a positive constant";
        }
        return r;
    }

    double spp = 0.0, spq = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        spp += (ps[i] - mp) * (ps[i] - mp);
        spq += (ps[i] - mp) * (qs[i] - mq);
    }
    if (spp <= 1e-20 * n) {
        r.detail = "p is constant but q is not: no affine relation";
        return r;
    }
    double k = spq / spp;
    double c = mq - k * mp;
    double residual = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i)
        residual = std::max(residual, std::fabs(qs[i] - c - k * ps[i]));
    double scale = 1.0 + std::fabs(mq) + std::fabs(k) * (1.0 + std::fabs(mp));
    r.witness["k"] = k;
    r.witness["c"] = c;
    r.witness["residual"] = residual;
    if (residual > 1e-9 * scale) {
        r.detail = "no affine relation q = c + k p on the grid";
        return r;
    }
    if (c <= rel_guard(c, 0.0)) {
        double gamma = std::sqrt(std::max(0.0, -c));
        r.witness["gamma"] = gamma;
        if (std::fabs(k) <= gamma + rel_guard(k, gamma)) {
            r.verdict = Verdict::Proven;
            r.concluded = Interval::closed(w.lower, w.upper);
            if (!prob.interval.finite())
                r.notes.push_back(
                    "stated for the unbounded interval; checked on the window");
            return r;
        }
    }
    r.verdict = Verdict::Inconclusive;
    r.detail = "the affine coefficient line leaves the real-root region";
    return r;
}

// --- r-condition test ---------------------------------------------------------------------------

CriterionReport crit_r_condition(const OdeProblem& prob, const Expr& r_fn,
                                 const CriteriaOptions& opt) {
    Interval w = criterion_window(prob, prob.interval, opt);
    CriterionReport r = base_report("r_condition", w, opt.grid_points);
    Expr dp;
    try {
        dp = prob.p.derivative();
    } catch (const NonDifferentiableError& e) {
        r.detail = std::string("p not differentiable: ") + e.what();
        return r;
    }
    auto pv = [&](double t) { return prob.p.evaluate(t); };
    auto qv = [&](double t) { return prob.q.evaluate(t); };
    auto rv = [&](double t) { return r_fn.evaluate(t); };
    auto dpv = [&](double t) { return dp.evaluate(t); };

    Scan bound = scan_leq(qv, [&](double t) { return pv(t) * pv(t) / 4.0 + rv(t); },
                          w.lower, w.upper, opt.grid_points, opt.margin_refine);
    if (bound.error) {
        r.detail = "evaluation failed: " + bound.message;
        return r;
    }
    if (!bound.holds) {
        r.verdict = Verdict::Inconclusive;
        r.detail = "q exceeds p^2/4 + r near t=" + std::to_string(bound.worst_t);
        r.witness["fail_t"] = bound.worst_t;
        return r;
    }
    // each branch is certified by an explicit exponential test function:
    // 1: exp(-(1/2)∫p)  2: exp(-∫p)  3: exp(+(1/2)∫p)  4: exp(+∫p)
    struct Branch {
        int id;
        const char* what;
        std::function<double(double)> lhs;
        std::function<double(double)> rhs;
    };
    const Branch branches[] = {
        {1, "p' >= 2r", [&](double t) { return 2.0 * rv(t); }, dpv},
        {2, "p^2 - 4p' + 4r <= 0",
         [&](double t) { return pv(t) * pv(t) - 4.0 * dpv(t) + 4.0 * rv(t); },
         [](double) { return 0.0; }},
        {3, "p' <= -2r - 2p^2", dpv,
         [&](double t) { return -2.0 * rv(t) - 2.0 * pv(t) * pv(t); }},
        {4, "9p^2 + 4p' + 4r <= 0",
         [&](double t) { return 9.0 * pv(t) * pv(t) + 4.0 * dpv(t) + 4.0 * rv(t); },
         [](double) { return 0.0; }},
    };
    for (const auto& br : branches) {
        Scan s = scan_leq(br.lhs, br.rhs, w.lower, w.upper, opt.grid_points,
                          opt.margin_refine);
        if (s.error) {
            r.detail = "evaluation failed: " + s.message;
            return r;
        }
        if (s.holds) {
            r.verdict = Verdict::Proven;
            r.concluded = Interval::closed(w.lower, w.upper);
            r.witness["branch"] = br.id;
            r.detail = br.what;
            if (!prob.interval.finite())
                r.notes.push_back(
                    "stated for the unbounded interval; checked on the window");
            return r;
        }
    }
    r.verdict = Verdict::Inconclusive;
    r.detail = "q <= p^2/4 + r holds but no p' branch does";
    return r;
}

// --- gauge bound test ----------------------------------------------------------------------------

CriterionReport crit_monotone_p(const OdeProblem& prob, const CriteriaOptions& opt) {
    Interval w = criterion_window(prob, prob.interval, opt);
    CriterionReport r = base_report("monotone_p", w, opt.grid_points);
    Expr dp;
    try {
        dp = prob.p.derivative();
    } catch (const NonDifferentiableError& e) {
        r.detail = std::string("p not differentiable: ") + e.what();
        return r;
    }
    int seen_pos = 0, seen_neg = 0;
    try {
        for (double t :
             linspace(w.lower, w.upper, std::min<std::size_t>(201, opt.grid_points))) {
            double d = dp.evaluate(t);
            if (d > 1e-12) seen_pos = 1;
            if (d < -1e-12) seen_neg = 1;
        }
    } catch (const std::exception& e) {
        r.detail = std::string("evaluation failed: ") + e.what();
        return r;
    }
    r.witness["p_monotonicity"] =
        (seen_pos && !seen_neg) ? 1.0 : (!seen_pos && seen_neg) ? -1.0 : 0.0;
    Scan scan = scan_leq(
        [&](double t) { return prob.q.evaluate(t); },
        [&](double t) {
            double p = prob.p.evaluate(t);
            return p * p / 4.0 + 0.5 * dp.evaluate(t);
        },
        w.lower, w.upper, opt.grid_points, opt.margin_refine);
    finish_scan(r, scan, Interval::closed(w.lower, w.upper));
    if (r.verdict == Verdict::Proven && !prob.interval.finite())
        r.notes.push_back("stated for the unbounded interval; checked on the window");
    return r;
}

// --- battery --------------------------------------------------------------------------------------

BatteryResult run_battery(const OdeProblem& prob, const Interval& J,
                          const BatteryOptions& opt) {
    const CriteriaOptions& co = opt.criteria;
    std::vector<std::function<CriterionReport()>> tasks;

    tasks.push_back([&] { return crit_constant(prob, J, co); });
    tasks.push_back([&] { return crit_euler(prob, co); });
    tasks.push_back([&] { return crit_lyapunov(prob, J, false, co); });
    tasks.push_back([&] { return crit_lyapunov(prob, J, true, co); });
    tasks.push_back([&] { return crit_q_nonpositive(prob, J, co); });
    tasks.push_back([&] { return crit_sine(prob, J, co); });
    tasks.push_back([&] { return crit_parabola(prob, J, ParabolaForm::Pointwise, co); });
    tasks.push_back([&] { return crit_parabola(prob, J, ParabolaForm::Uniform, co); });
    tasks.push_back([&] { return crit_char_poly(prob, co); });
    if (opt.test_function_v)
        tasks.push_back(
            [&] { return crit_vallee_poussin(prob, J, *opt.test_function_v, co); });
    tasks.push_back([&] { return crit_kernel_const_pq_auto(prob, J, co); });
    tasks.push_back([&]() -> CriterionReport {
        if (!J.finite()) {
            CriterionReport r = base_report("kernel_q0", J, 0);
            r.detail = "needs a finite interval";
            return r;
        }
        double mean_p = 0.0;
        try {
            auto ts = linspace(J.lower, J.upper, 201);
            for (double t : ts) mean_p += prob.p.evaluate(t);
            mean_p /= static_cast<double>(ts.size());
        } catch (const std::exception& e) {
            CriterionReport r = base_report("kernel_q0", J, 0);
            r.detail = std::string("evaluation failed: ") + e.what();
            return r;
        }
        return crit_kernel_q0(prob, J, mean_p, co);
    });
    tasks.push_back([&] { return crit_kernel_varp(prob, J, co); });
    tasks.push_back([&] { return crit_halfplane(prob, co); });
    tasks.push_back([&] { return crit_line(prob, co); });
    tasks.push_back([&] {
        Expr r_fn = opt.r ? *opt.r : Expr::number(0.0);
        return crit_r_condition(prob, r_fn, co);
    });
    tasks.push_back([&] { return crit_monotone_p(prob, co); });

    auto run_one = [](const std::function<CriterionReport()>& task) {
        try {
            return task();
        } catch (const std::exception& e) {
            CriterionReport r;
            r.id = "unknown";
            r.verdict = Verdict::NotApplicable;
            r.detail = std::string("checker failed: ") + e.what();
            return r;
        }
    };

    BatteryResult result;
    if (opt.parallel) {
        std::vector<std::future<CriterionReport>> futs;
        futs.reserve(tasks.size());
        for (auto& t : tasks)
            futs.push_back(std::async(std::launch::async, run_one, std::cref(t)));
        for (auto& f : futs) result.reports.push_back(f.get());
    } else {
        for (auto& t : tasks) result.reports.push_back(run_one(t));
    }

    if (opt.run_oracle) {
        try {
            result.oracle = is_disconjugate(prob, J, opt.oracle);
        } catch (const std::exception& e) {
            OracleVerdict v;
            v.status = OracleStatus::Undetermined;
            v.queried = J;
            v.message = std::string("oracle failed: ") + e.what();
            result.oracle = v;
        }
    }

    auto rank = [](Verdict v) {
        switch (v) {
            case Verdict::Proven: return 0;
            case Verdict::Disproven: return 1;
            case Verdict::Inconclusive: return 2;
            case Verdict::NotApplicable: return 3;
        }
        return 4;
    };
    std::stable_sort(result.reports.begin(), result.reports.end(),
                     [&](const CriterionReport& x, const CriterionReport& y) {
                         return rank(x.verdict) < rank(y.verdict);
                     });

    // a Proven report settles the query only when the interval it certifies
    // covers the queried one (closed-closed is strictly stronger than the
    // open and half-open forms); unbounded queries are compared on their
    // truncation window, which is all any checker can examine
    Interval effective = J.finite()
                             ? J
                             : Interval::closed(criterion_window(prob, J, co).lower,
                                                criterion_window(prob, J, co).upper);
    bool any_proven = false, any_disproven = false;
    for (const auto& rep : result.reports) {
        if (rep.verdict == Verdict::Proven && rep.concluded &&
            covers_disconjugacy(*rep.concluded, effective))
            any_proven = true;
        any_disproven = any_disproven || rep.verdict == Verdict::Disproven;
    }
    if (any_proven)
        result.aggregate = Verdict::Proven;
    else if (any_disproven ||
             (result.oracle && result.oracle->status == OracleStatus::NotDisconjugate))
        result.aggregate = Verdict::Disproven;
    else
        result.aggregate = Verdict::Inconclusive;

    result.notes = prob.notes;
    return result;
}

std::string battery_csv(const BatteryResult& result) {
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            out += c;
            if (c == '"') out += '"';
        }
        out += '"';
        return out;
    };
    std::string out = "criterion,verdict,witness,detail\n";
    char buf[64];
    for (const auto& r : result.reports) {
        std::string witness;
        for (const auto& [k, v] : r.witness) {
            if (!witness.empty()) witness += ';';
            std::snprintf(buf, sizeof buf, "%s=%.12g", k.c_str(), v);
            witness += buf;
        }
        out += r.id;
        out += ',';
        out += to_string(r.verdict);
        out += ',';
        out += quote(witness);
        out += ',';
        out += quote(r.detail);
        out += '\n';
    }
    return out;
}

}  // namespace disconj
