#include "disconj/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace disconj {

void OdeProblem::validate(std::size_t grid_points, const TruncationOptions& trunc) const {
    if (p.empty() || q.empty()) throw std::invalid_argument("problem needs both p and q");
    const Interval w = truncate_interval(interval, trunc);
    const std::size_t n = grid_points < 3 ? 3 : grid_points;
    const double inset = 1e-9 * (1.0 + std::fabs(w.lower) + std::fabs(w.upper));
    const double lo = w.lower + inset;
    const double hi = w.upper - inset;
    for (std::size_t i = 0; i < n; ++i) {
        double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        p.evaluate(t);
        q.evaluate(t);
        if (f) f->evaluate(t);
    }
}

OdeProblem q_plus(const OdeProblem& prob) {
    OdeProblem out = prob;
    // max(q, 0) == (q + |q|)/2 exactly in floating point
    out.q = (prob.q + abs(prob.q)) / Expr::number(2.0);
    return out;
}

OdeProblem halfline_substitution(const OdeProblem& prob) {
    const Interval& iv = prob.interval;
    if (!iv.lower_finite() || iv.upper_finite())
        throw IntervalShapeError(
            "half-line substitution needs an interval of the form (a, +inf); got " +
            iv.str());
    Expr arg = Expr::number(iv.lower) + pow(Expr::variable(), Expr::number(2.0));
    OdeProblem out;
    out.interval = Interval::whole_line();
    out.p = prob.p.substitute(arg);
    out.q = prob.q.substitute(arg);
    if (prob.f) out.f = prob.f->substitute(arg);
    out.notes = prob.notes;
    out.notes.push_back(
        "coefficients composed with t -> a + t^2 verbatim (no chain-rule terms); "
        "verdicts below refer to the composed equation");
    return out;
}

bool in_region_N(const PlanePoint& pt) { return pt.p * pt.p - 4.0 * pt.q >= 0.0; }

bool in_halfplane_M(const PlanePoint& pt, double gamma, HalfplaneSign sign) {
    if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
    double rhs = -gamma * gamma + (sign == HalfplaneSign::Plus ? gamma * pt.p : -gamma * pt.p);
    return pt.q <= rhs;
}

}  // namespace disconj
