#include "disconj/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace disconj {

Interval::Interval(double lo, double hi, bool closed_lo, bool closed_hi)
    : lower(lo), upper(hi), closed_lower(closed_lo), closed_upper(closed_hi) {
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi))
        throw IntervalShapeError("interval requires lower < upper");
    if (!std::isfinite(lo) && closed_lower)
        throw IntervalShapeError("an infinite lower endpoint must be open");
    if (!std::isfinite(hi) && closed_upper)
        throw IntervalShapeError("an infinite upper endpoint must be open");
}

bool Interval::contains(const Interval& other) const {
    if (other.lower < lower || other.upper > upper) return false;
    if (other.lower == lower && other.closed_lower && !closed_lower) return false;
    if (other.upper == upper && other.closed_upper && !closed_upper) return false;
    return true;
}

std::string Interval::str() const {
    auto fmt = [](double v) -> std::string {
        if (v == -std::numeric_limits<double>::infinity()) return "-inf";
        if (v == std::numeric_limits<double>::infinity()) return "inf";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return buf;
    };
    std::string s;
    s += closed_lower ? '[' : '(';
    s += fmt(lower) + ", " + fmt(upper);
    s += closed_upper ? ']' : ')';
    return s;
}

bool operator==(const Interval& a, const Interval& b) {
    return a.lower == b.lower && a.upper == b.upper &&
           a.closed_lower == b.closed_lower && a.closed_upper == b.closed_upper;
}

bool covers_disconjugacy(const Interval& concluded, const Interval& queried) {
    if (concluded.contains(queried)) return true;
    if (concluded.lower == queried.lower && concluded.upper == queried.upper) {
        bool queried_cc = queried.closed_lower && queried.closed_upper;
        bool concluded_cc = concluded.closed_lower && concluded.closed_upper;
        return !queried_cc || concluded_cc;
    }
    return false;
}

Interval truncate_interval(const Interval& iv, const TruncationOptions& opt) {
    double lo = iv.lower;
    double hi = iv.upper;
    if (!iv.lower_finite() && !iv.upper_finite()) {
        lo = -opt.whole_line_halfwidth;
        hi = opt.whole_line_halfwidth;
    } else if (!iv.upper_finite()) {
        lo = iv.closed_lower ? iv.lower : iv.lower + opt.endpoint_inset;
        hi = iv.lower + opt.half_line_span;
    } else if (!iv.lower_finite()) {
        hi = iv.closed_upper ? iv.upper : iv.upper - opt.endpoint_inset;
        lo = iv.upper - opt.half_line_span;
    } else {
        if (!iv.closed_lower) lo += opt.endpoint_inset * std::max(1.0, std::fabs(lo));
        if (!iv.closed_upper) hi -= opt.endpoint_inset * std::max(1.0, std::fabs(hi));
        if (!(lo < hi)) {  // degenerate after insetting a very short interval
            lo = iv.lower;
            hi = iv.upper;
        }
    }
    return Interval::closed(lo, hi);
}

double endpoint_inset(double endpoint, double scale) {
    return scale * (1.0 + std::fabs(endpoint));
}

}  // namespace disconj
