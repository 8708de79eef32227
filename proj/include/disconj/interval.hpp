#ifndef DISCONJ_INTERVAL_HPP
#define DISCONJ_INTERVAL_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace disconj {

class IntervalShapeError : public std::runtime_error {
public:
    explicit IntervalShapeError(const std::string& what) : std::runtime_error(what) {}
};

/// An interval with optionally infinite endpoints. Infinite endpoints are
/// always open; lower < upper.
struct Interval {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    bool closed_lower = false;
    bool closed_upper = false;

    Interval() = default;
    Interval(double lo, double hi, bool closed_lo, bool closed_hi);

    static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
    static Interval open(double lo, double hi) { return {lo, hi, false, false}; }
    static Interval half_open(double lo, double hi) { return {lo, hi, true, false}; }
    static Interval whole_line() { return {}; }

    bool lower_finite() const { return std::isfinite(lower); }
    bool upper_finite() const { return std::isfinite(upper); }
    bool finite() const { return lower_finite() && upper_finite(); }
    double length() const { return upper - lower; }

    bool contains(double t) const {
        if (t < lower || t > upper) return false;
        if (t == lower && !closed_lower) return false;
        if (t == upper && !closed_upper) return false;
        return true;
    }

    /// Set inclusion, honoring closure flags.
    bool contains(const Interval& other) const;

    std::string str() const;
};

bool operator==(const Interval& a, const Interval& b);

/// True when disconjugacy on `concluded` implies disconjugacy on `queried`:
/// either queried is a subset of concluded, or the two share endpoints and
/// belong to the same equivalence class (the open and half-open variants of a
/// finite interval are interchangeable; closed-closed is strictly stronger).
bool covers_disconjugacy(const Interval& concluded, const Interval& queried);

struct TruncationOptions {
    double whole_line_halfwidth = 50.0;  ///< R truncates to [-w, w]
    double half_line_span = 100.0;       ///< (a, inf) truncates to [a+eps, a+span]
    double endpoint_inset = 1e-6;        ///< inset from finite open endpoints
};

/// Finite window used by grid checks and shooting on a possibly unbounded
/// interval. Finite closed endpoints are kept; open or infinite ones are
/// approached per the options.
Interval truncate_interval(const Interval& iv, const TruncationOptions& opt = {});

/// Inward offset used when launching solutions from an open endpoint.
double endpoint_inset(double endpoint, double scale = 1e-7);

}  // namespace disconj

#endif
