#ifndef DISCONJ_PROBLEM_HPP
#define DISCONJ_PROBLEM_HPP

#include <optional>
#include <string>
#include <vector>

#include "disconj/expr.hpp"
#include "disconj/interval.hpp"

namespace disconj {

/// x'' + p(t) x' + q(t) x = f(t) on an interval. f absent means the
/// homogeneous equation.
struct OdeProblem {
    Interval interval;
    Expr p;
    Expr q;
    std::optional<Expr> f;
    std::vector<std::string> notes;  ///< caveats attached by transformations

    /// Spot-check that p, q (and f) evaluate at interior grid points.
    /// Throws EvalError naming the first failure.
    void validate(std::size_t grid_points = 33,
                  const TruncationOptions& trunc = {}) const;
};

/// Replace q by pointwise max(q, 0); p and f unchanged. The wrapper is the
/// exact identity (q + |q|)/2, so it stays within the expression grammar.
OdeProblem q_plus(const OdeProblem& prob);

/// For a problem on (a, +inf), compose the coefficients with a + t^2 and
/// return the result on the whole line. The composition is literal: no
/// chain-rule terms are introduced, and the returned problem carries a note
/// saying so.
OdeProblem halfline_substitution(const OdeProblem& prob);

/// A point (p, q) of the coefficient plane.
struct PlanePoint {
    double p = 0.0;
    double q = 0.0;
};

/// Real-root region p^2 - 4q >= 0.
bool in_region_N(const PlanePoint& pt);

enum class HalfplaneSign { Plus, Minus };

/// Half-plane q <= -gamma^2 + gamma*p (Plus) or q <= -gamma^2 - gamma*p
/// (Minus). Both are tangent to the parabola q = p^2/4, hence contained in
/// the real-root region for every gamma >= 0.
bool in_halfplane_M(const PlanePoint& pt, double gamma, HalfplaneSign sign);

}  // namespace disconj

#endif
