#ifndef DISCONJ_INTEGRATE_HPP
#define DISCONJ_INTEGRATE_HPP

#include <functional>
#include <memory>
#include <string>

#include "disconj/problem.hpp"
#include "disconj/rk45.hpp"
#include "disconj/trajectory.hpp"

namespace disconj {

/// Right-hand side of the first-order system for prob (honors f when present).
Rhs2 make_rhs(const OdeProblem& prob);

/// Integrate prob from (t0, x0, x0p) to t1 (either direction) with dense
/// output and located zeros.
Trajectory solve_ivp(const OdeProblem& prob, double t0, double x0, double x0p,
                     double t1, const IvpOptions& opt = {});

/// u1(t) u2'(t) - u2(t) u1'(t). Both trajectories must cover t.
double wronskian(const Trajectory& u1, const Trajectory& u2, double t);

/// A sampled two-variable kernel over a rectangle, with a name saying which
/// kernel it is (Cauchy C, Green G, auxiliary M).
struct Kernel {
    enum class Type { Cauchy, Green, Auxiliary };
    Type type = Type::Auxiliary;
    std::string name;
    Interval t_domain;
    Interval s_domain;
    std::function<double(double, double)> value;

    /// CSV export on an n x n grid: header "t,s,value".
    std::string to_csv(std::size_t n = 21) const;
};

/// Cauchy function C(t, s): for each source s, the solution with
/// C(s,s) = 0 and dC/dt(s,s) = 1, integrated on demand and memoized per s
/// (LRU). Thread-safe; copies share the memo.
class CauchyFunction {
public:
    CauchyFunction(OdeProblem prob, Interval window, IvpOptions opt = {},
                   std::size_t memo_capacity = 256);

    double operator()(double t, double s) const;
    double dt(double t, double s) const;  ///< dC/dt
    const Interval& window() const;

    /// The memoized trajectory through source s (covering the window side
    /// containing t).
    std::shared_ptr<const Trajectory> trajectory(double s, double t) const;

    Kernel kernel() const;

private:
    struct Memo;
    std::shared_ptr<Memo> memo_;
};

/// Cauchy function of the homogeneous part of prob on the (truncated)
/// problem interval.
CauchyFunction cauchy_function(const OdeProblem& prob, const IvpOptions& opt = {},
                               const TruncationOptions& trunc = {});

/// Value at t1 of the solution with x(t0)=x0, x'(t0)=x0p computed through the
/// variation-of-constants representation: homogeneous part from a fundamental
/// system at t0 plus the integral of C(t1, s) f(s) over [t0, t1].
double variation_of_constants(const OdeProblem& prob, double t0, double x0,
                              double x0p, double t1, const IvpOptions& opt = {},
                              double quad_tol = 1e-9);

}  // namespace disconj

#endif
