#ifndef DISCONJ_GREENS_HPP
#define DISCONJ_GREENS_HPP

#include <memory>

#include "disconj/integrate.hpp"
#include "disconj/oracle.hpp"

namespace disconj {

/// The two-point boundary value problem on [a, b] is (numerically) resonant:
/// C(b, a) vanishes relative to the kernel scale, so zero-Dirichlet data do
/// not determine a unique solution.
class ResonanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Green's function of x'' + p x' + q x = f with x(a) = x(b) = 0, built from
/// the Cauchy function through the two-branch product identity. Negative on
/// the open square when the equation is disconjugate on [a, b].
class GreenFunction {
public:
    GreenFunction(CauchyFunction cauchy, double a, double b);

    double operator()(double t, double s) const;

    double a() const { return a_; }
    double b() const { return b_; }
    double c_ba() const { return c_ba_; }
    const CauchyFunction& cauchy() const { return cauchy_; }

    Kernel kernel() const;

private:
    CauchyFunction cauchy_;
    double a_, b_;
    double c_ba_;
};

struct GreenOptions {
    IvpOptions ivp;
    double resonance_rel_threshold = 1e-10;
    double quad_tol = 1e-9;
    std::size_t output_points = 33;
    OracleOptions oracle;
};

/// Throws ResonanceError when C(b, a) is zero relative to max |C| over the
/// square.
GreenFunction build_green(const OdeProblem& prob, const Interval& J,
                          const GreenOptions& opt = {});

/// Solve the zero-Dirichlet problem by quadrature of G(t,s) f(s) per output
/// point; the returned trajectory comes from shooting with the slope the
/// kernel dictates and is cross-checked against the quadrature values to
/// 1e-6.
Trajectory solve_bvp(const OdeProblem& prob, const Interval& J,
                     const GreenOptions& opt = {});

/// A solution positive on the interval: the sum of the two one-sided
/// vanishing solutions for a closed [a, b], the left one alone for [a, b).
/// Requires the oracle to confirm disconjugacy first.
Trajectory positive_solution(const OdeProblem& prob, const Interval& J,
                             const GreenOptions& opt = {});

}  // namespace disconj

#endif
