#include "disconj/greens.hpp"

#include <algorithm>
#include <cmath>

#include "disconj/quadrature.hpp"

namespace disconj {

GreenFunction::GreenFunction(CauchyFunction cauchy, double a, double b)
    : cauchy_(std::move(cauchy)), a_(a), b_(b), c_ba_(cauchy_(b, a)) {}

double GreenFunction::operator()(double t, double s) const {
    // variation-of-constants form; for p == 0 this equals the familiar
    // product formula -C(b,t)C(s,a)/C(b,a) on the s < t branch
    double base = -cauchy_(t, a_) * cauchy_(b_, s) / c_ba_;
    if (s < t) base += cauchy_(t, s);
    return base;
}

Kernel GreenFunction::kernel() const {
    Kernel k;
    k.type = Kernel::Type::Green;
    k.name = "green";
    k.t_domain = Interval::closed(a_, b_);
    k.s_domain = Interval::closed(a_, b_);
    GreenFunction self = *this;
    k.value = [self](double t, double s) { return self(t, s); };
    return k;
}

namespace {

double kernel_scale(const CauchyFunction& c, double a, double b) {
    double scale = 0.0;
    const int n = 9;
    for (int i = 0; i < n; ++i) {
        double s = a + (b - a) * i / (n - 1);
        for (int j = i + 1; j < n; ++j) {
            double t = a + (b - a) * j / (n - 1);
            scale = std::max(scale, std::fabs(c(t, s)));
        }
    }
    return scale;
}

}  // namespace

GreenFunction build_green(const OdeProblem& prob, const Interval& J,
                          const GreenOptions& opt) {
    if (!J.finite()) throw IntervalShapeError("Green's function needs a finite [a, b]");
    const double a = J.lower, b = J.upper;
    CauchyFunction cauchy(prob, Interval::closed(a, b), opt.ivp);
    double scale = kernel_scale(cauchy, a, b);
    double c_ba = cauchy(b, a);
    if (scale == 0.0 || std::fabs(c_ba) <= opt.resonance_rel_threshold * scale)
        throw ResonanceError("C(b, a) vanishes relative to the kernel scale: the "
                             "boundary value problem is resonant");
    return GreenFunction(cauchy, a, b);
}

Trajectory solve_bvp(const OdeProblem& prob, const Interval& J,
                     const GreenOptions& opt) {
    if (!prob.f) throw PreconditionError("solve_bvp needs a right-hand side f");
    GreenFunction G = build_green(prob, J, opt);
    const double a = G.a(), b = G.b();
    Expr f = *prob.f;

    auto value_at = [&](double t) {
        // branch-split quadrature: G is only piecewise smooth across s = t
        double left =
            t > a ? integrate([&](double s) { return G(t, s) * f.evaluate(s); }, a, t,
                              opt.quad_tol)
                  : 0.0;
        double right =
            t < b ? integrate([&](double s) { return G(t, s) * f.evaluate(s); }, t, b,
                              opt.quad_tol)
                  : 0.0;
        return left + right;
    };

    // slope at a from the kernel: dG/dt(a, s) = -dC/dt(a,a) C(b,s)/C(b,a)
    double slope = integrate(
        [&](double s) { return -G.cauchy()(b, s) / G.c_ba() * f.evaluate(s); }, a, b,
        opt.quad_tol);

    Trajectory shot = solve_ivp(prob, a, 0.0, slope, b, opt.ivp);
    std::size_t n = std::max<std::size_t>(opt.output_points, 5);
    for (std::size_t i = 0; i < n; ++i) {
        double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
        double gv = value_at(t);
        double sv = shot.x(t);
        if (std::fabs(gv - sv) > 1e-6 * (1.0 + std::fabs(gv)))
            throw IntegrationError("Green-quadrature and shooting disagree", t);
    }
    return shot;
}

Trajectory positive_solution(const OdeProblem& prob, const Interval& J,
                             const GreenOptions& opt) {
    if (!J.finite())
        throw IntervalShapeError("positive solution needs a finite interval");
    OracleVerdict v = is_disconjugate(prob, J, opt.oracle);
    if (v.status != OracleStatus::Disconjugate)
        throw PreconditionError("oracle does not confirm disconjugacy on " + J.str());

    OdeProblem hom = prob;
    hom.f.reset();
    const double a = J.lower, b = J.upper;
    const double launch = J.closed_lower ? a : a + endpoint_inset(a);
    const double end = J.closed_upper ? b : b - endpoint_inset(b);

    if (J.closed_lower && J.closed_upper) {
        Trajectory y2 = solve_ivp(hom, b, 0.0, -1.0, a, opt.ivp);
        State2 y2a = y2.eval(a);
        Trajectory sum = solve_ivp(hom, a, y2a.x, 1.0 + y2a.xp, b, opt.ivp);
        const int n = 201;
        for (int i = 0; i < n; ++i) {
            double t = a + (b - a) * i / (n - 1);
            if (!(sum.x(t) > 0.0))
                throw IntegrationError("positive solution failed the grid check", t);
        }
        return sum;
    }
    Trajectory y1 = solve_ivp(hom, launch, 0.0, 1.0, end, opt.ivp);
    const int n = 201;
    for (int i = 1; i < n; ++i) {  // strictly to the right of the launch zero
        double t = launch + (end - launch) * i / (n - 1);
        if (!(y1.x(t) > 0.0))
            throw IntegrationError("positive solution failed the grid check", t);
    }
    return y1;
}

}  // namespace disconj
