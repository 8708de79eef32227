#include "disconj/factorize.hpp"

#include <cmath>
#include <cstdio>

namespace disconj {

std::string Factorization::to_csv(std::size_t n) const {
    if (n < 2) n = 2;
    std::string out = "t,h0,h1,h2\n";
    char buf[160];
    for (std::size_t i = 0; i < n; ++i) {
        double t = window.lower +
                   (window.upper - window.lower) * static_cast<double>(i) /
                       static_cast<double>(n - 1);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", t, h0(t), h1(t),
                      h2(t));
        out += buf;
    }
    return out;
}

Factorization factorize(const OdeProblem& prob, const Interval& J,
                        const GreenOptions& opt) {
    auto y = std::make_shared<Trajectory>(positive_solution(prob, J, opt));

    OdeProblem hom = prob;
    hom.f.reset();
    const double t0 = y->t_start();
    const double t1 = y->t_end();
    State2 y0 = y->eval(t0);
    // companion with rotated initial data: w(t0) = y^2 + y'^2 > 0
    auto u = std::make_shared<Trajectory>(
        solve_ivp(hom, t0, -y0.xp, y0.x, t1, opt.ivp));

    auto w = [y, u](double t) {
        State2 a = y->eval(t), b = u->eval(t);
        return a.x * b.xp - b.x * a.xp;
    };

    // the factors blow up where y -> 0, so keep the window strictly inside
    // the span when the positive solution vanishes at the launch point
    double lo = t0, hi = t1;
    const bool y_vanishes_at_launch = std::fabs(y0.x) == 0.0;
    if (y_vanishes_at_launch) lo = t0 + std::max(1e-6 * (hi - lo), endpoint_inset(t0));
    Factorization fac;
    fac.window = Interval::closed(lo, hi);
    fac.y = y;
    fac.u = u;
    fac.h0 = [y](double t) { return 1.0 / y->x(t); };
    fac.h1 = [y, w](double t) {
        double v = y->x(t);
        return v * v / w(t);
    };
    fac.h2 = [y, w](double t) { return w(t) / y->x(t); };

    const int n = 101;
    for (int i = 0; i < n; ++i) {
        double t = lo + (hi - lo) * i / (n - 1);
        if (!(w(t) > 0.0))
            throw IntegrationError("companion Wronskian lost positivity", t);
        if (!(y->x(t) > 0.0))
            throw IntegrationError("positive solution check failed", t);
    }
    return fac;
}

namespace {

template <typename F>
double richardson_diff(const F& f, double t, double h) {
    double d1 = (f(t + h) - f(t - h)) / (2.0 * h);
    double d2 = (f(t + 0.5 * h) - f(t - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

double apply_factored(const Factorization& fac, const Expr& x, double t, double step) {
    const double margin = 2.5 * step;
    if (t - margin < fac.window.lower || t + margin > fac.window.upper)
        throw IntegrationError("t too close to the factorization window edge", t);
    auto g0 = [&](double u) { return fac.h0(u) * x.evaluate(u); };
    auto g1 = [&](double u) { return fac.h1(u) * richardson_diff(g0, u, step); };
    return fac.h2(t) * richardson_diff(g1, t, step);
}

}  // namespace disconj
