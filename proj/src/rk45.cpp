#include "disconj/rk45.hpp"

#include <algorithm>
#include <cmath>

namespace disconj {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// y_hat - y coefficients (error estimator)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

State2 axpy(const State2& y, double h, const State2& k) {
    return {y.x + h * k.x, y.xp + h * k.xp};
}

// Sign change of x between nonzero subsamples inside the step. Exact zeros
// are skipped so that launch zeros and underflow plateaus do not trigger.
bool step_has_zero(const DenseStep& st, int subsamples) {
    double last_nonzero = st.cx[0];
    for (int i = 1; i <= subsamples; ++i) {
        double x = DenseStep::eval_poly(st.cx, static_cast<double>(i) / subsamples);
        if (x == 0.0) continue;
        if (last_nonzero != 0.0 && (x < 0.0) != (last_nonzero < 0.0)) return true;
        last_nonzero = x;
    }
    return false;
}

}  // namespace

Trajectory rk45_solve(const Rhs2& rhs, double t0, State2 y0, double t1,
                      const IvpOptions& opt) {
    std::vector<DenseStep> steps;
    if (t1 == t0) {
        Trajectory traj(std::move(steps), t0, t1);
        return traj;
    }
    const double dir = t1 > t0 ? 1.0 : -1.0;
    const double span = std::fabs(t1 - t0);
    // the automatic cap keeps coefficient features wider than span/64 from
    // slipping between the stage samples of a single overgrown step
    double hmax = opt.max_step > 0.0 ? std::min(span, opt.max_step)
                                     : std::min(span, std::min(span / 64.0, 1.0));

    double t = t0;
    State2 y = y0;
    State2 k1 = rhs(t, y);
    double h = dir * std::min(hmax, std::max(1e-8, 1e-3 * span));

    std::size_t nsteps = 0;
    while (dir * (t1 - t) > 0.0) {
        if (++nsteps > opt.max_steps)
            throw IntegrationError("step budget exhausted", t);
        if (std::fabs(h) < 1e-14 * std::max(1.0, std::fabs(t)))
            throw IntegrationError("step size underflow", t);
        if (dir * (t + h) > dir * t1) h = t1 - t;

        State2 k2 = rhs(t + c2 * h, axpy(y, h, {a21 * k1.x, a21 * k1.xp}));
        State2 k3 = rhs(t + c3 * h, {y.x + h * (a31 * k1.x + a32 * k2.x),
                                     y.xp + h * (a31 * k1.xp + a32 * k2.xp)});
        State2 k4 = rhs(t + c4 * h,
                        {y.x + h * (a41 * k1.x + a42 * k2.x + a43 * k3.x),
                         y.xp + h * (a41 * k1.xp + a42 * k2.xp + a43 * k3.xp)});
        State2 k5 = rhs(t + c5 * h,
                        {y.x + h * (a51 * k1.x + a52 * k2.x + a53 * k3.x + a54 * k4.x),
                         y.xp + h * (a51 * k1.xp + a52 * k2.xp + a53 * k3.xp +
                                     a54 * k4.xp)});
        State2 k6 = rhs(
            t + h, {y.x + h * (a61 * k1.x + a62 * k2.x + a63 * k3.x + a64 * k4.x +
                               a65 * k5.x),
                    y.xp + h * (a61 * k1.xp + a62 * k2.xp + a63 * k3.xp + a64 * k4.xp +
                                a65 * k5.xp)});
        State2 y1 = {y.x + h * (b1 * k1.x + b3 * k3.x + b4 * k4.x + b5 * k5.x +
                                b6 * k6.x),
                     y.xp + h * (b1 * k1.xp + b3 * k3.xp + b4 * k4.xp + b5 * k5.xp +
                                 b6 * k6.xp)};
        State2 k7 = rhs(t + h, y1);

        double errx = h * (e1 * k1.x + e3 * k3.x + e4 * k4.x + e5 * k5.x + e6 * k6.x +
                           e7 * k7.x);
        double errxp = h * (e1 * k1.xp + e3 * k3.xp + e4 * k4.xp + e5 * k5.xp +
                            e6 * k6.xp + e7 * k7.xp);
        // error scaled against the state norm, so that a vanishing abs_tol
        // gives pure relative control (the natural choice for homogeneous
        // shooting, where only the solution direction matters)
        double ynorm = std::max(std::max(std::fabs(y.x), std::fabs(y.xp)),
                                std::max(std::fabs(y1.x), std::fabs(y1.xp)));
        if (!std::isfinite(ynorm)) throw IntegrationError("solution overflow", t);
        double sc = opt.abs_tol + opt.rel_tol * ynorm;
        if (sc <= 0.0) break;  // state numerically dead; nothing to resolve
        double ex = errx / sc, exp_ = errxp / sc;
        double err = std::sqrt(0.5 * (ex * ex + exp_ * exp_));
        if (!std::isfinite(err)) err = 1e10;

        if (err <= 1.0) {
            DenseStep st;
            st.t0 = t;
            st.h = h;
            auto fill = [&](std::array<double, 5>& c, double y0c, double y1c, double k1c,
                            double k3c, double k4c, double k5c, double k6c, double k7c) {
                double dy = y1c - y0c;
                c[0] = y0c;
                c[1] = dy;
                c[2] = h * k1c - dy;
                c[3] = dy - h * k7c - c[2];
                c[4] = h * (d1 * k1c + d3 * k3c + d4 * k4c + d5 * k5c + d6 * k6c +
                            d7 * k7c);
            };
            fill(st.cx, y.x, y1.x, k1.x, k3.x, k4.x, k5.x, k6.x, k7.x);
            fill(st.cxp, y.xp, y1.xp, k1.xp, k3.xp, k4.xp, k5.xp, k6.xp, k7.xp);
            steps.push_back(st);

            t += h;
            y = y1;
            k1 = k7;  // FSAL

            // a launch zero at t0 does not count: the scan only reports
            // crossings away from a zero left sample
            if (opt.stop_at_first_zero &&
                step_has_zero(st, std::max(2, opt.events.subsamples)))
                break;
        }

        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (std::fabs(h) > hmax) h = dir * hmax;
    }

    // t is where integration actually ended (the span may have been cut by a
    // first-zero stop or by the state dying numerically)
    Trajectory traj(std::move(steps), t0, t);
    if (opt.locate_events) traj.locate_events(opt.events);
    return traj;
}

}  // namespace disconj
