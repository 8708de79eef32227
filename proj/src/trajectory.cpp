#include "disconj/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace disconj {

Trajectory::Trajectory(std::vector<DenseStep> steps, double t_start, double t_end)
    : steps_(std::move(steps)), t_start_(t_start), t_end_(t_end) {}

bool Trajectory::covers(double t) const {
    double lo = std::min(t_start_, t_end_);
    double hi = std::max(t_start_, t_end_);
    double slack = 1e-12 * (1.0 + std::fabs(lo) + std::fabs(hi));
    return t >= lo - slack && t <= hi + slack;
}

const DenseStep& Trajectory::step_for(double t) const {
    if (steps_.empty()) throw IntegrationError("empty trajectory", t);
    if (!covers(t)) throw IntegrationError("t outside the trajectory", t);
    // binary search over step starts in integration order
    const bool fwd = forward();
    std::size_t lo = 0, hi = steps_.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        double start = steps_[mid].t0;
        if (fwd ? (t >= start) : (t <= start))
            lo = mid;
        else
            hi = mid - 1;
    }
    return steps_[lo];
}

State2 Trajectory::eval(double t) const {
    if (steps_.empty()) {
        if (t == t_start_) throw IntegrationError("degenerate trajectory", t);
        throw IntegrationError("empty trajectory", t);
    }
    const DenseStep& s = step_for(t);
    return {s.x(t), s.xp(t)};
}

double Trajectory::xpp(double t) const { return step_for(t).dxp_dt(t); }

std::string Trajectory::to_csv() const {
    std::string out = "t,x,xp\n";
    char buf[128];
    auto row = [&](double t, double x, double xp) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t, x, xp);
        out += buf;
    };
    if (steps_.empty()) return out;
    row(steps_.front().t0, steps_.front().cx[0], steps_.front().cxp[0]);
    for (const auto& s : steps_) {
        double t1 = s.t0 + s.h;
        row(t1, s.cx[0] + s.cx[1], s.cxp[0] + s.cxp[1]);
    }
    return out;
}

namespace {

double minimize_abs(const DenseStep& s, double ta, double tb, double tol) {
    // golden-section on |x|
    constexpr double phi = 0.6180339887498949;
    double a = ta, b = tb;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = std::fabs(s.x(c)), fd = std::fabs(s.x(d));
    while (std::fabs(b - a) > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = std::fabs(s.x(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = std::fabs(s.x(d));
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

void Trajectory::locate_events(const EventOptions& opt) {
    zeros_.clear();
    grazes_.clear();
    if (steps_.empty()) return;

    auto push_zero = [&](double t) {
        double slope = eval(t).xp;
        if (!zeros_.empty() && std::fabs(t - zeros_.back().t) < opt.zero_separation)
            return;
        if (slope == 0.0) {  // degenerate; uniqueness forbids x = x' = 0
            grazes_.push_back({t, eval(t).x});
            return;
        }
        zeros_.push_back({t, slope > 0.0 ? +1 : -1, slope});
    };

    auto push_graze = [&](double t, double v) {
        if (std::fabs(v) >= opt.graze_threshold) return;
        if (!grazes_.empty() &&
            std::fabs(t - grazes_.back().t) < opt.zero_separation)
            return;
        grazes_.push_back({t, v});
    };

    // cross-step bracket refinement on the piecewise interpolant
    auto refine_traj = [&](double ta, double tb) {
        double fa = eval(ta).x, fb = eval(tb).x;
        if (fa == 0.0) return ta;
        if (fb == 0.0) return tb;
        for (int it = 0; it < 200 && std::fabs(tb - ta) > opt.abscissa_tol; ++it) {
            double tm = 0.5 * (ta + tb);
            if (it % 2 == 0 && fb != fa) {
                double ts = tb - fb * (tb - ta) / (fb - fa);
                double lo = std::min(ta, tb), hi = std::max(ta, tb);
                if (ts > lo && ts < hi) tm = ts;
            }
            double fm = eval(tm).x;
            if (fm == 0.0) return tm;
            if ((fm < 0.0) == (fa < 0.0)) {
                ta = tm;
                fa = fm;
            } else {
                tb = tm;
                fb = fm;
            }
        }
        return 0.5 * (ta + tb);
    };

    // Walk all subsamples in integration order, tracking the last sample with
    // a nonzero value. An exact 0.0 counts as a zero only between samples of
    // opposite sign; this keeps underflow plateaus (the solution rounding to
    // zero while decaying) from masquerading as zeros.
    const int n = std::max(2, opt.subsamples);
    bool have_nonzero = false;
    double nz_t = 0.0, nz_x = 0.0;
    double pending_zero = 0.0;
    bool have_pending = false;

    {
        double t0 = steps_.front().t0;
        double x0 = steps_.front().cx[0];
        if (x0 == 0.0) {
            push_zero(t0);  // launch zero, genuine by construction
        } else {
            have_nonzero = true;
            nz_t = t0;
            nz_x = x0;
        }
    }
    for (const auto& s : steps_) {
        double prev_t = s.t0;
        double prev_xp = s.xp(prev_t);
        for (int i = 1; i <= n; ++i) {
            double t = s.t0 + s.h * static_cast<double>(i) / n;
            double x = s.x(t);
            double xp = s.xp(t);
            if (x == 0.0) {
                if (!have_pending && have_nonzero) {
                    pending_zero = t;
                    have_pending = true;
                }
            } else {
                if (have_nonzero && (x < 0.0) != (nz_x < 0.0)) {
                    push_zero(have_pending ? pending_zero : refine_traj(nz_t, t));
                } else if (have_pending) {
                    // touched zero and came back: a graze, not a crossing
                    push_graze(pending_zero, 0.0);
                }
                have_pending = false;
                have_nonzero = true;
                nz_t = t;
                nz_x = x;
            }
            // a stationary point of x marks a potential tangential near-miss
            if (prev_xp != 0.0 && xp != 0.0 && (xp < 0.0) != (prev_xp < 0.0)) {
                double tm = minimize_abs(s, prev_t, t, opt.abscissa_tol);
                double v = s.x(tm);
                bool is_crossing =
                    !zeros_.empty() &&
                    std::fabs(tm - zeros_.back().t) < std::fabs(s.h);
                if (!is_crossing) push_graze(tm, v);
            }
            prev_t = t;
            prev_xp = xp;
        }
    }
}

std::vector<ZeroRecord> find_zeros(const Trajectory& traj,
                                   const EventOptions& opt) {
    Trajectory copy = traj;
    copy.locate_events(opt);
    return copy.zeros();
}

}  // namespace disconj
