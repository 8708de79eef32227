#ifndef DISCONJ_TRAJECTORY_HPP
#define DISCONJ_TRAJECTORY_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace disconj {

/// State of the first-order system equivalent: (x, x').
struct State2 {
    double x = 0.0;
    double xp = 0.0;
};

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double t)
        : std::runtime_error(what + " near t=" + std::to_string(t)), t_(t) {}
    double at() const noexcept { return t_; }

private:
    double t_;
};

/// One accepted step with its continuous extension. The interpolant is the
/// classic quartic form c1 + th*(c2 + (1-th)*(c3 + th*(c4 + (1-th)*c5))) per
/// component, th in [0, 1].
struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;  // signed
    std::array<double, 5> cx{};
    std::array<double, 5> cxp{};

    double theta(double t) const { return (t - t0) / h; }
    static double eval_poly(const std::array<double, 5>& c, double th) {
        double om = 1.0 - th;
        return c[0] + th * (c[1] + om * (c[2] + th * (c[3] + om * c[4])));
    }
    static double eval_poly_dtheta(const std::array<double, 5>& c, double th) {
        double om = 1.0 - th;
        return c[1] + (om - th) * c[2] + th * (2.0 * om - th) * c[3] +
               2.0 * th * om * (om - th) * c[4];
    }
    double x(double t) const { return eval_poly(cx, theta(t)); }
    double xp(double t) const { return eval_poly(cxp, theta(t)); }
    double dx_dt(double t) const { return eval_poly_dtheta(cx, theta(t)) / h; }
    double dxp_dt(double t) const { return eval_poly_dtheta(cxp, theta(t)) / h; }
};

/// A located simple zero of x along a trajectory.
struct ZeroRecord {
    double t = 0.0;
    int direction = 0;  ///< +1 when x crosses - to +, -1 otherwise
    double slope = 0.0; ///< x' at the zero
};

/// A near-miss: |x| dipped below the graze threshold without a sign change.
struct GrazeRecord {
    double t = 0.0;
    double value = 0.0;
};

struct EventOptions {
    double abscissa_tol = 1e-10;
    double zero_separation = 1e-9;
    double graze_threshold = 1e-7;
    int subsamples = 8;
};

/// Dense IVP solution. Steps are ordered by time along the direction of
/// integration; zeros are ordered the same way. Immutable once built.
class Trajectory {
public:
    Trajectory() = default;
    Trajectory(std::vector<DenseStep> steps, double t_start, double t_end);

    double t_start() const { return t_start_; }
    double t_end() const { return t_end_; }
    bool forward() const { return t_end_ >= t_start_; }
    bool covers(double t) const;

    State2 eval(double t) const;
    double x(double t) const { return eval(t).x; }
    double xp(double t) const { return eval(t).xp; }
    /// Second derivative of x, differentiated from the interpolant of x'.
    double xpp(double t) const;

    const std::vector<DenseStep>& steps() const { return steps_; }
    const std::vector<ZeroRecord>& zeros() const { return zeros_; }
    const std::vector<GrazeRecord>& grazes() const { return grazes_; }

    /// CSV export: header "t,x,xp", one row per mesh point.
    std::string to_csv() const;

    void locate_events(const EventOptions& opt = {});

private:
    const DenseStep& step_for(double t) const;

    std::vector<DenseStep> steps_;
    std::vector<ZeroRecord> zeros_;
    std::vector<GrazeRecord> grazes_;
    double t_start_ = 0.0;
    double t_end_ = 0.0;
};

/// Re-scan of a trajectory's dense interpolant for sign changes, refined to
/// the abscissa tolerance. Returns exactly what trajectory.zeros() holds
/// after locate_events.
std::vector<ZeroRecord> find_zeros(const Trajectory& traj,
                                   const EventOptions& opt = {});

}  // namespace disconj

#endif
