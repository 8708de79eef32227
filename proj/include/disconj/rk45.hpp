#ifndef DISCONJ_RK45_HPP
#define DISCONJ_RK45_HPP

#include <cstddef>
#include <functional>

#include "disconj/trajectory.hpp"

namespace disconj {

using Rhs2 = std::function<State2(double t, const State2& y)>;

struct IvpOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    double max_step = 0.0;  ///< 0 = automatic cap: min(span/64, 1)
    std::size_t max_steps = 2'000'000;
    bool locate_events = true;
    /// Stop after the first step whose interpolant shows a sign change of x
    /// past the launch point (shooting for conjugate points does not need,
    /// and may not survive, the full span).
    bool stop_at_first_zero = false;
    EventOptions events;
};

/// Embedded Dormand-Prince 5(4) pair with the order-4 continuous extension.
/// Integrates forward or backward depending on t1 vs t0.
Trajectory rk45_solve(const Rhs2& rhs, double t0, State2 y0, double t1,
                      const IvpOptions& opt = {});

}  // namespace disconj

#endif
