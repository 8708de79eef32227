#ifndef DISCONJ_FACTORIZE_HPP
#define DISCONJ_FACTORIZE_HPP

#include <functional>
#include <memory>

#include "disconj/greens.hpp"

namespace disconj {

/// Product form L = h2 (d/dt) h1 (d/dt) h0 built from a positive solution y
/// and a companion u with positive Wronskian w = [y, u]:
/// h0 = 1/y, h1 = y^2/w, h2 = w/y, so h0 h1 h2 == 1 identically.
struct Factorization {
    std::function<double(double)> h0, h1, h2;
    Interval window;  ///< where the factors are safely evaluable
    std::shared_ptr<const Trajectory> y, u;

    /// CSV export: header "t,h0,h1,h2" on an n-point grid over the window.
    std::string to_csv(std::size_t n = 21) const;
};

/// Requires the oracle to confirm disconjugacy on J (finite, closed or not).
Factorization factorize(const OdeProblem& prob, const Interval& J,
                        const GreenOptions& opt = {});

/// Evaluate h2 (h1 (h0 x)')' at t by nested Richardson-extrapolated central
/// differences (step 1e-5). x must be twice differentiable there and t must
/// sit inside the factorization window.
double apply_factored(const Factorization& fac, const Expr& x, double t,
                      double step = 1e-5);

}  // namespace disconj

#endif
