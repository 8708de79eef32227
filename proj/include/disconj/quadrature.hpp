#ifndef DISCONJ_QUADRATURE_HPP
#define DISCONJ_QUADRATURE_HPP

#include <functional>

namespace disconj {

/// Adaptive Simpson quadrature of f over [a, b] (a > b integrates backwards
/// with the usual sign). abs_tol is an absolute tolerance on the result.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-9, int max_depth = 48);

}  // namespace disconj

#endif
