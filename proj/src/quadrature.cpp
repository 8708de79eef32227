#include "disconj/quadrature.hpp"

#include <cmath>

namespace disconj {

namespace {

struct Func {
    const std::function<double(double)>& f;
    double operator()(double t) const { return f(t); }
};

double simpson_step(const Func& f, double a, double fa, double b, double fb, double m,
                    double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    Func fn{f};
    // seed with a fixed 8-panel pass so narrow features are not skipped
    constexpr int panels = 8;
    double h = (b - a) / panels;
    double total = 0.0;
    double t0 = a, f0 = fn(t0);
    for (int i = 0; i < panels; ++i) {
        double t1 = (i + 1 == panels) ? b : a + (i + 1) * h;
        double f1 = fn(t1);
        double m = 0.5 * (t0 + t1), fm = fn(m);
        double whole = (t1 - t0) / 6.0 * (f0 + 4.0 * fm + f1);
        total += simpson_step(fn, t0, f0, t1, f1, m, fm, whole, abs_tol / panels,
                              max_depth);
        t0 = t1;
        f0 = f1;
    }
    return total;
}

}  // namespace disconj
