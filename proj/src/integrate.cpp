#include "disconj/integrate.hpp"

#include <cmath>
#include <cstdio>
#include <list>
#include <map>
#include <mutex>
#include <stdexcept>

#include "disconj/quadrature.hpp"

namespace disconj {

Rhs2 make_rhs(const OdeProblem& prob) {
    Expr p = prob.p, q = prob.q;
    if (prob.f) {
        Expr f = *prob.f;
        return [p, q, f](double t, const State2& y) -> State2 {
            return {y.xp, f.evaluate(t) - p.evaluate(t) * y.xp - q.evaluate(t) * y.x};
        };
    }
    return [p, q](double t, const State2& y) -> State2 {
        return {y.xp, -p.evaluate(t) * y.xp - q.evaluate(t) * y.x};
    };
}

Trajectory solve_ivp(const OdeProblem& prob, double t0, double x0, double x0p,
                     double t1, const IvpOptions& opt) {
    return rk45_solve(make_rhs(prob), t0, {x0, x0p}, t1, opt);
}

double wronskian(const Trajectory& u1, const Trajectory& u2, double t) {
    if (!u1.covers(t) || !u2.covers(t))
        throw IntegrationError("wronskian outside trajectory domain", t);
    State2 a = u1.eval(t);
    State2 b = u2.eval(t);
    return a.x * b.xp - b.x * a.xp;
}

std::string Kernel::to_csv(std::size_t n) const {
    if (n < 2) n = 2;
    std::string out = "t,s,value\n";
    char buf[128];
    for (std::size_t i = 0; i < n; ++i) {
        double t = t_domain.lower +
                   (t_domain.upper - t_domain.lower) * static_cast<double>(i) / (n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            double s = s_domain.lower + (s_domain.upper - s_domain.lower) *
                                            static_cast<double>(j) / (n - 1);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t, s, value(t, s));
            out += buf;
        }
    }
    return out;
}

// --- Cauchy function --------------------------------------------------------

struct CauchyFunction::Memo {
    OdeProblem prob;
    Interval window;
    IvpOptions opt;
    std::size_t capacity;

    struct Entry {
        std::shared_ptr<const Trajectory> fwd;  // s -> window.upper
        std::shared_ptr<const Trajectory> bwd;  // s -> window.lower
    };
    mutable std::mutex mutex;
    mutable std::map<double, Entry> entries;
    mutable std::list<double> lru;  // most recent at front

    Entry& touch(double s) const {
        auto it = entries.find(s);
        if (it == entries.end()) {
            if (entries.size() >= capacity && !lru.empty()) {
                entries.erase(lru.back());
                lru.pop_back();
            }
            it = entries.emplace(s, Entry{}).first;
            lru.push_front(s);
        } else {
            lru.remove(s);
            lru.push_front(s);
        }
        return it->second;
    }
};

CauchyFunction::CauchyFunction(OdeProblem prob, Interval window, IvpOptions opt,
                               std::size_t memo_capacity)
    : memo_(std::make_shared<Memo>()) {
    memo_->prob = std::move(prob);
    memo_->prob.f.reset();  // Cauchy function belongs to the homogeneous equation
    memo_->window = window;
    memo_->opt = opt;
    memo_->opt.locate_events = false;
    memo_->capacity = memo_capacity < 2 ? 2 : memo_capacity;
}

const Interval& CauchyFunction::window() const { return memo_->window; }

std::shared_ptr<const Trajectory> CauchyFunction::trajectory(double s, double t) const {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    if (s < memo_->window.lower || s > memo_->window.upper)
        throw IntegrationError("Cauchy source outside the working window", s);
    auto& entry = memo_->touch(s);
    const bool fwd = t >= s;
    auto& slot = fwd ? entry.fwd : entry.bwd;
    if (!slot) {
        double target = fwd ? memo_->window.upper : memo_->window.lower;
        if (target == s) target = fwd ? s + 1e-12 : s - 1e-12;
        slot = std::make_shared<Trajectory>(
            rk45_solve(make_rhs(memo_->prob), s, {0.0, 1.0}, target, memo_->opt));
    }
    return slot;
}

double CauchyFunction::operator()(double t, double s) const {
    if (t == s) return 0.0;
    return trajectory(s, t)->x(t);
}

double CauchyFunction::dt(double t, double s) const {
    if (t == s) return 1.0;
    return trajectory(s, t)->xp(t);
}

Kernel CauchyFunction::kernel() const {
    Kernel k;
    k.type = Kernel::Type::Cauchy;
    k.name = "cauchy";
    k.t_domain = memo_->window;
    k.s_domain = memo_->window;
    auto self = *this;
    k.value = [self](double t, double s) { return self(t, s); };
    return k;
}

CauchyFunction cauchy_function(const OdeProblem& prob, const IvpOptions& opt,
                               const TruncationOptions& trunc) {
    return CauchyFunction(prob, truncate_interval(prob.interval, trunc), opt);
}

double variation_of_constants(const OdeProblem& prob, double t0, double x0,
                              double x0p, double t1, const IvpOptions& opt,
                              double quad_tol) {
    if (!prob.f) {
        OdeProblem hom = prob;
        return solve_ivp(hom, t0, x0, x0p, t1, opt).x(t1);
    }
    IvpOptions quiet = opt;
    quiet.locate_events = false;

    OdeProblem hom = prob;
    hom.f.reset();
    // homogeneous part: x0 * u1 + x0p * u2 with u1(t0)=1, u1'(t0)=0 and
    // u2(t0)=0, u2'(t0)=1
    double hom_val = 0.0;
    if (x0 != 0.0) hom_val += x0 * solve_ivp(hom, t0, 1.0, 0.0, t1, quiet).x(t1);
    if (x0p != 0.0) hom_val += x0p * solve_ivp(hom, t0, 0.0, 1.0, t1, quiet).x(t1);

    double lo = std::min(t0, t1), hi = std::max(t0, t1);
    CauchyFunction C(hom, Interval::closed(lo - 1e-9, hi + 1e-9), quiet);
    Expr f = *prob.f;
    double particular = integrate(
        [&](double s) { return C(t1, s) * f.evaluate(s); }, t0, t1, quad_tol);
    return hom_val + particular;
}

}  // namespace disconj
