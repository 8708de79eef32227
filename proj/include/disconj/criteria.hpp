#ifndef DISCONJ_CRITERIA_HPP
#define DISCONJ_CRITERIA_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "disconj/oracle.hpp"
#include "disconj/problem.hpp"

namespace disconj {

enum class Verdict { Proven, Disproven, Inconclusive, NotApplicable };
const char* to_string(Verdict v);

struct GridInfo {
    std::size_t points = 0;
    Interval window = Interval::whole_line();
};

/// Uniform result of one sufficient-condition checker. `concluded` is the
/// interval form the verdict certifies when Proven (it can be weaker than the
/// queried interval, e.g. half-open instead of closed). All pointwise
/// inequalities are semi-verified on the grid recorded here; every report
/// carries a note saying so.
struct CriterionReport {
    std::string id;
    Verdict verdict = Verdict::NotApplicable;
    std::string detail;
    std::map<std::string, double> witness;
    std::optional<Interval> concluded;
    GridInfo grid;
    std::vector<std::string> notes;
};

struct CriteriaOptions {
    std::size_t grid_points = 2001;
    double margin_refine = 1e-6;  ///< midpoint refinement near this margin
    TruncationOptions trunc;
    double nu_max = 100.0;        ///< characteristic-polynomial search bound
    std::size_t nu_points = 401;
    double gamma_max = 100.0;     ///< half-plane search bound
    double quad_tol = 1e-9;
    double vp_slack = 0.0;        ///< allowed slack in Lv <= slack
    IvpOptions ivp;
    OracleOptions aux_oracle;     ///< for auxiliary-equation disconjugacy checks
};

/// Constant coefficients: exact decision (the only checker allowed to return
/// Disproven). Real characteristic roots prove disconjugacy everywhere;
/// complex roots give zeros spaced pi/delta apart, so the verdict on a finite
/// window compares the window length against that spacing.
CriterionReport crit_constant(const OdeProblem& prob, const Interval& J,
                              const CriteriaOptions& opt = {});

/// p(t) = const/t on a subinterval of (0, inf): disconjugate when
/// q(t) <= (const-1)^2 / (4 t^2).
CriterionReport crit_euler(const OdeProblem& prob, const CriteriaOptions& opt = {});

/// Lyapunov integral test on finite [a,b] with p == 0: the integral of q
/// (or of max(q,0) in the corollary form) at most 4/(b-a).
CriterionReport crit_lyapunov(const OdeProblem& prob, const Interval& J,
                              bool use_q_plus, const CriteriaOptions& opt = {});

/// q <= 0 on the interval.
CriterionReport crit_q_nonpositive(const OdeProblem& prob, const Interval& J,
                                   const CriteriaOptions& opt = {});

/// Sine test on finite [a,b]: (pi/L) cot(pi(t-a)/L) p(t) + q(t) <= (pi/L)^2,
/// requiring p(t) = O(t-a) and O(b-t) at the endpoints.
CriterionReport crit_sine(const OdeProblem& prob, const Interval& J,
                          const CriteriaOptions& opt = {});

enum class ParabolaForm { Pointwise, Uniform };  // (C1) and (C2)

/// Parabola test on finite [a,b]: pointwise
/// |p||mid - t| + |q|(b-t)(t-a)/2 <= 1, or the uniform sup-based variant.
CriterionReport crit_parabola(const OdeProblem& prob, const Interval& J,
                              ParabolaForm form, const CriteriaOptions& opt = {});

/// Search for nu with nu^2 + p(t) nu + q(t) <= 0 on the working window.
CriterionReport crit_char_poly(const OdeProblem& prob, const CriteriaOptions& opt = {});

/// Vallee-Poussin test with a user-supplied twice-differentiable v:
/// v > 0 and v'' + p v' + q v <= slack on the appropriate grids.
CriterionReport crit_vallee_poussin(const OdeProblem& prob, const Interval& J,
                                    const Expr& v, const CriteriaOptions& opt = {});

/// Auxiliary constant-coefficient kernel test on finite [a,b]:
/// (p-P) ∫ dM/dt ds + (q-Q) ∫ M ds <= 1 with M built from the closed-form
/// Cauchy function of x'' + P x' + Q x = 0.
CriterionReport crit_kernel_const_pq(const OdeProblem& prob, const Interval& J,
                                     double P, double Q,
                                     const CriteriaOptions& opt = {});

/// Same with default (P, Q) candidates (mean p, 0), (mean p, mean min(q,0)),
/// (0, 0); the first candidate that proves wins.
CriterionReport crit_kernel_const_pq_auto(const OdeProblem& prob, const Interval& J,
                                          const CriteriaOptions& opt = {});

/// Q = 0 specialization with explicit closed-form bound factors; P != 0.
CriterionReport crit_kernel_q0(const OdeProblem& prob, const Interval& J, double P,
                               const CriteriaOptions& opt = {});

/// Variable-p auxiliary kernel: q(t) ∫ M(t,s) ds <= 1 with M built from the
/// integrating factor exp(-∫p).
CriterionReport crit_kernel_varp(const OdeProblem& prob, const Interval& J,
                                 const CriteriaOptions& opt = {});

/// Coefficient-curve half-plane test: some gamma >= 0 with
/// q(t) <= -gamma^2 +/- gamma p(t) everywhere on the window.
CriterionReport crit_halfplane(const OdeProblem& prob, const CriteriaOptions& opt = {});

/// Coefficient curve is (numerically) a line q = c + k p lying in the
/// real-root region: c = -gamma^2 <= 0 and |k| <= gamma; or q constant <= 0.
CriterionReport crit_line(const OdeProblem& prob, const CriteriaOptions& opt = {});

/// Auxiliary-function test: q <= p^2/4 + r together with one of four
/// conditions tying p' to r, each certified by an explicit exponential test
/// function (see the witness "branch").
CriterionReport crit_r_condition(const OdeProblem& prob, const Expr& r,
                                 const CriteriaOptions& opt = {});

/// Gauge-bound test q <= p^2/4 + p'/2 (test function exp(-(1/2)∫p)); the
/// witness records the sign pattern of p' on the grid.
CriterionReport crit_monotone_p(const OdeProblem& prob, const CriteriaOptions& opt = {});

struct BatteryOptions {
    CriteriaOptions criteria;
    bool run_oracle = true;
    OracleOptions oracle;
    std::optional<Expr> test_function_v;  ///< adds a Vallee-Poussin entry
    std::optional<Expr> r;                ///< r for crit_r_condition (default 0)
    bool parallel = true;
    std::uint64_t seed = 0;
};

struct BatteryResult {
    std::vector<CriterionReport> reports;  ///< Proven first
    std::optional<OracleVerdict> oracle;
    Verdict aggregate = Verdict::Inconclusive;
    std::vector<std::string> notes;
};

/// Run every applicable checker (and optionally the oracle) on the problem.
/// Individual checker failures downgrade to NotApplicable with a message.
BatteryResult run_battery(const OdeProblem& prob, const Interval& J,
                          const BatteryOptions& opt = {});

/// CSV summary: header "criterion,verdict,witness,detail".
std::string battery_csv(const BatteryResult& result);

}  // namespace disconj

#endif
