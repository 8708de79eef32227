#ifndef DISCONJ_ORACLE_HPP
#define DISCONJ_ORACLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "disconj/integrate.hpp"
#include "disconj/problem.hpp"

namespace disconj {

class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

enum class Side { Plus, Minus };

struct OracleOptions {
    double horizon = 100.0;          ///< how far shooting may run past the window
    std::size_t window_count = 4;    ///< exhaustion sequence length for open ends
    double boundary_band = 1e-7;     ///< dead band for zero-at-endpoint decisions
    IvpOptions ivp;
    TruncationOptions trunc;
};

/// Conjugate point of a base point: the nearest zero, on the chosen side, of
/// the solution vanishing at the base.
struct ConjugatePoint {
    double base = 0.0;
    Side side = Side::Plus;
    std::optional<double> abscissa;  ///< empty: none within the horizon
    double error_bound = 0.0;
    double horizon_end = 0.0;        ///< how far the search actually looked
    std::string message;

    bool found() const { return abscissa.has_value(); }
};

ConjugatePoint rho(const OdeProblem& prob, double a, Side side,
                   const OracleOptions& opt = {});

enum class OracleStatus { Disconjugate, NotDisconjugate, Undetermined };

struct OracleVerdict {
    OracleStatus status = OracleStatus::Undetermined;
    std::optional<std::pair<double, double>> witness;  ///< two zero abscissas
    Interval queried;
    Interval window_used;  ///< finite window actually examined
    double horizon = 0.0;
    double abs_tol = 0.0, rel_tol = 0.0;
    std::string message;
};

/// Numerical disconjugacy decision on J (must lie inside the problem
/// interval). Finite J is decided by shooting from the lower end; unbounded J
/// is exhausted by growing windows and can only be refuted or left
/// Undetermined. NotDisconjugate verdicts always carry a re-verified witness
/// pair inside J.
OracleVerdict is_disconjugate(const OdeProblem& prob, const Interval& J,
                              const OracleOptions& opt = {});

/// Zeros of two independent solutions strictly interlace inside the window.
/// Initial data are drawn from the seeded RNG; dependent draws are re-sampled.
bool check_separation(const OdeProblem& prob, const Interval& window,
                      std::uint64_t seed = 0, const OracleOptions& opt = {});

/// rho_plus strictly increases across the samples and rho_minus inverts it to
/// within 1e-6. Samples with no finite conjugate point are skipped (vacuous).
bool check_rho_monotone(const OdeProblem& prob, const std::vector<double>& samples,
                        const OracleOptions& opt = {});

/// prob1 and prob2 must share p with q1 <= q2 on a verification grid; returns
/// false only when prob2 is Disconjugate while prob1 is NotDisconjugate on the
/// window.
bool check_comparison(const OdeProblem& prob1, const OdeProblem& prob2,
                      const Interval& window, const OracleOptions& opt = {});

const char* to_string(OracleStatus s);

}  // namespace disconj

#endif
