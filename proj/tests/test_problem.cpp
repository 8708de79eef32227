#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "disconj/problem.hpp"
#include "test_support.hpp"

using namespace disconj;
using disconj::testing::make_problem;

TEST_CASE("interval: invariants") {
    CHECK_THROWS_AS(Interval(1.0, 1.0, true, true), IntervalShapeError);
    CHECK_THROWS_AS(Interval(2.0, 1.0, false, false), IntervalShapeError);
    CHECK_THROWS_AS(
        Interval(-std::numeric_limits<double>::infinity(), 1.0, true, true),
        IntervalShapeError);
    Interval iv = Interval::half_open(0.0, 1.0);
    CHECK(iv.contains(0.0));
    CHECK(!iv.contains(1.0));
    CHECK(iv.str() == "[0, 1)");
}

TEST_CASE("interval: disconjugacy covering relation") {
    Interval c = Interval::half_open(0.0, 1.0);
    CHECK(covers_disconjugacy(c, Interval::open(0.0, 1.0)));
    CHECK(covers_disconjugacy(c, Interval(0.0, 1.0, false, true)));
    CHECK(!covers_disconjugacy(c, Interval::closed(0.0, 1.0)));
    CHECK(covers_disconjugacy(Interval::closed(0.0, 1.0), c));
    CHECK(covers_disconjugacy(Interval::whole_line(), Interval::closed(-3.0, 5.0)));
    CHECK(covers_disconjugacy(c, Interval::closed(0.2, 0.8)));  // subset
    CHECK(!covers_disconjugacy(c, Interval::closed(0.5, 1.5)));
}

TEST_CASE("interval: truncation defaults") {
    TruncationOptions opt;
    Interval whole = truncate_interval(Interval::whole_line(), opt);
    CHECK(whole.lower == -50.0);
    CHECK(whole.upper == 50.0);
    Interval half = truncate_interval(
        Interval(0.0, std::numeric_limits<double>::infinity(), false, false), opt);
    CHECK(half.lower == doctest::Approx(1e-6));
    CHECK(half.upper == doctest::Approx(100.0));
    Interval fin = truncate_interval(Interval::closed(0.0, 1.0), opt);
    CHECK(fin.lower == 0.0);
    CHECK(fin.upper == 1.0);
}

TEST_CASE("q_plus: pointwise clip examples") {
    OdeProblem prob = make_problem("0", "t", Interval::closed(-1.0, 1.0));
    OdeProblem clipped = q_plus(prob);
    CHECK(clipped.q.evaluate(0.5) == 0.5);
    CHECK(clipped.q.evaluate(-0.5) == 0.0);
    OdeProblem neg = q_plus(make_problem("0", "-1"));
    CHECK(neg.q.evaluate(3.0) == 0.0);
    CHECK(neg.q.evaluate(-7.0) == 0.0);
}

TEST_CASE("property: q_plus is idempotent, >= q and >= 0") {
    disconj::testing::CoeffGen gen(2024);
    for (int trial = 0; trial < 20; ++trial) {
        OdeProblem prob = make_problem("0", gen.coefficient(3.0));
        OdeProblem once = q_plus(prob);
        OdeProblem twice = q_plus(once);
        for (int i = 0; i < 50; ++i) {
            double t = gen.uniform(-5.0, 5.0);
            double q = prob.q.evaluate(t);
            double qp = once.q.evaluate(t);
            CHECK(qp >= 0.0);
            CHECK(qp >= q);
            CHECK(twice.q.evaluate(t) == qp);
        }
    }
}

TEST_CASE("halfline substitution: composes coefficients verbatim") {
    double inf = std::numeric_limits<double>::infinity();
    OdeProblem prob = make_problem("1/t", "0", Interval(0.0, inf, false, false));
    OdeProblem whole = halfline_substitution(prob);
    CHECK(!whole.interval.lower_finite());
    CHECK(!whole.interval.upper_finite());
    CHECK(whole.p.evaluate(2.0) == doctest::Approx(0.25));  // 1/(0 + 2^2)
    CHECK(whole.notes.size() == 1);

    OdeProblem shifted = make_problem("0", "t", Interval(1.0, inf, false, false));
    CHECK(halfline_substitution(shifted).q.evaluate(0.0) == doctest::Approx(1.0));

    OdeProblem finite = make_problem("0", "t", Interval::closed(0.0, 1.0));
    CHECK_THROWS_AS(halfline_substitution(finite), IntervalShapeError);
}

TEST_CASE("plane regions: membership examples") {
    CHECK(in_region_N({2.0, 1.0}));
    CHECK(!in_region_N({0.0, 1.0}));
    CHECK(in_region_N({0.0, -1.0}));
    CHECK(in_halfplane_M({0.0, -1.0}, 1.0, HalfplaneSign::Plus));
    CHECK(!in_halfplane_M({0.0, 0.0}, 1.0, HalfplaneSign::Plus));
    CHECK_THROWS_AS(in_halfplane_M({0.0, 0.0}, -0.5, HalfplaneSign::Plus),
                    std::invalid_argument);
}

TEST_CASE("property: the tangent half-planes sit inside the real-root region") {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> coord(-25.0, 25.0);
    for (int gi = 0; gi <= 20; ++gi) {
        double gamma = 0.5 * gi;  // sweep [0, 10]
        for (int i = 0; i < 1000; ++i) {
            PlanePoint pt{coord(rng), coord(rng)};
            for (auto sign : {HalfplaneSign::Plus, HalfplaneSign::Minus}) {
                if (in_halfplane_M(pt, gamma, sign)) CHECK(in_region_N(pt));
            }
        }
    }
}

TEST_CASE("problem validation spots unevaluable coefficients") {
    OdeProblem ok = make_problem("0", "1", Interval::closed(0.0, 1.0));
    CHECK_NOTHROW(ok.validate());
    OdeProblem bad = make_problem("0", "log(t - 10)", Interval::closed(0.0, 1.0));
    CHECK_THROWS_AS(bad.validate(), EvalError);
}
