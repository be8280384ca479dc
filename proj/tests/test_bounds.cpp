#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ermatch/bounds.hpp"

using namespace ermatch;

TEST_CASE("achievability q threshold") {
    CHECK(achievability_q_threshold(20, 0.0) ==
          doctest::Approx(2.0 * std::log(20.0) / 20.0).epsilon(1e-15));
    CHECK(achievability_q_threshold(20, 0.0) == doctest::Approx(0.29957).epsilon(1e-4));
    for (uint32_t n : {3u, 50u, 1000u})
        CHECK(achievability_q_threshold(n, 0.0) * n / (2.0 * std::log(n)) ==
              doctest::Approx(1.0).epsilon(1e-12));
    // each unit of slack moves the threshold by exactly 2/n
    CHECK(achievability_q_threshold(100, 6.0) - achievability_q_threshold(100, 3.0) ==
          doctest::Approx(2.0 * 3.0 / 100.0).epsilon(1e-12));
    CHECK_THROWS_AS(achievability_q_threshold(2, 0.0), ConfigError);
    CHECK_THROWS_AS(achievability_q_threshold(10, -1.0), ConfigError);
}

TEST_CASE("sparse thresholds") {
    const ThresholdPair t0 = sparse_thresholds(50, 0.0);
    CHECK(t0.ach == doctest::Approx(2.0 * t0.conv).epsilon(1e-12));
    const ThresholdPair t = sparse_thresholds(1000, 3.0);
    CHECK(t.ach == doctest::Approx(0.019815).epsilon(1e-4));
    CHECK(t.conv == doctest::Approx(0.0039078).epsilon(1e-4));
}

TEST_CASE("pg condition") {
    SUBCASE("zero-noise reduction") {
        // p10 = p01 = 0: condition becomes p11 >= 8(ln n + slack)/n
        const uint32_t n = 200;
        const double level = 8.0 * std::log(static_cast<double>(n)) / n;
        const double above = std::min(1.0, level * 1.01);
        CHECK(pg_condition({above, 0.0, 0.0, 1.0 - above}, n, 0.0));
        const double below = level * 0.99;
        CHECK_FALSE(pg_condition({below, 0.0, 0.0, 1.0 - below}, n, 0.0));
    }
    SUBCASE("p11 = 0 is never sufficient") {
        CHECK_FALSE(pg_condition({0.0, 0.1, 0.1, 0.8}, 100, 0.0));
        CHECK_FALSE(pg_condition({0.0, 0.0, 0.0, 1.0}, 100, 0.0));
    }
    SUBCASE("boundary via symmetric subsampling") {
        // r s^3/(2-s) equals the threshold level at s = 1/2
        const uint32_t n = 10000;
        const double s = 0.5;
        const double level = 8.0 * std::log(static_cast<double>(n)) / n;
        const double r = level * (2.0 - s) / (s * s * s);
        REQUIRE(r <= 1.0);
        const JointEdgeDistribution above = subsample_to_joint({r * 1.000001, s, s});
        CHECK(pg_condition(above, n, 0.0));
        const JointEdgeDistribution below = subsample_to_joint({r * 0.99, s, s});
        CHECK_FALSE(pg_condition(below, n, 0.0));
    }
    SUBCASE("asymmetric noise rejected") {
        CHECK_THROWS_AS(pg_condition({0.3, 0.2, 0.1, 0.4}, 100, 0.0), ConfigError);
    }
}

TEST_CASE("negative thresholds") {
    const ThresholdPair t0 = negative_thresholds(64, 0.0);
    CHECK(t0.ach == doctest::Approx(2.0 * t0.conv).epsilon(1e-12));
    const ThresholdPair t = negative_thresholds(100, 0.0);
    CHECK(t.ach == doctest::Approx(0.0921).epsilon(1e-3));
    // maximally anti-correlated pair sits in the achievable regime
    const JointEdgeDistribution p{0.0, 0.5, 0.5, 0.0};
    CHECK(p.p01 * p.p10 >= t.ach);
}

TEST_CASE("union bound failure estimate") {
    CHECK(union_bound_failure(100, 0.0) == 1.0);
    SUBCASE("hand-computed point") {
        const double x = 100.0 * std::exp(-0.2 * 98.0 / 2.0);
        CHECK(union_bound_failure(100, 0.2) == doctest::Approx(x * x / (1.0 - x)).epsilon(1e-12));
        CHECK(union_bound_failure(100, 0.2) == doctest::Approx(3.074e-5).epsilon(0.01));
    }
    SUBCASE("monotone non-increasing in q") {
        double prev = 2.0;
        bool entered_decay = false;
        for (int i = 0; i <= 20; ++i) {
            const double q = i / 20.0;
            const double b = union_bound_failure(100, q);
            CHECK(b <= prev + 1e-15);
            if (b < 1.0) {
                if (entered_decay) CHECK(b < prev);
                entered_decay = true;
            }
            prev = b;
        }
        CHECK(entered_decay);
    }
    CHECK_THROWS_AS(union_bound_failure(2, 0.5), ConfigError);
    CHECK_THROWS_AS(union_bound_failure(10, 1.5), ConfigError);
}

TEST_CASE("expected gap") {
    CHECK(expected_gap(CycleType::single_cycle(1, 9), {0.3, 0.1, 0.1, 0.5}) == 0.0);
    CHECK(expected_gap(CycleType::single_cycle(4, 2), {0.25, 0.25, 0.25, 0.25}) ==
          doctest::Approx(0.0));
    // transposition on n=4: two fixed pairs, two 2-cycles, N - c1 = 4
    CycleType transposition;
    transposition.counts = {0, 2, 2};
    transposition.total = 6;
    CHECK(expected_gap(transposition, {0.5, 0.0, 0.0, 0.5}) == doctest::Approx(2.0));
}

TEST_CASE("converse success bound") {
    CHECK(converse_success_bound(100, 1.0) == 1.0);
    CHECK(converse_success_bound(20, 0.0) < 1e-3);
    const double p11 = 0.5 * std::log(1000.0) / 1000.0;
    CHECK(converse_success_bound(1000, p11) < 0.2);
    CHECK_THROWS_AS(converse_success_bound(2, 0.5), ConfigError);
}

TEST_CASE("trade-off curves") {
    const auto pts = tradeoff_curves({1.0, 0.5});
    CHECK(pts[0].lb == doctest::Approx(1.0));
    CHECK(pts[0].ub == doctest::Approx(2.0));
    CHECK(pts[0].pg == doctest::Approx(8.0));
    CHECK(pts[1].lb == doctest::Approx(2.0));
    CHECK(pts[1].ub == doctest::Approx(4.0));
    CHECK(pts[1].pg == doctest::Approx(48.0));
    CHECK_THROWS_AS(tradeoff_curves({0.0}), ConfigError);
    CHECK_THROWS_AS(tradeoff_curves({1.2}), ConfigError);
    const std::string csv = curves_csv(pts);
    CHECK(csv.substr(0, 11) == "s,lb,ub,pg\n");
    CHECK(csv == curves_csv(tradeoff_curves({1.0, 0.5})));
}

TEST_CASE("threshold report") {
    SUBCASE("sparse significant instance") {
        const JointEdgeDistribution p{0.004, 0.0005, 0.0005, 0.995};
        const ThresholdReport r = threshold_report(p, 1000, 0.0);
        CHECK(r.sparse);
        CHECK(r.significant);
        CHECK_FALSE(r.negative);
        if (r.achievable) CHECK(r.q_actual >= r.q_required);
        // p11 below (ln n)/n: the converse applies
        CHECK(r.converse_violated == (p.p11 <= std::log(1000.0) / 1000.0));
        const std::string json = r.to_json(p);
        CHECK(json.find("\"achievable\"") != std::string::npos);
        CHECK(json.find("\"pg_condition\"") != std::string::npos);
    }
    SUBCASE("achievable dense instance") {
        const JointEdgeDistribution p{0.5, 0.0, 0.0, 0.5};
        const ThresholdReport r = threshold_report(p, 20, 0.0);
        CHECK_FALSE(r.achievable);  // q = 0.25 < 2 ln(20)/20 = 0.2996
        const ThresholdReport r2 = threshold_report(p, 50, 0.0);
        CHECK(r2.achievable);  // q = 0.25 >= 2 ln(50)/50 = 0.1565
        CHECK(r2.q_actual >= r2.q_required);
    }
    SUBCASE("negative regime") {
        const JointEdgeDistribution p{0.0, 0.5, 0.5, 0.0};
        const ThresholdReport r = threshold_report(p, 100, 0.0);
        CHECK(r.negative);
        CHECK_FALSE(r.converse_violated);  // p01 p10 = 0.25 above the converse level
    }
}
