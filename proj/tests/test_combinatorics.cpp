#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ermatch/combinatorics.hpp"

using namespace ermatch;

TEST_CASE("cyclic sequence counts") {
    SUBCASE("all-zeros and all-ones have no boundaries") {
        for (uint32_t l : {1u, 4u, 9u, 12u}) {
            CHECK(cyclic_count_a(l, 0, 0) == 1);
            CHECK(cyclic_count_a(l, l, 0) == 1);
        }
    }
    CHECK(cyclic_count_a(3, 1, 1) == 3);
    CHECK(cyclic_count_a(4, 2, 2) == 2);  // 1010 and 0101
    CHECK(cyclic_count_a(4, 2, 1) == 4);
    SUBCASE("totals are 2^l") {
        for (uint32_t l : {1u, 5u, 8u}) {
            uint64_t total = 0;
            const auto table = cyclic_count_a_table(l);
            for (const auto& row : table)
                for (uint64_t c : row) total += c;
            CHECK(total == (1ull << l));
        }
    }
    SUBCASE("no-adjacent-ones counts") {
        CHECK(cyclic_count_b(4, 0) == 1);
        CHECK(cyclic_count_b(5, 1) == 5);
        CHECK(cyclic_count_b(4, 2) == 2);
        CHECK(cyclic_count_b(3, 2) == 0);
    }
    SUBCASE("capacity") {
        CHECK_THROWS_AS(cyclic_count_a(21, 1, 1), CapacityError);
        CHECK_THROWS_AS(cyclic_count_b(25, 1), CapacityError);
        CHECK_THROWS_AS(cyclic_count_a(0, 0, 0), ConfigError);
    }
}

TEST_CASE("cyclic sequence polynomial") {
    SUBCASE("z = 1 collapses to (x+y)^l") {
        for (uint32_t l : {1u, 3u, 7u}) {
            CHECK(cyclic_poly_a(l, 0.4, 0.6, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(cyclic_poly_a(l, 1.5, 0.25, 1.0) ==
                  doctest::Approx(std::pow(1.75, l)).epsilon(1e-12));
        }
    }
    SUBCASE("single positions admit no boundary") {
        for (double z : {0.0, 0.5, 2.0, 7.0})
            CHECK(cyclic_poly_a(1, 0.3, 0.7, z) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("hand-computed value at l=3") {
        CHECK(cyclic_poly_a(3, 1.0, 1.0, 2.0) == doctest::Approx(14.0).epsilon(1e-12));
        CHECK(cyclic_poly_a_brute(3, 1.0, 1.0, 2.0) == doctest::Approx(14.0).epsilon(1e-12));
    }
    SUBCASE("singular x+y falls back to direct summation") {
        // a_2(x,y,z) = y^2 + 2xyz + x^2, so at (1,-1): 2 - 2z
        CHECK(cyclic_poly_a(2, 1.0, -1.0, 3.0) == doctest::Approx(-4.0).epsilon(1e-12));
        CHECK(cyclic_poly_a(2, 1.0, -1.0, 0.0) == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("conditional gap generating function") {
    const JointEdgeDistribution uniform{0.25, 0.25, 0.25, 0.25};
    SUBCASE("normalized at z=1") {
        for (uint64_t r : {0ull, 1ull, 5ull})
            CHECK(gap_gf_conditional(r, {0.3, 0.2, 0.1, 0.4}, 1.0) ==
                  doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("r=0 is constant") {
        for (double z : {0.25, 1.0, 3.0})
            CHECK(gap_gf_conditional(0, uniform, z) == doctest::Approx(1.0));
    }
    SUBCASE("hand-computed value") {
        // ((0.25*2 + 0.25/2)/0.5) * ((0.25/2 + 0.25*2)/0.5) = 1.25 * 1.25
        CHECK(gap_gf_conditional(1, uniform, 2.0) == doctest::Approx(1.5625).epsilon(1e-12));
    }
    SUBCASE("degenerate marginals rejected") {
        CHECK_THROWS_AS(gap_gf_conditional(1, {1.0, 0.0, 0.0, 0.0}, 2.0), ConfigError);
        CHECK_THROWS_AS(gap_gf_conditional(1, uniform, 0.0), ConfigError);
    }
    SUBCASE("coefficients sum to 1 and match scalar evaluation") {
        const JointEdgeDistribution p{0.3, 0.2, 0.1, 0.4};
        for (uint64_t r : {1ull, 3ull}) {
            const auto coeffs = gap_gf_conditional_coeffs(r, p);
            double total = 0;
            for (double c : coeffs) total += c;
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
            double at2 = 0;
            for (size_t i = 0; i < coeffs.size(); ++i)
                at2 += coeffs[i] * std::pow(2.0, static_cast<double>(i) - 2.0 * r);
            CHECK(at2 == doctest::Approx(gap_gf_conditional(r, p, 2.0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("gap generating function over cycle types") {
    SUBCASE("z = 1 normalizes") {
        CycleType ct = CycleType::single_cycle(4, 3);
        CHECK(gap_gf(ct, 0.4, 0.6, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("identity action is constant") {
        CycleType ct = CycleType::single_cycle(1, 9);  // all fixed points
        for (double z : {0.0, 0.5, 2.0})
            CHECK(gap_gf(ct, 0.5, 0.5, z) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("three-cycle at z=0 counts constant sequences") {
        // P[no misalignment] = P[000] + P[111] = 2/8 at p1* = 1/2
        CycleType ct = CycleType::single_cycle(3);
        CHECK(gap_gf(ct, 0.5, 0.5, 0.0) == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("marginals must sum to 1") {
        CHECK_THROWS_AS(gap_gf(CycleType::single_cycle(3), 0.5, 0.6, 1.0), ConfigError);
    }
}

TEST_CASE("gap tail bound") {
    SUBCASE("no signal, no bound") {
        CycleType ct = CycleType::single_cycle(5, 2);
        CHECK(gap_tail_bound(ct, {0.25, 0.25, 0.25, 0.25}) == doctest::Approx(1.0));
    }
    SUBCASE("single two-cycle at maximal q") {
        CycleType ct = CycleType::single_cycle(2, 11);
        CHECK(gap_tail_bound(ct, {0.5, 0.0, 0.0, 0.5}) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("degenerate marginals are reported") {
        CHECK_THROWS_AS(gap_tail_bound(CycleType::single_cycle(2), {1.0, 0.0, 0.0, 0.0}),
                        ConfigError);
    }
}

TEST_CASE("gap tail envelope") {
    SUBCASE("q = 0") {
        CHECK(gap_tail_envelope(CycleType::single_cycle(4, 2), 0.0) == doctest::Approx(1.0));
    }
    SUBCASE("identity") {
        CHECK(gap_tail_envelope(CycleType::single_cycle(1, 9), 0.3) == doctest::Approx(1.0));
    }
    SUBCASE("hand value") {
        // N - c1 = 4 moved pairs at q = 1/4
        CHECK(gap_tail_envelope(CycleType::single_cycle(4, 6), 0.25) ==
              doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("q out of range") {
        CHECK_THROWS_AS(gap_tail_envelope(CycleType::single_cycle(2), 0.6), ConfigError);
        CHECK_THROWS_AS(gap_tail_envelope(CycleType::single_cycle(2), -0.1), ConfigError);
    }
}

TEST_CASE("even binomial sum") {
    CHECK(sum_even_binomial(2, 0.5) == doctest::Approx(1.5));          // 1 + w
    CHECK(sum_even_binomial(4, 2.0) == doctest::Approx(1 + 12 + 4));   // C(4,2)w + C(4,4)w^2
    CHECK(sum_even_binomial(3, -1.0) == doctest::Approx(1.0 - 3.0));
}

TEST_CASE("cycle type validation") {
    CycleType ct = CycleType::single_cycle(3, 2);
    CHECK(ct.total == 5);
    CHECK(ct.fixed_points() == 2);
    CHECK_NOTHROW(ct.validate());
    ct.total = 7;
    CHECK_THROWS_AS(ct.validate(), ConfigError);
}
