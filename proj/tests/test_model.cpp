#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "ermatch/model.hpp"

using namespace ermatch;

namespace {

Graph graph_of(uint32_t n, std::initializer_list<std::pair<uint32_t, uint32_t>> edges) {
    Graph g(n);
    for (auto [i, j] : edges) g.set_edge(i, j, true);
    return g;
}

}  // namespace

TEST_CASE("joint distribution validation") {
    CHECK_NOTHROW(JointEdgeDistribution{0.25, 0.25, 0.25, 0.25}.validate());
    CHECK_THROWS_AS(JointEdgeDistribution{0.5, 0.5, 0.5, 0.5}.validate(), ConfigError);
    CHECK_THROWS_AS(JointEdgeDistribution{-0.1, 0.4, 0.4, 0.3}.validate(), ConfigError);
    // renormalization only on explicit request
    const JointEdgeDistribution p = JointEdgeDistribution{2, 2, 2, 2}.renormalized();
    CHECK(p.p11 == doctest::Approx(0.25));
    CHECK_NOTHROW(p.validate());
    CHECK_THROWS_AS(JointEdgeDistribution{0, 0, 0, 0}.renormalized(), ConfigError);
}

TEST_CASE("distribution json round trip") {
    const JointEdgeDistribution p{0.3, 0.2, 0.1, 0.4};
    const JointEdgeDistribution q = JointEdgeDistribution::from_json(p.to_json());
    CHECK(p == q);
    CHECK_THROWS_AS(JointEdgeDistribution::from_json("{"), ConfigError);
    CHECK_THROWS_AS(JointEdgeDistribution::from_json(R"({"p11": 1})"), ConfigError);
    const auto renorm =
        JointEdgeDistribution::from_json(R"({"p11":2,"p10":0,"p01":0,"p00":2})", true);
    CHECK(renorm.p11 == doctest::Approx(0.5));
}

TEST_CASE("derived parameters") {
    SUBCASE("independent uniform") {
        const DerivedParams d = derive_params({0.25, 0.25, 0.25, 0.25});
        CHECK(d.rho == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(d.q == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(d.p1s == doctest::Approx(0.5));
        CHECK(d.sig_ratio == doctest::Approx(1.0));
    }
    SUBCASE("perfectly correlated") {
        const DerivedParams d = derive_params({0.5, 0.0, 0.0, 0.5});
        CHECK(d.rho == doctest::Approx(1.0));
        CHECK(d.q == doctest::Approx(0.25));
        CHECK(std::isinf(d.sig_ratio));
    }
    SUBCASE("perfectly anti-correlated") {
        const DerivedParams d = derive_params({0.0, 0.5, 0.5, 0.0});
        CHECK(d.rho == doctest::Approx(-1.0));
        CHECK(d.q == doctest::Approx(0.25));
        CHECK(d.sig_ratio == doctest::Approx(0.0));
    }
    SUBCASE("undefined signal ratio") {
        const DerivedParams d = derive_params({0.5, 0.5, 0.0, 0.0});
        CHECK(std::isnan(d.sig_ratio));
    }
    SUBCASE("marginals sum to one") {
        const DerivedParams d = derive_params({0.3, 0.2, 0.1, 0.4});
        CHECK(d.p1s + d.p0s == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(d.ps1 + d.ps0 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("subsampling model") {
    SUBCASE("independent when r = 1") {
        const JointEdgeDistribution p = subsample_to_joint({1.0, 0.3, 0.7});
        CHECK(p.p11 == doctest::Approx(0.21));
        CHECK(derive_params(p).q == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("full retention") {
        const JointEdgeDistribution p = subsample_to_joint({0.5, 1.0, 1.0});
        CHECK(p == JointEdgeDistribution{0.5, 0.0, 0.0, 0.5});
    }
    SUBCASE("empty parent") {
        const JointEdgeDistribution p = subsample_to_joint({0.0, 0.4, 0.9});
        CHECK(p.p00 == doctest::Approx(1.0));
        CHECK(p.p11 == 0.0);
    }
    SUBCASE("inverse") {
        const SubsampleParams sp = joint_to_subsample({0.5, 0.0, 0.0, 0.5});
        CHECK(sp.r == doctest::Approx(0.5));
        CHECK(sp.s_a == doctest::Approx(1.0));
        CHECK(sp.s_b == doctest::Approx(1.0));
        const SubsampleParams sp2 = joint_to_subsample({0.21, 0.09, 0.49, 0.21});
        CHECK(sp2.r == doctest::Approx(1.0));
        CHECK(sp2.s_a == doctest::Approx(0.3));
        CHECK(sp2.s_b == doctest::Approx(0.7));
    }
    SUBCASE("rejections") {
        CHECK_THROWS_AS(joint_to_subsample({0.0, 0.5, 0.5, 0.0}), ConfigError);
        CHECK_THROWS_AS(joint_to_subsample({0.1, 0.4, 0.4, 0.1}), ConfigError);
        CHECK_THROWS_AS(SubsampleParams{1.5, 0.5, 0.5}.validate(), ConfigError);
    }
}

TEST_CASE("channel model") {
    const Channel identity{{{1.0, 0.0}, {0.0, 1.0}}};
    SUBCASE("noiseless") {
        const JointEdgeDistribution p = channel_to_joint(0.5, identity, identity);
        CHECK(p == JointEdgeDistribution{0.5, 0.0, 0.0, 0.5});
    }
    SUBCASE("erase everything") {
        const Channel erase{{{1.0, 0.0}, {1.0, 0.0}}};
        const JointEdgeDistribution p = channel_to_joint(0.77, erase, erase);
        CHECK(p.p00 == doctest::Approx(1.0));
        CHECK(p.p11 == doctest::Approx(0.0));
    }
    SUBCASE("one noisy side") {
        const Channel noisy{{{0.9, 0.1}, {0.2, 0.8}}};
        const JointEdgeDistribution p = channel_to_joint(0.5, identity, noisy);
        CHECK(p.p11 == doctest::Approx(0.4));
        CHECK(p.p10 == doctest::Approx(0.1));
        CHECK(p.p01 == doctest::Approx(0.05));
        CHECK(p.p00 == doctest::Approx(0.45));
    }
    SUBCASE("non-stochastic rejected") {
        const Channel bad{{{0.9, 0.2}, {0.2, 0.8}}};
        CHECK_THROWS_AS(channel_to_joint(0.5, bad, identity), ConfigError);
    }
}

TEST_CASE("canonical pair index") {
    // lexicographic on n=4: (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
    CHECK(pair_index(0, 1, 4) == 0);
    CHECK(pair_index(0, 2, 4) == 1);
    CHECK(pair_index(0, 3, 4) == 2);
    CHECK(pair_index(1, 2, 4) == 3);
    CHECK(pair_index(1, 3, 4) == 4);
    CHECK(pair_index(2, 3, 4) == 5);
    for (uint32_t n : {2u, 5u, 9u, 40u}) {
        uint64_t idx = 0;
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = i + 1; j < n; ++j, ++idx) {
                CHECK(pair_index(i, j, n) == idx);
                CHECK(pair_from_index(idx, n) == std::pair{i, j});
            }
    }
}

TEST_CASE("graph text format") {
    const Graph g = graph_of(4, {{0, 1}, {1, 3}});
    const std::string text = g.to_text();
    CHECK(text == "4\n100010\n");
    CHECK(Graph::from_text(text) == g);
    CHECK_THROWS_AS(Graph::from_text("4\n101\n"), ConfigError);
    CHECK_THROWS_AS(Graph::from_text("4\n10001x\n"), ConfigError);
    CHECK_THROWS_AS(Graph::from_text("x"), ConfigError);
}

TEST_CASE("permutation basics") {
    CHECK_THROWS_AS(Permutation({0, 0, 1}), ConfigError);
    CHECK_THROWS_AS(Permutation({0, 3, 1}), ConfigError);
    const Permutation pi = Permutation::from_cycles(4, {{0, 1, 2}});
    CHECK(pi(0) == 1);
    CHECK(pi(1) == 2);
    CHECK(pi(2) == 0);
    CHECK(pi(3) == 3);
    CHECK(pi.moved_count() == 3);
    CHECK(compose(pi, pi.inverse()).is_identity());
    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
        const Permutation r = Permutation::random(7, rng);
        CHECK_NOTHROW(Permutation(r.image()));
        CHECK(compose(r.inverse(), r).is_identity());
    }
}

TEST_CASE("lifted action") {
    SUBCASE("identity") {
        const LiftedAction act = lift(Permutation::identity(5));
        CHECK(act.fixed_pairs == 10);
        CHECK(act.total_pairs() == 10);
        CHECK(act.moved_vertices == 0);
    }
    SUBCASE("transposition on n=4") {
        const LiftedAction act = lift(Permutation::from_cycles(4, {{0, 1}}));
        CHECK(act.fixed_pairs == 2);  // {0,1} and {2,3}
        CHECK(act.cycle_counts[2] == 2);
        CHECK(act.moved_vertices == 2);
    }
    SUBCASE("three-cycle on n=3") {
        const LiftedAction act = lift(Permutation::from_cycles(3, {{0, 1, 2}}));
        CHECK(act.fixed_pairs == 0);
        CHECK(act.cycle_counts[3] == 1);
    }
    SUBCASE("pair image is a bijection") {
        Rng rng(7);
        const Permutation pi = Permutation::random(9, rng);
        const LiftedAction act = lift(pi);
        std::set<uint32_t> seen(act.pair_image.begin(), act.pair_image.end());
        CHECK(seen.size() == act.pair_image.size());
    }
}

TEST_CASE("sample_pair extremes") {
    auto [ea, eb] = sample_pair(6, {0.0, 0.0, 0.0, 1.0}, 3);
    CHECK(ea.edge_count() == 0);
    CHECK(eb.edge_count() == 0);
    auto [ca, cb] = sample_pair(6, {1.0, 0.0, 0.0, 0.0}, 3);
    CHECK(ca.edge_count() == ca.num_pairs());
    CHECK(cb.edge_count() == cb.num_pairs());
}

TEST_CASE("sample_pair concentration at n=2000") {
    const uint32_t n = 2000;
    auto [ga, gb] = sample_pair(n, {0.5, 0.0, 0.0, 0.5}, 42);
    CHECK(ga == gb);
    const double N = static_cast<double>(ga.num_pairs());
    const double dev = std::abs(static_cast<double>(ga.edge_count()) - N / 2.0);
    CHECK(dev <= 3.0 * std::sqrt(N * 0.25));
}

TEST_CASE("sample_pair determinism") {
    auto [a1, b1] = sample_pair(30, {0.3, 0.1, 0.1, 0.5}, 99);
    auto [a2, b2] = sample_pair(30, {0.3, 0.1, 0.1, 0.5}, 99);
    auto [a3, b3] = sample_pair(30, {0.3, 0.1, 0.1, 0.5}, 100);
    CHECK(a1 == a2);
    CHECK(b1 == b2);
    CHECK_FALSE(a1 == a3);
}

TEST_CASE("apply_permutation") {
    const Graph path = graph_of(3, {{0, 1}, {1, 2}});
    SUBCASE("identity") {
        CHECK(apply_permutation(path, Permutation::identity(3)) == path);
    }
    SUBCASE("path reversal is an automorphism") {
        const Permutation rev = Permutation::from_cycles(3, {{0, 2}});
        CHECK(apply_permutation(path, rev) == path);
    }
    SUBCASE("edge count preserved and inverse composes to identity") {
        Rng rng(11);
        for (int t = 0; t < 20; ++t) {
            const JointEdgeDistribution p{0.3, 0.2, 0.1, 0.4};
            auto [g, unused] = sample_pair(8, p, rng);
            const Permutation pi = Permutation::random(8, rng);
            const Graph h = apply_permutation(g, pi);
            CHECK(h.edge_count() == g.edge_count());
            CHECK(apply_permutation(h, pi.inverse()) == g);
        }
    }
    SUBCASE("size mismatch") {
        CHECK_THROWS_AS(apply_permutation(path, Permutation::identity(4)), ConfigError);
    }
}

TEST_CASE("rng streams") {
    Rng a(123), b(123), c(124);
    for (int i = 0; i < 10; ++i) {
        const uint64_t x = a.next_u64();
        CHECK(x == b.next_u64());
        CHECK(x != c.next_u64());
    }
    const double u = a.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(stream_seed(5, 1, 2) != stream_seed(5, 2, 1));
}
