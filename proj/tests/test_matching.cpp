#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ermatch/matching.hpp"
#include "ermatch/structure.hpp"

using namespace ermatch;

namespace {

Graph graph_of(uint32_t n, std::initializer_list<std::pair<uint32_t, uint32_t>> edges) {
    Graph g(n);
    for (auto [i, j] : edges) g.set_edge(i, j, true);
    return g;
}

Graph complement(const Graph& g) {
    Graph out(g.n());
    for (uint64_t e = 0; e < g.num_pairs(); ++e) out.set(e, !g.test(e));
    return out;
}

}  // namespace

TEST_CASE("delta") {
    const Graph g = graph_of(3, {{0, 1}});
    const Graph h = graph_of(3, {{0, 1}, {1, 2}});
    CHECK(delta(g, g) == 0);
    CHECK(delta(Graph::complete(5), Graph(5)) == 10);
    CHECK(delta(g, h) == 1);
    CHECK(delta(h, g) == 1);
    CHECK_THROWS_AS(delta(g, Graph(4)), ConfigError);
    // triangle inequality on random triples
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        auto [a, b] = sample_pair(7, {0.3, 0.2, 0.1, 0.4}, rng);
        auto [c, unused] = sample_pair(7, {0.3, 0.2, 0.1, 0.4}, rng);
        CHECK(delta(a, c) <= delta(a, b) + delta(b, c));
    }
}

TEST_CASE("edge type counts") {
    SUBCASE("identical graphs") {
        const Graph g = graph_of(4, {{0, 1}, {2, 3}, {1, 2}});
        const MatchStats s = edge_type_counts(g, g);
        CHECK(s.n11 == 3);
        CHECK(s.n10 == 0);
        CHECK(s.n01 == 0);
        CHECK(s.n00 == 3);
        CHECK(s.delta == 0);
    }
    SUBCASE("disjoint edge sets") {
        const Graph a = graph_of(4, {{0, 1}, {0, 2}});
        const Graph b = graph_of(4, {{2, 3}});
        const MatchStats s = edge_type_counts(a, b);
        CHECK(s.n11 == 0);
        CHECK(s.n10 == 2);
        CHECK(s.n01 == 1);
        CHECK(s.n00 == 3);
    }
    SUBCASE("hand enumeration at n=3") {
        const Graph a = graph_of(3, {{0, 1}, {0, 2}});
        const Graph b = graph_of(3, {{0, 2}, {1, 2}});
        const MatchStats s = edge_type_counts(a, b);
        CHECK(s.n11 == 1);
        CHECK(s.n10 == 1);
        CHECK(s.n01 == 1);
        CHECK(s.n00 == 0);
        CHECK(s.m_a == 2);
        CHECK(s.m_b == 2);
        CHECK(s.k() == doctest::Approx(1.0));
        CHECK(s.k_is_integer());
    }
}

TEST_CASE("d statistic") {
    SUBCASE("identity is zero") {
        auto [ga, gb] = sample_pair(6, {0.3, 0.1, 0.1, 0.5}, 8);
        CHECK(d_stat(Permutation::identity(6), ga, gb) == 0);
    }
    SUBCASE("path endpoint swap is an automorphism") {
        const Graph path = graph_of(3, {{0, 1}, {1, 2}});
        CHECK(d_stat(Permutation::from_cycles(3, {{0, 2}}), path, path) == 0);
    }
    SUBCASE("moving a matched edge off itself costs 2") {
        const Graph g = graph_of(3, {{0, 1}});
        CHECK(d_stat(Permutation::from_cycles(3, {{1, 2}}), g, g) == 2);
    }
}

TEST_CASE("log posterior weight") {
    const Graph g = graph_of(3, {{0, 1}});
    SUBCASE("k = 0 gives weight 0") {
        const auto w =
            log_posterior_weight(Permutation::identity(3), g, g, {0.3, 0.1, 0.1, 0.5});
        CHECK(w.log_weight == 0.0);
        CHECK_FALSE(w.flat);
    }
    SUBCASE("uniform distribution is flat") {
        const auto w = log_posterior_weight(Permutation::from_cycles(3, {{1, 2}}), g, Graph(3),
                                            {0.25, 0.25, 0.25, 0.25});
        CHECK(w.flat);
        CHECK(w.log_weight == 0.0);
    }
    SUBCASE("degenerate zero-products are flat") {
        const auto w = log_posterior_weight(Permutation::from_cycles(3, {{1, 2}}), g, Graph(3),
                                            {0.5, 0.5, 0.0, 0.0});
        CHECK(w.flat);
    }
    SUBCASE("mismatched graphs get -inf under zero-noise") {
        const auto w = log_posterior_weight(Permutation::identity(3), g, Graph(3),
                                            {0.5, 0.0, 0.0, 0.5});
        CHECK(std::isinf(w.log_weight));
        CHECK(w.log_weight < 0);
    }
}

TEST_CASE("objective sense") {
    CHECK(objective_sense({0.3, 0.1, 0.1, 0.5}) == ObjectiveSense::minimize);
    CHECK(objective_sense({0.05, 0.4, 0.35, 0.2}) == ObjectiveSense::maximize);
    CHECK(objective_sense({0.25, 0.25, 0.25, 0.25}) == ObjectiveSense::flat);
    CHECK(objective_sense({0.21, 0.09, 0.49, 0.21}) == ObjectiveSense::flat);  // product form
}

TEST_CASE("map estimate") {
    const JointEdgeDistribution pos{0.3, 0.1, 0.1, 0.5};
    SUBCASE("rigid graph matched to itself is uniquely recovered") {
        // find a rigid instance deterministically
        Graph g(6);
        Rng rng(21);
        for (;;) {
            auto [ga, unused] = sample_pair(6, {0.5, 0.0, 0.0, 0.5}, rng);
            if (automorphism_count(ga) == 1) {
                g = ga;
                break;
            }
        }
        const MapResult res = map_estimate(g, g, pos);
        CHECK(res.sense == ObjectiveSense::minimize);
        CHECK(res.optimum_value == 0);
        CHECK(res.unique);
        CHECK(res.minimizers.contains_identity());
    }
    SUBCASE("empty graphs tie everywhere") {
        const MapResult res = map_estimate(Graph(4), Graph(4), pos);
        CHECK(res.optimum_value == 0);
        CHECK(res.minimizers.size() == 24);
        CHECK_FALSE(res.degenerate);  // sense is well-defined, everything just ties
    }
    SUBCASE("negative correlation maximizes the distance") {
        auto [gc, unused] = sample_pair(5, {0.4, 0.1, 0.1, 0.4}, 17);
        const Graph gb = complement(gc);
        const MapResult res = map_estimate(gc, gb, {0.0, 0.5, 0.5, 0.0});
        CHECK(res.sense == ObjectiveSense::maximize);
        CHECK(res.optimum_value == static_cast<int64_t>(gc.num_pairs()));
        CHECK(res.minimizers.contains_identity());
    }
    SUBCASE("flat posterior returns every permutation, flagged") {
        const MapResult res =
            map_estimate(graph_of(4, {{0, 1}}), graph_of(4, {{2, 3}}), {0.25, 0.25, 0.25, 0.25});
        CHECK(res.degenerate);
        CHECK(res.sense == ObjectiveSense::flat);
        CHECK(res.minimizers.size() == 24);
        CHECK(res.minimizers.contains_identity());
        CHECK_FALSE(res.unique);
    }
    SUBCASE("capacity error beyond the limit") {
        CHECK_THROWS_AS(map_estimate(Graph(11), Graph(11), pos), CapacityError);
        CHECK_THROWS_AS(map_estimate(Graph(11), Graph(11), pos, 20), CapacityError);
        CHECK_NOTHROW(map_estimate(Graph(4), Graph(4), pos, 11));
    }
    SUBCASE("scan equals reference on mixed instances") {
        Rng rng(31);
        for (int t = 0; t < 10; ++t) {
            auto [ga, gb] = sample_pair(6, pos, rng);
            const MapResult a = map_estimate(ga, gb, pos);
            const MapResult b = map_estimate_reference(ga, gb, pos);
            CHECK(a.optimum_value == b.optimum_value);
            CHECK(a.minimizers == b.minimizers);
            CHECK(a.unique == b.unique);
        }
    }
}

TEST_CASE("tie set lookup") {
    const MapResult res =
        map_estimate(Graph(4), Graph(4), {0.3, 0.1, 0.1, 0.5});  // all 24 tie
    CHECK(res.minimizers.contains(Permutation::from_cycles(4, {{0, 3}})));
    CHECK(res.minimizers.get(0).is_identity());  // lexicographic order
    const Graph g = graph_of(4, {{0, 1}});
    const MapResult res2 = map_estimate(g, g, {0.3, 0.1, 0.1, 0.5});
    for (size_t i = 0; i < res2.minimizers.size(); ++i) {
        const Permutation pi = res2.minimizers.get(i);
        CHECK(apply_permutation(g, pi) == g);
    }
}

TEST_CASE("count as good as identity") {
    const JointEdgeDistribution pos{0.3, 0.1, 0.1, 0.5};
    Rng rng(41);
    for (int t = 0; t < 20; ++t) {
        auto [ga, gb] = sample_pair(4, pos, rng);
        // brute-force the same count through the public d/apply operations
        uint64_t brute = 0;
        std::vector<uint32_t> img{0, 1, 2, 3};
        do {
            const Permutation pi{img};
            if (delta(apply_permutation(ga, pi.inverse()), gb) <= delta(ga, gb)) ++brute;
        } while (std::next_permutation(img.begin(), img.end()));
        CHECK(count_as_good_as_identity(ga, gb, pos) == brute);
    }
    CHECK(count_as_good_as_identity(Graph(4), Graph(4), {0.25, 0.25, 0.25, 0.25}) == 24);
}
