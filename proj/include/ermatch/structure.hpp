#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ermatch/model.hpp"

namespace ermatch {

Graph intersect(const Graph& a, const Graph& b);
Graph difference(const Graph& a, const Graph& b);  // edges of a not in b

struct AutomorphismReport {
    std::optional<uint64_t> count;  // exact |Aut(g)|; absent beyond the limit
    uint32_t isolated = 0;          // number of degree-zero vertices
    double factorial_lower_bound = 1.0;  // isolated!  (any such permutation is an automorphism)
};

inline constexpr uint32_t kDefaultAutLimit = 10;

// Exact enumeration is brute force over vertex assignments with degree
// pruning; beyond `limit` only the isolated-vertex lower bound is filled.
AutomorphismReport automorphisms(const Graph& g, uint32_t limit = kDefaultAutLimit);

// Exact |Aut(g)| by backtracking; exponential in the worst case.
uint64_t automorphism_count(const Graph& g);

// All unordered {u,v} with N_a(u) and N_b(v) disjoint and N_a(v) and N_b(u)
// disjoint, ordered by pair index. Bitset neighborhood intersections,
// O(n^2 * n/64).
std::vector<std::pair<uint32_t, uint32_t>> blocking_pairs(const Graph& ga, const Graph& gb);

// C(n,2) (1 - 2 p10 p01)^(n-2); valid only when p11 = 0.
double expected_blocking_pairs(uint32_t n, const JointEdgeDistribution& p);

}  // namespace ermatch
