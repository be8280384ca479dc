#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ermatch/errors.hpp"
#include "ermatch/rng.hpp"

namespace ermatch {

// Absolute tolerance for probability-vector validity checks. Inputs outside
// this tolerance are rejected; renormalization happens only on explicit request.
inline constexpr double kProbTolerance = 1e-12;

// Joint distribution of one vertex pair's presence pattern in the two graphs:
// (1,1) w.p. p11, (1,0) w.p. p10, (0,1) w.p. p01, (0,0) w.p. p00.
struct JointEdgeDistribution {
    double p11 = 0.0;
    double p10 = 0.0;
    double p01 = 0.0;
    double p00 = 1.0;

    void validate() const;  // throws ConfigError
    JointEdgeDistribution renormalized() const;

    std::string to_json() const;
    static JointEdgeDistribution from_json(const std::string& text, bool renormalize = false);

    bool operator==(const JointEdgeDistribution&) const = default;
};

struct DerivedParams {
    double p1s = 0.0;  // P[G_a(e) = 1]
    double p0s = 0.0;
    double ps1 = 0.0;  // P[G_b(e) = 1]
    double ps0 = 0.0;
    double rho = 0.0;        // exact correlation of the two edge indicators
    double q = 0.0;          // (sqrt(p11 p00) - sqrt(p01 p10))^2
    double sig_ratio = 0.0;  // p11 p00 / (p01 p10); +inf or NaN ("undefined") at edges
};

struct SubsampleParams {
    double r = 0.0;    // parent edge probability
    double s_a = 0.0;  // retention probability for G_a
    double s_b = 0.0;  // retention probability for G_b

    void validate() const;
};

using Channel = std::array<std::array<double, 2>, 2>;  // row-stochastic 2x2

// Canonical index of the unordered pair {i,j}, i < j, in lexicographic order:
// (0,1),(0,2),...,(0,n-1),(1,2),...  Fixed so serialized graphs are portable.
inline uint64_t pair_index(uint32_t i, uint32_t j, uint32_t n) {
    return static_cast<uint64_t>(i) * (2ull * n - i - 1) / 2 + (j - i - 1);
}

inline uint64_t pair_index_unordered(uint32_t a, uint32_t b, uint32_t n) {
    return a < b ? pair_index(a, b, n) : pair_index(b, a, n);
}

std::pair<uint32_t, uint32_t> pair_from_index(uint64_t idx, uint32_t n);

// Undirected graph stored as an edge-indicator bit vector over the N = C(n,2)
// canonical pair indices.
class Graph {
public:
    Graph() = default;
    explicit Graph(uint32_t n) : n_(n), words_((num_pairs_for(n) + 63) / 64, 0) {}

    static Graph complete(uint32_t n);

    uint32_t n() const { return n_; }
    uint64_t num_pairs() const { return num_pairs_for(n_); }

    bool test(uint64_t idx) const { return words_[idx >> 6] >> (idx & 63) & 1; }
    void set(uint64_t idx, bool v) {
        const uint64_t bit = 1ull << (idx & 63);
        if (v)
            words_[idx >> 6] |= bit;
        else
            words_[idx >> 6] &= ~bit;
    }

    bool edge(uint32_t i, uint32_t j) const { return test(pair_index_unordered(i, j, n_)); }
    void set_edge(uint32_t i, uint32_t j, bool v) { set(pair_index_unordered(i, j, n_), v); }

    uint64_t edge_count() const;
    std::vector<uint32_t> degrees() const;

    const std::vector<uint64_t>& words() const { return words_; }
    std::vector<uint64_t>& words() { return words_; }

    bool operator==(const Graph&) const = default;

    // Text format: line 1 is n, line 2 the N-character 0/1 string in canonical
    // pair order.
    std::string to_text() const;
    static Graph from_text(const std::string& text);

private:
    static uint64_t num_pairs_for(uint32_t n) { return static_cast<uint64_t>(n) * (n - 1) / 2; }

    uint32_t n_ = 0;
    std::vector<uint64_t> words_;
};

class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<uint32_t> image);  // validates bijectivity

    static Permutation identity(uint32_t n);
    static Permutation random(uint32_t n, Rng& rng);  // Fisher-Yates, fixed order
    // Unlisted elements are fixed; cycles use 0-based vertex labels.
    static Permutation from_cycles(uint32_t n, const std::vector<std::vector<uint32_t>>& cycles);

    uint32_t n() const { return static_cast<uint32_t>(image_.size()); }
    uint32_t operator()(uint32_t i) const { return image_[i]; }
    const std::vector<uint32_t>& image() const { return image_; }

    Permutation inverse() const;
    bool is_identity() const;
    uint32_t moved_count() const;

    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<uint32_t> image_;
};

// (f * g)(x) = f(g(x))
Permutation compose(const Permutation& f, const Permutation& g);

// Action of a vertex permutation on the canonical pair indices, with the cycle
// census of that action.
struct LiftedAction {
    std::vector<uint32_t> pair_image;    // pair index -> pair index
    std::vector<uint64_t> cycle_counts;  // cycle_counts[l] = number of l-cycles; [0] unused
    uint64_t fixed_pairs = 0;            // cycle_counts[1]
    uint32_t moved_vertices = 0;

    uint64_t total_pairs() const;  // N = sum_l l * cycle_counts[l]
};

LiftedAction lift(const Permutation& pi);

DerivedParams derive_params(const JointEdgeDistribution& p);
JointEdgeDistribution subsample_to_joint(const SubsampleParams& sp);
SubsampleParams joint_to_subsample(const JointEdgeDistribution& p);
JointEdgeDistribution channel_to_joint(double r, const Channel& a, const Channel& b);

// One draw per pair, outcomes compared in the fixed order (1,1),(1,0),(0,1),(0,0).
std::pair<Graph, Graph> sample_pair(uint32_t n, const JointEdgeDistribution& p, Rng& rng);
std::pair<Graph, Graph> sample_pair(uint32_t n, const JointEdgeDistribution& p, uint64_t seed);

// result(e) = g(l(pi)(e)): the graph whose edge {i,j} is g's edge {pi(i),pi(j)}.
Graph apply_permutation(const Graph& g, const Permutation& pi);

}  // namespace ermatch
