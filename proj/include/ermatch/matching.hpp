#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ermatch/model.hpp"

namespace ermatch {

// Edge-type census of a graph pair over the N vertex pairs.
struct MatchStats {
    uint64_t delta = 0;  // Hamming distance of the indicator vectors
    uint64_t n11 = 0, n10 = 0, n01 = 0, n00 = 0;
    uint64_t m_a = 0, m_b = 0;

    // k = delta/2 is a half-integer when delta is odd.
    double k() const { return static_cast<double>(delta) / 2.0; }
    bool k_is_integer() const { return delta % 2 == 0; }
};

uint64_t delta(const Graph& a, const Graph& b);
MatchStats edge_type_counts(const Graph& ga, const Graph& gb);

// d(pi) = Delta(ga o l(pi), gb) - Delta(ga, gb): how much pi changes the
// matching quality relative to the identity.
int64_t d_stat(const Permutation& pi, const Graph& ga, const Graph& gb);

struct PosteriorWeight {
    double log_weight = 0.0;
    bool flat = false;  // posterior does not depend on the permutation
};

// Log posterior weight of candidate pi given observed (gc, gb):
// k * log(p10 p01 / (p11 p00)) with k = Delta(gc o l(pi)^-1, gb) / 2.
// Differences of returned values are exact log posterior ratios.
PosteriorWeight log_posterior_weight(const Permutation& pi, const Graph& gc, const Graph& gb,
                                     const JointEdgeDistribution& p);

enum class ObjectiveSense { minimize, maximize, flat };

ObjectiveSense objective_sense(const JointEdgeDistribution& p);

// Set of permutations stored as flat rows of n vertex images (n <= 16).
// Rows are always appended in lexicographic order.
class TieSet {
public:
    TieSet() = default;
    explicit TieSet(uint32_t n) : n_(n) {}

    uint32_t n() const { return n_; }
    size_t size() const { return n_ == 0 ? (data_.empty() ? 0 : 1) : data_.size() / n_; }
    bool empty() const { return data_.empty() && n_ > 0; }

    void add(std::span<const uint8_t> img) { data_.insert(data_.end(), img.begin(), img.end()); }
    void clear() { data_.clear(); }

    std::span<const uint8_t> row(size_t i) const { return {data_.data() + i * n_, n_}; }
    Permutation get(size_t i) const;
    bool contains(const Permutation& pi) const;  // binary search over sorted rows
    bool contains_identity() const;

    bool operator==(const TieSet&) const = default;

private:
    uint32_t n_ = 0;
    std::vector<uint8_t> data_;
};

struct MapResult {
    int64_t optimum_value = 0;  // best Delta achieved over all permutations
    ObjectiveSense sense = ObjectiveSense::minimize;
    bool degenerate = false;  // flat posterior: every permutation is optimal
    bool unique = false;
    TieSet minimizers;  // the full tie set, in lexicographic order
};

inline constexpr uint32_t kDefaultMapLimit = 10;
inline constexpr uint32_t kMapHardLimit = 14;

// Exact MAP estimate by exhaustive scan over all n! candidate assignments of
// gc-vertices to gb-vertices. The objective for candidate pi is
// Delta(gc o l(pi)^-1, gb); minimized or maximized per the posterior sense.
// Partitioned across threads by the image of vertex 0 with a deterministic
// merge, so results are identical for any thread count.
MapResult map_estimate(const Graph& gc, const Graph& gb, const JointEdgeDistribution& p,
                       uint32_t limit = kDefaultMapLimit);

// Serial reference: plain std::next_permutation loop with full recomputation.
// Kept as the correctness oracle for the scan above; results are bit-identical.
MapResult map_estimate_reference(const Graph& gc, const Graph& gb, const JointEdgeDistribution& p,
                                 uint32_t limit = kDefaultMapLimit);

// Number of permutations whose objective is at least as good as the identity's
// (everything, if the posterior is flat).
uint64_t count_as_good_as_identity(const Graph& gc, const Graph& gb,
                                   const JointEdgeDistribution& p,
                                   uint32_t limit = kDefaultMapLimit);

}  // namespace ermatch
