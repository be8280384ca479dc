#include "ermatch/matching.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>

namespace ermatch {

namespace {

void require_same_n(const Graph& a, const Graph& b, const char* who) {
    if (a.n() != b.n()) throw ConfigError(std::string(who) + ": graph size mismatch");
}

// Dense 0/1 adjacency bytes for O(1) lookups in the permutation scan.
std::vector<uint8_t> adjacency_bytes(const Graph& g) {
    const uint32_t n = g.n();
    std::vector<uint8_t> adj(static_cast<size_t>(n) * n, 0);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j)
            if (g.edge(i, j)) adj[i * n + j] = adj[j * n + i] = 1;
    return adj;
}

uint64_t factorial_u64(uint32_t n) {
    uint64_t f = 1;
    for (uint32_t i = 2; i <= n; ++i) f *= i;
    return f;
}

struct ScanInput {
    uint32_t n = 0;
    const uint8_t* gc = nullptr;
    const uint8_t* gb = nullptr;
    bool maximize = false;
};

struct BlockResult {
    int64_t best = 0;
    bool any = false;
    std::vector<uint8_t> ties;  // rows of n images, lexicographic
};

template <bool Collect>
void scan_rec(const ScanInput& in, uint32_t v, uint32_t used, int64_t cur,
              std::array<uint8_t, kMapHardLimit>& img, BlockResult& out) {
    const uint32_t n = in.n;
    if (v == n) {
        const bool better = !out.any || (in.maximize ? cur > out.best : cur < out.best);
        if (better) {
            out.best = cur;
            out.any = true;
            if constexpr (Collect) out.ties.clear();
        }
        if constexpr (Collect) {
            if (cur == out.best) out.ties.insert(out.ties.end(), img.begin(), img.begin() + n);
        }
        return;
    }
    const uint8_t* gc_col = in.gc + v;  // gc[u][v] = gc_col[u*n]
    for (uint32_t w = 0; w < n; ++w) {
        if (used >> w & 1) continue;
        int64_t add = 0;
        const uint8_t* gb_col = in.gb + w;
        for (uint32_t u = 0; u < v; ++u)
            add += gc_col[static_cast<size_t>(u) * n] ^ gb_col[static_cast<size_t>(img[u]) * n];
        img[v] = static_cast<uint8_t>(w);
        scan_rec<Collect>(in, v + 1, used | (1u << w), cur + add, img, out);
    }
}

// Full scan partitioned by the image of vertex 0; blocks merge in order, so
// the result is identical to a serial lexicographic scan for any thread count.
template <bool Collect>
BlockResult scan_all(const ScanInput& in) {
    const uint32_t n = in.n;
    if (n == 0) {
        BlockResult r;
        r.any = true;
        return r;
    }
    std::vector<BlockResult> blocks(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (uint32_t w0 = 0; w0 < n; ++w0) {
        std::array<uint8_t, kMapHardLimit> img{};
        img[0] = static_cast<uint8_t>(w0);
        scan_rec<Collect>(in, 1, 1u << w0, 0, img, blocks[w0]);
    }
    BlockResult merged;
    for (const BlockResult& b : blocks) {
        if (!b.any) continue;
        if (!merged.any || (in.maximize ? b.best > merged.best : b.best < merged.best)) {
            merged.best = b.best;
            merged.any = true;
            if constexpr (Collect) merged.ties.clear();
        }
        if constexpr (Collect) {
            if (b.best == merged.best)
                merged.ties.insert(merged.ties.end(), b.ties.begin(), b.ties.end());
        }
    }
    return merged;
}

void check_map_capacity(const Graph& gc, const Graph& gb, uint32_t limit) {
    require_same_n(gc, gb, "map_estimate");
    if (gc.n() < 1) throw ConfigError("map_estimate: need at least one vertex");
    if (limit > kMapHardLimit)
        throw CapacityError("map limit exceeds supported maximum of " +
                            std::to_string(kMapHardLimit));
    if (gc.n() > limit)
        throw CapacityError("exact MAP search over " + std::to_string(gc.n()) +
                            " vertices exceeds limit " + std::to_string(limit));
}

// All n! image rows in lexicographic order.
std::vector<uint8_t> all_permutation_rows(uint32_t n) {
    std::vector<uint8_t> img(n);
    std::iota(img.begin(), img.end(), uint8_t{0});
    std::vector<uint8_t> rows;
    rows.reserve(factorial_u64(n) * n);
    do {
        rows.insert(rows.end(), img.begin(), img.end());
    } while (std::next_permutation(img.begin(), img.end()));
    return rows;
}

}  // namespace

uint64_t delta(const Graph& a, const Graph& b) {
    require_same_n(a, b, "delta");
    uint64_t d = 0;
    const auto& wa = a.words();
    const auto& wb = b.words();
    for (size_t i = 0; i < wa.size(); ++i) d += std::popcount(wa[i] ^ wb[i]);
    return d;
}

MatchStats edge_type_counts(const Graph& ga, const Graph& gb) {
    require_same_n(ga, gb, "edge_type_counts");
    MatchStats s;
    const auto& wa = ga.words();
    const auto& wb = gb.words();
    for (size_t i = 0; i < wa.size(); ++i) {
        s.n11 += std::popcount(wa[i] & wb[i]);
        s.n10 += std::popcount(wa[i] & ~wb[i]);
        s.n01 += std::popcount(~wa[i] & wb[i]);
    }
    s.n00 = ga.num_pairs() - s.n11 - s.n10 - s.n01;
    s.m_a = s.n11 + s.n10;
    s.m_b = s.n11 + s.n01;
    s.delta = s.n10 + s.n01;
    return s;
}

int64_t d_stat(const Permutation& pi, const Graph& ga, const Graph& gb) {
    require_same_n(ga, gb, "d_stat");
    if (pi.n() != ga.n()) throw ConfigError("d_stat: permutation size mismatch");
    return static_cast<int64_t>(delta(apply_permutation(ga, pi), gb)) -
           static_cast<int64_t>(delta(ga, gb));
}

ObjectiveSense objective_sense(const JointEdgeDistribution& p) {
    p.validate();
    const double match = p.p11 * p.p00;
    const double mismatch = p.p01 * p.p10;
    if (std::abs(match - mismatch) <= 1e-15 + 1e-12 * std::max(match, mismatch))
        return ObjectiveSense::flat;
    return mismatch < match ? ObjectiveSense::minimize : ObjectiveSense::maximize;
}

PosteriorWeight log_posterior_weight(const Permutation& pi, const Graph& gc, const Graph& gb,
                                     const JointEdgeDistribution& p) {
    require_same_n(gc, gb, "log_posterior_weight");
    const double k = static_cast<double>(delta(apply_permutation(gc, pi.inverse()), gb)) / 2.0;
    const ObjectiveSense sense = objective_sense(p);
    if (sense == ObjectiveSense::flat) return {0.0, true};
    const double match = p.p11 * p.p00;
    const double mismatch = p.p01 * p.p10;
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (mismatch == 0.0) return {k > 0 ? -inf : 0.0, false};
    if (match == 0.0) return {k > 0 ? inf : 0.0, false};
    return {k * std::log(mismatch / match), false};
}

Permutation TieSet::get(size_t i) const {
    const auto r = row(i);
    return Permutation(std::vector<uint32_t>(r.begin(), r.end()));
}

bool TieSet::contains(const Permutation& pi) const {
    if (pi.n() != n_) return false;
    std::array<uint8_t, kMapHardLimit> key{};
    for (uint32_t i = 0; i < n_; ++i) key[i] = static_cast<uint8_t>(pi(i));
    size_t lo = 0;
    size_t hi = size();
    while (lo < hi) {
        const size_t mid = (lo + hi) / 2;
        const auto r = row(mid);
        const int cmp = std::memcmp(r.data(), key.data(), n_);
        if (cmp == 0) return true;
        if (cmp < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return false;
}

bool TieSet::contains_identity() const { return contains(Permutation::identity(n_)); }

MapResult map_estimate(const Graph& gc, const Graph& gb, const JointEdgeDistribution& p,
                       uint32_t limit) {
    check_map_capacity(gc, gb, limit);
    const uint32_t n = gc.n();
    const auto adj_c = adjacency_bytes(gc);
    const auto adj_b = adjacency_bytes(gb);
    ScanInput in{n, adj_c.data(), adj_b.data(), false};

    MapResult res;
    res.sense = objective_sense(p);
    res.minimizers = TieSet(n);

    if (res.sense == ObjectiveSense::flat) {
        res.degenerate = true;
        res.optimum_value = scan_all<false>(in).best;  // minimum Delta, for reference
        const auto rows = all_permutation_rows(n);
        for (size_t i = 0; i * n < rows.size(); ++i) res.minimizers.add({rows.data() + i * n, n});
        res.unique = res.minimizers.size() == 1;
        return res;
    }

    in.maximize = res.sense == ObjectiveSense::maximize;
    BlockResult scan = scan_all<true>(in);
    res.optimum_value = scan.best;
    for (size_t i = 0; i * n < scan.ties.size(); ++i)
        res.minimizers.add({scan.ties.data() + i * n, n});
    res.unique = res.minimizers.size() == 1;
    return res;
}

MapResult map_estimate_reference(const Graph& gc, const Graph& gb, const JointEdgeDistribution& p,
                                 uint32_t limit) {
    check_map_capacity(gc, gb, limit);
    const uint32_t n = gc.n();
    const auto adj_c = adjacency_bytes(gc);
    const auto adj_b = adjacency_bytes(gb);

    MapResult res;
    res.sense = objective_sense(p);
    res.minimizers = TieSet(n);
    res.degenerate = res.sense == ObjectiveSense::flat;
    const bool maximize = res.sense == ObjectiveSense::maximize;

    std::vector<uint8_t> img(n);
    std::iota(img.begin(), img.end(), uint8_t{0});
    bool any = false;
    int64_t best_delta = 0;  // minimum Delta, tracked separately for the flat case
    do {
        int64_t score = 0;
        for (uint32_t v = 1; v < n; ++v)
            for (uint32_t u = 0; u < v; ++u)
                score += adj_c[u * n + v] ^ adj_b[static_cast<size_t>(img[u]) * n + img[v]];
        if (!any || score < best_delta) best_delta = score;
        if (res.degenerate) {
            res.minimizers.add(img);
        } else {
            const bool better = !any || (maximize ? score > res.optimum_value
                                                  : score < res.optimum_value);
            if (better) {
                res.optimum_value = score;
                res.minimizers.clear();
            }
            if (better || score == res.optimum_value) res.minimizers.add(img);
        }
        any = true;
    } while (std::next_permutation(img.begin(), img.end()));

    if (res.degenerate) res.optimum_value = best_delta;
    res.unique = res.minimizers.size() == 1;
    return res;
}

uint64_t count_as_good_as_identity(const Graph& gc, const Graph& gb,
                                   const JointEdgeDistribution& p, uint32_t limit) {
    check_map_capacity(gc, gb, limit);
    const uint32_t n = gc.n();
    const ObjectiveSense sense = objective_sense(p);
    if (sense == ObjectiveSense::flat) return factorial_u64(n);

    const auto adj_c = adjacency_bytes(gc);
    const auto adj_b = adjacency_bytes(gb);
    const auto score_id = static_cast<int64_t>(delta(gc, gb));
    const bool maximize = sense == ObjectiveSense::maximize;

    std::vector<uint64_t> counts(std::max(n, 1u), 0);
#pragma omp parallel for schedule(dynamic, 1)
    for (uint32_t w0 = 0; w0 < n; ++w0) {
        std::array<uint8_t, kMapHardLimit> img{};
        img[0] = static_cast<uint8_t>(w0);
        uint64_t local = 0;
        auto rec = [&](auto&& self, uint32_t v, uint32_t used, int64_t cur) -> void {
            if (v == n) {
                if (maximize ? cur >= score_id : cur <= score_id) ++local;
                return;
            }
            for (uint32_t w = 0; w < n; ++w) {
                if (used >> w & 1) continue;
                int64_t add = 0;
                for (uint32_t u = 0; u < v; ++u)
                    add += adj_c[u * n + v] ^ adj_b[static_cast<size_t>(img[u]) * n + w];
                img[v] = static_cast<uint8_t>(w);
                self(self, v + 1, used | (1u << w), cur + add);
            }
        };
        rec(rec, 1, 1u << w0, 0);
        counts[w0] = local;
    }
    uint64_t total = 0;
    for (uint64_t c : counts) total += c;
    return total;
}

}  // namespace ermatch
