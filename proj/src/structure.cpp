#include "ermatch/structure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace ermatch {

namespace {

void require_same_n(const Graph& a, const Graph& b, const char* who) {
    if (a.n() != b.n()) throw ConfigError(std::string(who) + ": graph size mismatch");
}

// Neighborhood bitsets, one row of ceil(n/64) words per vertex.
std::vector<uint64_t> neighborhood_rows(const Graph& g, size_t row_words) {
    const uint32_t n = g.n();
    std::vector<uint64_t> rows(row_words * n, 0);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j)
            if (g.edge(i, j)) {
                rows[row_words * i + (j >> 6)] |= 1ull << (j & 63);
                rows[row_words * j + (i >> 6)] |= 1ull << (i & 63);
            }
    return rows;
}

bool rows_disjoint(const uint64_t* a, const uint64_t* b, size_t words) {
    for (size_t w = 0; w < words; ++w)
        if (a[w] & b[w]) return false;
    return true;
}

void automorphism_rec(const Graph& g, const std::vector<uint32_t>& deg, std::vector<uint32_t>& img,
                      std::vector<bool>& used, uint32_t v, uint64_t& count) {
    const uint32_t n = g.n();
    if (v == n) {
        ++count;
        return;
    }
    for (uint32_t w = 0; w < n; ++w) {
        if (used[w] || deg[v] != deg[w]) continue;
        bool ok = true;
        for (uint32_t u = 0; u < v && ok; ++u) ok = g.edge(u, v) == g.edge(img[u], w);
        if (!ok) continue;
        img[v] = w;
        used[w] = true;
        automorphism_rec(g, deg, img, used, v + 1, count);
        used[w] = false;
    }
}

}  // namespace

Graph intersect(const Graph& a, const Graph& b) {
    require_same_n(a, b, "intersect");
    Graph out = a;
    for (size_t w = 0; w < out.words().size(); ++w) out.words()[w] &= b.words()[w];
    return out;
}

Graph difference(const Graph& a, const Graph& b) {
    require_same_n(a, b, "difference");
    Graph out = a;
    for (size_t w = 0; w < out.words().size(); ++w) out.words()[w] &= ~b.words()[w];
    return out;
}

uint64_t automorphism_count(const Graph& g) {
    const uint32_t n = g.n();
    if (n == 0) return 1;
    const std::vector<uint32_t> deg = g.degrees();
    std::vector<uint32_t> img(n, 0);
    std::vector<bool> used(n, false);
    uint64_t count = 0;
    automorphism_rec(g, deg, img, used, 0, count);
    return count;
}

AutomorphismReport automorphisms(const Graph& g, uint32_t limit) {
    AutomorphismReport rep;
    const std::vector<uint32_t> deg = g.degrees();
    rep.isolated = static_cast<uint32_t>(std::count(deg.begin(), deg.end(), 0u));
    rep.factorial_lower_bound = 1.0;
    for (uint32_t i = 2; i <= rep.isolated; ++i) rep.factorial_lower_bound *= i;
    if (g.n() <= limit) rep.count = automorphism_count(g);
    return rep;
}

std::vector<std::pair<uint32_t, uint32_t>> blocking_pairs(const Graph& ga, const Graph& gb) {
    require_same_n(ga, gb, "blocking_pairs");
    const uint32_t n = ga.n();
    const size_t row_words = (n + 63) / 64;
    const auto rows_a = neighborhood_rows(ga, row_words);
    const auto rows_b = neighborhood_rows(gb, row_words);
    std::vector<std::pair<uint32_t, uint32_t>> out;
    for (uint32_t u = 0; u < n; ++u) {
        const uint64_t* au = rows_a.data() + row_words * u;
        const uint64_t* bu = rows_b.data() + row_words * u;
        for (uint32_t v = u + 1; v < n; ++v) {
            const uint64_t* av = rows_a.data() + row_words * v;
            const uint64_t* bv = rows_b.data() + row_words * v;
            if (rows_disjoint(au, bv, row_words) && rows_disjoint(av, bu, row_words))
                out.emplace_back(u, v);
        }
    }
    return out;
}

double expected_blocking_pairs(uint32_t n, const JointEdgeDistribution& p) {
    p.validate();
    if (p.p11 > kProbTolerance)
        throw ConfigError("expected_blocking_pairs: formula requires p11 = 0");
    if (n < 2) throw ConfigError("expected_blocking_pairs: n must be >= 2");
    const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
    return pairs * std::pow(1.0 - 2.0 * p.p10 * p.p01, static_cast<double>(n) - 2.0);
}

}  // namespace ermatch
