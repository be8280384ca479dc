#include "ermatch/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace ermatch {

namespace {

bool is_probability(double v) { return v >= -kProbTolerance && v <= 1.0 + kProbTolerance; }

}  // namespace

void JointEdgeDistribution::validate() const {
    for (double v : {p11, p10, p01, p00}) {
        if (!(is_probability(v)))
            throw ConfigError("joint distribution entry outside [0,1]: " + std::to_string(v));
    }
    const double sum = p11 + p10 + p01 + p00;
    if (std::abs(sum - 1.0) > kProbTolerance)
        throw ConfigError("joint distribution does not sum to 1 (sum = " + std::to_string(sum) +
                          "); renormalize explicitly if intended");
}

JointEdgeDistribution JointEdgeDistribution::renormalized() const {
    const double sum = p11 + p10 + p01 + p00;
    if (sum <= 0.0) throw ConfigError("cannot renormalize all-zero distribution");
    return {p11 / sum, p10 / sum, p01 / sum, p00 / sum};
}

std::string JointEdgeDistribution::to_json() const {
    nlohmann::json j{{"p11", p11}, {"p10", p10}, {"p01", p01}, {"p00", p00}};
    return j.dump();
}

JointEdgeDistribution JointEdgeDistribution::from_json(const std::string& text, bool renormalize) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad distribution JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("p11") || !j.contains("p10") || !j.contains("p01") ||
        !j.contains("p00"))
        throw ConfigError("distribution JSON must be an object with keys p11,p10,p01,p00");
    JointEdgeDistribution p{j["p11"].get<double>(), j["p10"].get<double>(),
                            j["p01"].get<double>(), j["p00"].get<double>()};
    if (renormalize) p = p.renormalized();
    p.validate();
    return p;
}

void SubsampleParams::validate() const {
    for (double v : {r, s_a, s_b})
        if (!is_probability(v))
            throw ConfigError("subsample parameter outside [0,1]: " + std::to_string(v));
}

std::pair<uint32_t, uint32_t> pair_from_index(uint64_t idx, uint32_t n) {
    uint32_t i = 0;
    uint64_t row = n - 1;
    while (idx >= row) {
        idx -= row;
        --row;
        ++i;
    }
    return {i, static_cast<uint32_t>(i + 1 + idx)};
}

Graph Graph::complete(uint32_t n) {
    Graph g(n);
    const uint64_t N = g.num_pairs();
    for (uint64_t e = 0; e < N; ++e) g.set(e, true);
    return g;
}

uint64_t Graph::edge_count() const {
    uint64_t c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
}

std::vector<uint32_t> Graph::degrees() const {
    std::vector<uint32_t> deg(n_, 0);
    for (uint32_t i = 0; i < n_; ++i)
        for (uint32_t j = i + 1; j < n_; ++j)
            if (edge(i, j)) {
                ++deg[i];
                ++deg[j];
            }
    return deg;
}

std::string Graph::to_text() const {
    std::string out = std::to_string(n_);
    out += '\n';
    const uint64_t N = num_pairs();
    out.reserve(out.size() + N + 1);
    for (uint64_t e = 0; e < N; ++e) out += test(e) ? '1' : '0';
    out += '\n';
    return out;
}

Graph Graph::from_text(const std::string& text) {
    std::istringstream in(text);
    long long n = -1;
    if (!(in >> n) || n < 0) throw ConfigError("graph text: bad vertex count");
    std::string bits;
    in >> bits;
    Graph g(static_cast<uint32_t>(n));
    const uint64_t N = g.num_pairs();
    if (bits.size() != N)
        throw ConfigError("graph text: expected " + std::to_string(N) + " bits, got " +
                          std::to_string(bits.size()));
    for (uint64_t e = 0; e < N; ++e) {
        if (bits[e] == '1')
            g.set(e, true);
        else if (bits[e] != '0')
            throw ConfigError("graph text: bit string must contain only 0 and 1");
    }
    return g;
}

Permutation::Permutation(std::vector<uint32_t> image) : image_(std::move(image)) {
    const auto n = static_cast<uint32_t>(image_.size());
    std::vector<bool> seen(n, false);
    for (uint32_t v : image_) {
        if (v >= n || seen[v]) throw ConfigError("permutation image is not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(uint32_t n) {
    std::vector<uint32_t> img(n);
    std::iota(img.begin(), img.end(), 0u);
    Permutation p;
    p.image_ = std::move(img);
    return p;
}

Permutation Permutation::random(uint32_t n, Rng& rng) {
    Permutation p = identity(n);
    for (uint32_t i = n; i > 1; --i) {
        const auto j = static_cast<uint32_t>(rng.next_below(i));
        std::swap(p.image_[i - 1], p.image_[j]);
    }
    return p;
}

Permutation Permutation::from_cycles(uint32_t n, const std::vector<std::vector<uint32_t>>& cycles) {
    std::vector<uint32_t> img(n);
    std::iota(img.begin(), img.end(), 0u);
    for (const auto& c : cycles) {
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] >= n) throw ConfigError("cycle element out of range");
            img[c[i]] = c[(i + 1) % c.size()];
        }
    }
    return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
    std::vector<uint32_t> inv(image_.size());
    for (uint32_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
    Permutation p;
    p.image_ = std::move(inv);
    return p;
}

bool Permutation::is_identity() const {
    for (uint32_t i = 0; i < image_.size(); ++i)
        if (image_[i] != i) return false;
    return true;
}

uint32_t Permutation::moved_count() const {
    uint32_t m = 0;
    for (uint32_t i = 0; i < image_.size(); ++i)
        if (image_[i] != i) ++m;
    return m;
}

Permutation compose(const Permutation& f, const Permutation& g) {
    if (f.n() != g.n()) throw ConfigError("compose: size mismatch");
    std::vector<uint32_t> img(f.n());
    for (uint32_t i = 0; i < f.n(); ++i) img[i] = f(g(i));
    return Permutation(std::move(img));
}

uint64_t LiftedAction::total_pairs() const {
    uint64_t total = 0;
    for (uint64_t l = 1; l < cycle_counts.size(); ++l) total += l * cycle_counts[l];
    return total;
}

LiftedAction lift(const Permutation& pi) {
    const uint32_t n = pi.n();
    const uint64_t N = static_cast<uint64_t>(n) * (n - 1) / 2;
    LiftedAction act;
    act.pair_image.resize(N);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j)
            act.pair_image[pair_index(i, j, n)] =
                static_cast<uint32_t>(pair_index_unordered(pi(i), pi(j), n));

    act.cycle_counts.assign(N + 1, 0);
    std::vector<bool> seen(N, false);
    for (uint64_t e = 0; e < N; ++e) {
        if (seen[e]) continue;
        uint64_t len = 0;
        uint64_t cur = e;
        do {
            seen[cur] = true;
            ++len;
            cur = act.pair_image[cur];
        } while (cur != e);
        ++act.cycle_counts[len];
    }
    act.fixed_pairs = N > 0 ? act.cycle_counts[1] : 0;
    act.moved_vertices = pi.moved_count();
    return act;
}

DerivedParams derive_params(const JointEdgeDistribution& p) {
    p.validate();
    DerivedParams d;
    d.p1s = p.p11 + p.p10;
    d.p0s = p.p01 + p.p00;
    d.ps1 = p.p11 + p.p01;
    d.ps0 = p.p10 + p.p00;

    const double num = p.p11 * p.p00 - p.p01 * p.p10;
    const double var = d.p1s * d.p0s * d.ps1 * d.ps0;
    d.rho = var > 0.0 ? std::clamp(num / std::sqrt(var), -1.0, 1.0) : 0.0;

    const double root = std::sqrt(p.p11 * p.p00) - std::sqrt(p.p01 * p.p10);
    d.q = root * root;

    const double sig_num = p.p11 * p.p00;
    const double sig_den = p.p01 * p.p10;
    if (sig_den > 0.0)
        d.sig_ratio = sig_num / sig_den;
    else if (sig_num > 0.0)
        d.sig_ratio = std::numeric_limits<double>::infinity();
    else
        d.sig_ratio = std::numeric_limits<double>::quiet_NaN();  // undefined
    return d;
}

JointEdgeDistribution subsample_to_joint(const SubsampleParams& sp) {
    sp.validate();
    JointEdgeDistribution p;
    p.p11 = sp.r * sp.s_a * sp.s_b;
    p.p10 = sp.r * sp.s_a * (1.0 - sp.s_b);
    p.p01 = sp.r * (1.0 - sp.s_a) * sp.s_b;
    p.p00 = 1.0 - sp.r * (sp.s_a + sp.s_b - sp.s_a * sp.s_b);
    return p;
}

SubsampleParams joint_to_subsample(const JointEdgeDistribution& p) {
    p.validate();
    if (p.p11 <= 0.0) throw ConfigError("joint_to_subsample: requires p11 > 0");
    if (p.p11 * p.p00 - p.p01 * p.p10 < -kProbTolerance)
        throw ConfigError("joint_to_subsample: negatively correlated distribution has no subsampling form");
    const double p1s = p.p11 + p.p10;
    const double ps1 = p.p11 + p.p01;
    SubsampleParams sp;
    sp.r = std::min(1.0, p1s * ps1 / p.p11);
    sp.s_a = std::min(1.0, p.p11 / ps1);
    sp.s_b = std::min(1.0, p.p11 / p1s);
    return sp;
}

JointEdgeDistribution channel_to_joint(double r, const Channel& a, const Channel& b) {
    if (!is_probability(r)) throw ConfigError("channel_to_joint: r outside [0,1]");
    for (const Channel* ch : {&a, &b}) {
        for (const auto& row : *ch) {
            if (!is_probability(row[0]) || !is_probability(row[1]) ||
                std::abs(row[0] + row[1] - 1.0) > kProbTolerance)
                throw ConfigError("channel_to_joint: channel matrix is not row-stochastic");
        }
    }
    // [[p00,p01],[p10,p11]] = A^T diag(1-r, r) B
    const double w[2] = {1.0 - r, r};
    double m[2][2] = {{0, 0}, {0, 0}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int h = 0; h < 2; ++h) m[i][j] += a[h][i] * w[h] * b[h][j];
    JointEdgeDistribution p{m[1][1], m[1][0], m[0][1], m[0][0]};
    p.validate();
    return p;
}

std::pair<Graph, Graph> sample_pair(uint32_t n, const JointEdgeDistribution& p, Rng& rng) {
    p.validate();
    if (n < 1) throw ConfigError("sample_pair: n must be >= 1");
    Graph ga(n), gb(n);
    const uint64_t N = ga.num_pairs();
    const double t11 = p.p11;
    const double t10 = t11 + p.p10;
    const double t01 = t10 + p.p01;
    for (uint64_t e = 0; e < N; ++e) {
        const double u = rng.next_double();
        if (u < t11) {
            ga.set(e, true);
            gb.set(e, true);
        } else if (u < t10) {
            ga.set(e, true);
        } else if (u < t01) {
            gb.set(e, true);
        }
    }
    return {ga, gb};
}

std::pair<Graph, Graph> sample_pair(uint32_t n, const JointEdgeDistribution& p, uint64_t seed) {
    Rng rng(seed);
    return sample_pair(n, p, rng);
}

Graph apply_permutation(const Graph& g, const Permutation& pi) {
    if (g.n() != pi.n()) throw ConfigError("apply_permutation: size mismatch");
    const uint32_t n = g.n();
    Graph out(n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j)
            if (g.edge(pi(i), pi(j))) out.set(pair_index(i, j, n), true);
    return out;
}

}  // namespace ermatch
