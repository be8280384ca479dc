#include "ermatch/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace ermatch {

namespace {

void check_enum_limit(uint32_t l) {
    if (l < 1) throw ConfigError("cyclic sequence length must be >= 1");
    if (l > kCyclicEnumLimit)
        throw CapacityError("cyclic enumeration capped at l = " +
                            std::to_string(kCyclicEnumLimit));
}

// Bit i of the result is bit (i+1 mod l) of mask.
uint32_t rot_next(uint32_t mask, uint32_t l) {
    return (mask >> 1) | ((mask & 1u) << (l - 1));
}

// a_l evaluated at the tail-bound point, where the closed form collapses to
// 2^(1-l) sum_i C(l,2i) (1-4q)^i. Real arithmetic throughout; for 1-4q >= 0
// the algebraically identical two-power form is used, which stays stable for
// large l.
double a_at_tail_point(uint64_t l, double q) {
    const double w = 1.0 - 4.0 * q;
    if (w >= 0.0) {
        const double g = std::sqrt(w);
        return std::pow((1.0 + g) / 2.0, static_cast<double>(l)) +
               std::pow((1.0 - g) / 2.0, static_cast<double>(l));
    }
    if (l > 64) throw CapacityError("tail-point evaluation with q > 1/4 capped at l = 64");
    return std::ldexp(sum_even_binomial(static_cast<uint32_t>(l), w), 1 - static_cast<int>(l));
}

}  // namespace

CycleType CycleType::from_lifted(const LiftedAction& act) {
    CycleType ct;
    ct.counts = act.cycle_counts;
    ct.total = act.total_pairs();
    return ct;
}

CycleType CycleType::single_cycle(uint64_t l, uint64_t fixed) {
    CycleType ct;
    ct.counts.assign(std::max<uint64_t>(l, 1) + 1, 0);
    if (l >= 1) ct.counts[l] += 1;
    ct.counts[1] += fixed;
    ct.total = l + fixed;
    return ct;
}

void CycleType::validate() const {
    uint64_t sum = 0;
    for (uint64_t l = 1; l < counts.size(); ++l) sum += l * counts[l];
    if (sum != total) throw ConfigError("cycle type: counts do not sum to the declared total");
}

uint64_t cyclic_count_a(uint32_t l, uint32_t k, uint32_t r) {
    check_enum_limit(l);
    uint64_t count = 0;
    for (uint32_t mask = 0; mask < (1u << l); ++mask) {
        if (std::popcount(mask) != static_cast<int>(k)) continue;
        if (std::popcount(mask & ~rot_next(mask, l)) == static_cast<int>(r)) ++count;
    }
    return count;
}

uint64_t cyclic_count_b(uint32_t l, uint32_t s) {
    check_enum_limit(l);
    uint64_t count = 0;
    for (uint32_t mask = 0; mask < (1u << l); ++mask) {
        if (std::popcount(mask) != static_cast<int>(s)) continue;
        if ((mask & rot_next(mask, l)) == 0) ++count;
    }
    return count;
}

std::vector<std::vector<uint64_t>> cyclic_count_a_table(uint32_t l) {
    check_enum_limit(l);
    std::vector<std::vector<uint64_t>> a(l + 1, std::vector<uint64_t>(l + 1, 0));
    for (uint32_t mask = 0; mask < (1u << l); ++mask) {
        const int k = std::popcount(mask);
        const int r = std::popcount(mask & ~rot_next(mask, l));
        ++a[k][r];
    }
    return a;
}

std::vector<uint64_t> cyclic_count_b_table(uint32_t l) {
    check_enum_limit(l);
    std::vector<uint64_t> b(l + 1, 0);
    for (uint32_t mask = 0; mask < (1u << l); ++mask)
        if ((mask & rot_next(mask, l)) == 0) ++b[std::popcount(mask)];
    return b;
}

double sum_even_binomial(uint32_t l, double w) {
    double term = 1.0;
    double sum = 1.0;
    for (uint32_t i = 0; 2 * i + 2 <= l; ++i) {
        term *= static_cast<double>(l - 2 * i) * (l - 2 * i - 1) /
                (static_cast<double>(2 * i + 1) * (2 * i + 2)) * w;
        sum += term;
    }
    return sum;
}

double cyclic_poly_a(uint32_t l, double x, double y, double z) {
    if (l < 1) throw ConfigError("cyclic_poly_a: length must be >= 1");
    const double s = x + y;
    if (s == 0.0) return cyclic_poly_a_brute(l, x, y, z);
    const double w = 1.0 + 4.0 * x * y * (z - 1.0) / (s * s);
    if (w >= 0.0) {
        // 2^(1-l) s^l sum_i C(l,2i) w^i  ==  (s(1+g)/2)^l + (s(1-g)/2)^l
        const double g = std::sqrt(w);
        return std::pow(s * (1.0 + g) / 2.0, static_cast<double>(l)) +
               std::pow(s * (1.0 - g) / 2.0, static_cast<double>(l));
    }
    return std::ldexp(std::pow(s, static_cast<double>(l)) * sum_even_binomial(l, w),
                      1 - static_cast<int>(l));
}

double cyclic_poly_a_brute(uint32_t l, double x, double y, double z) {
    const auto a = cyclic_count_a_table(l);
    double sum = 0.0;
    for (uint32_t k = 0; k <= l; ++k) {
        for (uint32_t r = 0; r <= l; ++r) {
            if (a[k][r] == 0) continue;
            sum += static_cast<double>(a[k][r]) * std::pow(x, static_cast<double>(k)) *
                   std::pow(y, static_cast<double>(l - k)) * std::pow(z, static_cast<double>(r));
        }
    }
    return sum;
}

double gap_gf_conditional(uint64_t r, const JointEdgeDistribution& p, double z) {
    p.validate();
    if (!(z > 0.0)) throw ConfigError("gap_gf_conditional: z must be positive");
    const DerivedParams d = derive_params(p);
    if (d.p0s <= 0.0 || d.p1s <= 0.0)
        throw ConfigError("gap_gf_conditional: degenerate marginal (p1* or p0* is zero)");
    const double f0 = (p.p00 * z + p.p01 / z) / d.p0s;
    const double f1 = (p.p10 / z + p.p11 * z) / d.p1s;
    return std::pow(f0 * f1, static_cast<double>(r));
}

std::vector<double> gap_gf_conditional_coeffs(uint64_t r, const JointEdgeDistribution& p) {
    p.validate();
    const DerivedParams d = derive_params(p);
    if (d.p0s <= 0.0 || d.p1s <= 0.0)
        throw ConfigError("gap_gf_conditional_coeffs: degenerate marginal");
    // ((p00 z + p01/z)/p0*)^r expands over a; ((p11 z + p10/z)/p1*)^r over b.
    std::vector<double> coeffs(4 * r + 1, 0.0);
    std::vector<double> binom(r + 1, 0.0);
    binom[0] = 1.0;
    for (uint64_t i = 1; i <= r; ++i)
        binom[i] = binom[i - 1] * static_cast<double>(r - i + 1) / static_cast<double>(i);
    for (uint64_t a = 0; a <= r; ++a) {
        const double wa = binom[a] * std::pow(p.p00 / d.p0s, static_cast<double>(a)) *
                          std::pow(p.p01 / d.p0s, static_cast<double>(r - a));
        for (uint64_t b = 0; b <= r; ++b) {
            const double wb = binom[b] * std::pow(p.p11 / d.p1s, static_cast<double>(b)) *
                              std::pow(p.p10 / d.p1s, static_cast<double>(r - b));
            coeffs[2 * a + 2 * b] += wa * wb;  // exponent 2a + 2b - 2r
        }
    }
    return coeffs;
}

double gap_gf(const CycleType& ct, double p1s, double p0s, double z) {
    ct.validate();
    if (std::abs(p1s + p0s - 1.0) > kProbTolerance)
        throw ConfigError("gap_gf: marginals must sum to 1");
    double prod = 1.0;
    for (uint64_t l = 1; l < ct.counts.size(); ++l) {
        if (ct.counts[l] == 0) continue;
        prod *= std::pow(cyclic_poly_a(static_cast<uint32_t>(l), p1s, p0s, z),
                         static_cast<double>(ct.counts[l]));
    }
    return prod;
}

double gap_tail_bound(const CycleType& ct, const JointEdgeDistribution& p) {
    ct.validate();
    const DerivedParams d = derive_params(p);
    if (!(d.p1s * d.p0s > 0.0))
        throw ConfigError("gap_tail_bound: requires p1* p0* > 0, got " +
                          std::to_string(d.p1s * d.p0s));
    const double z_star = 1.0 - d.q / (d.p1s * d.p0s);
    if (z_star < 0.0)
        throw ConfigError("gap_tail_bound: evaluation point 1 - q/(p1* p0*) is negative: " +
                          std::to_string(z_star));
    double prod = 1.0;
    for (uint64_t l = 2; l < ct.counts.size(); ++l) {
        if (ct.counts[l] == 0) continue;
        prod *= std::pow(a_at_tail_point(l, d.q), static_cast<double>(ct.counts[l]));
    }
    return std::clamp(prod, 0.0, 1.0);
}

double gap_tail_envelope(const CycleType& ct, double q) {
    ct.validate();
    if (!(q >= 0.0 && q <= 0.5)) throw ConfigError("gap_tail_envelope: q must be in [0, 1/2]");
    const double moved = static_cast<double>(ct.total - ct.fixed_points());
    return std::pow(1.0 - 2.0 * q, moved / 2.0);
}

}  // namespace ermatch
