#pragma once

#include <cstdint>
#include <vector>

#include "ermatch/model.hpp"

namespace ermatch {

// Cycle census of a lifted permutation acting on the N vertex pairs.
struct CycleType {
    std::vector<uint64_t> counts;  // counts[l] = number of l-cycles; index 0 unused
    uint64_t total = 0;            // N = sum_l l * counts[l]

    static CycleType from_lifted(const LiftedAction& act);
    // One l-cycle plus `fixed` fixed points; convenient for analytic checks.
    static CycleType single_cycle(uint64_t l, uint64_t fixed = 0);

    uint64_t fixed_points() const { return counts.size() > 1 ? counts[1] : 0; }
    void validate() const;
};

// Brute-force enumeration capacity: 2^l cyclic binary sequences.
inline constexpr uint32_t kCyclicEnumLimit = 20;

// Number of binary sequences on l labeled cyclic positions with k ones and
// exactly r cyclic occurrences of a one followed by a zero. Rotations count
// as distinct sequences.
uint64_t cyclic_count_a(uint32_t l, uint32_t k, uint32_t r);

// Number of binary sequences on l labeled cyclic positions with s ones, no two
// of them cyclically adjacent.
uint64_t cyclic_count_b(uint32_t l, uint32_t s);

// Full tables from a single 2^l enumeration: a[k][r] and b[s].
std::vector<std::vector<uint64_t>> cyclic_count_a_table(uint32_t l);
std::vector<uint64_t> cyclic_count_b_table(uint32_t l);

// sum_i C(l,2i) w^i  (the even part of the binomial expansion)
double sum_even_binomial(uint32_t l, double w);

// Closed form of sum_{k,r} a_{l,k,r} x^k y^(l-k) z^r. Falls back to direct
// summation when x + y = 0, where the closed form is singular.
double cyclic_poly_a(uint32_t l, double x, double y, double z);

// Direct summation via the enumeration tables (l <= kCyclicEnumLimit).
double cyclic_poly_a_brute(uint32_t l, double x, double y, double z);

// Conditional generating function of d(pi) given r misaligned positions:
// ((p00 z + p01 / z) / p0*)^r * ((p10 / z + p11 z) / p1*)^r.  Equals 1 at z=1.
double gap_gf_conditional(uint64_t r, const JointEdgeDistribution& p, double z);

// Laurent coefficients of the function above, exponents -2r..2r (even steps
// carry the mass); index i holds the coefficient of z^(i - 2r).
std::vector<double> gap_gf_conditional_coeffs(uint64_t r, const JointEdgeDistribution& p);

// Generating function of half the self-distance Delta(G, G o sigma) for
// G ~ ER(n, p1s): the product over cycle lengths of cyclic_poly_a(l, p1s, p0s, z)^c_l.
double gap_gf(const CycleType& ct, double p1s, double p0s, double z);

// Upper bound on P[d(pi) <= 0] (mean >= 0) or P[d(pi) >= 0] (mean <= 0):
// the gap generating function evaluated at z* = 1 - q/(p1s p0s), computed
// per cycle length via the real even-power sum.
double gap_tail_bound(const CycleType& ct, const JointEdgeDistribution& p);

// Envelope (1-2q)^((N - c1)/2) depending only on the number of fixed pairs;
// always dominates gap_tail_bound. Requires q in [0, 1/2].
double gap_tail_envelope(const CycleType& ct, double q);

}  // namespace ermatch
