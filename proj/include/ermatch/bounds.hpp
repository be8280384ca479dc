#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ermatch/combinatorics.hpp"
#include "ermatch/model.hpp"

namespace ermatch {

// Regime cutoffs used for report flags. The underlying statements are
// asymptotic; these finite-n stand-ins are recorded in every report.
inline constexpr double kSparseP00Cutoff = 0.99;
inline constexpr double kSignificantRatioCutoff = 100.0;

struct ThresholdReport {
    uint32_t n = 0;
    double slack = 0.0;  // stand-in for the vanishing correction terms, natural-log units
    double q_required = 0.0;
    double q_actual = 0.0;
    bool achievable = false;
    bool converse_violated = false;  // instance falls in the provably-impossible region
    bool sparse = false;
    bool significant = false;
    bool negative = false;
    double sig_ratio = 0.0;

    std::string to_json(const JointEdgeDistribution& p) const;
};

ThresholdReport threshold_report(const JointEdgeDistribution& p, uint32_t n, double slack);

// 2 (ln n + slack) / n: the q level above which exact recovery is guaranteed.
double achievability_q_threshold(uint32_t n, double slack);

struct ThresholdPair {
    double ach = 0.0;
    double conv = 0.0;
};

// Thresholds on p11 in the sparse significantly-correlated regime:
// ach = 2 (ln n + slack)/n, conv = (ln n - slack)/n.
ThresholdPair sparse_thresholds(uint32_t n, double slack);

// p11^2 / (p10 + p01 + p11) >= 8 (ln n + slack)/n, for symmetric noise
// (p10 = p01). The growth hypothesis on p11/p1* has no finite-n form and is
// not checked.
bool pg_condition(const JointEdgeDistribution& p, uint32_t n, double slack);

// Same two formulas applied to the product p01 p10 (negative correlation).
ThresholdPair negative_thresholds(uint32_t n, double slack);

// Union-bound estimate of the failure probability of the quality-gap
// deanonymizer: with x = n exp(-q(n-2)/2), returns x^2/(1-x) when x < 1
// (clamped to 1), else 1.
double union_bound_failure(uint32_t n, double q);

// E[d(pi)] = 2 (N - c1)(p00 p11 - p01 p10).
double expected_gap(const CycleType& ct, const JointEdgeDistribution& p);

// Explicit numeric upper bound on any deanonymizer's success probability from
// the isolated-vertex count X of the intersection graph: Chebyshev mass below
// E[X]/2 plus a 1/floor(E[X]/2)! tie term.
double converse_success_bound(uint32_t n, double p11);

struct CurvePoint {
    double s = 0.0;
    double lb = 0.0;  // 1/s
    double ub = 0.0;  // 2/s
    double pg = 0.0;  // 8(2-s)/s^2
};

// Density thresholds (in units of n p1*/ln n) against the symmetric
// subsampling correlation s.
std::vector<CurvePoint> tradeoff_curves(const std::vector<double>& s_grid);

// CSV with header s,lb,ub,pg; byte-stable for identical input.
std::string curves_csv(const std::vector<CurvePoint>& points);

}  // namespace ermatch
