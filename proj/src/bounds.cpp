#include "ermatch/bounds.hpp"

#include <cmath>

#include "json.hpp"

namespace ermatch {

namespace {

void check_n_slack(uint32_t n, double slack, const char* who) {
    if (n < 3) throw ConfigError(std::string(who) + ": n must be >= 3");
    if (!(slack >= 0.0)) throw ConfigError(std::string(who) + ": slack must be >= 0");
}

std::string format_double(double v) {
    char buf[32];
    snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

double achievability_q_threshold(uint32_t n, double slack) {
    check_n_slack(n, slack, "achievability_q_threshold");
    return 2.0 * (std::log(static_cast<double>(n)) + slack) / n;
}

ThresholdPair sparse_thresholds(uint32_t n, double slack) {
    check_n_slack(n, slack, "sparse_thresholds");
    const double logn = std::log(static_cast<double>(n));
    return {2.0 * (logn + slack) / n, (logn - slack) / n};
}

bool pg_condition(const JointEdgeDistribution& p, uint32_t n, double slack) {
    check_n_slack(n, slack, "pg_condition");
    p.validate();
    if (std::abs(p.p10 - p.p01) > kProbTolerance)
        throw ConfigError("pg_condition: requires symmetric noise (p10 = p01)");
    const double denom = p.p10 + p.p01 + p.p11;
    if (denom <= 0.0) return false;
    return p.p11 * p.p11 / denom >= 8.0 * (std::log(static_cast<double>(n)) + slack) / n;
}

ThresholdPair negative_thresholds(uint32_t n, double slack) {
    check_n_slack(n, slack, "negative_thresholds");
    const double logn = std::log(static_cast<double>(n));
    return {2.0 * (logn + slack) / n, (logn - slack) / n};
}

double union_bound_failure(uint32_t n, double q) {
    if (n < 3) throw ConfigError("union_bound_failure: n must be >= 3");
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("union_bound_failure: q must be in [0,1]");
    const double x = n * std::exp(-q * (static_cast<double>(n) - 2.0) / 2.0);
    if (x >= 1.0) return 1.0;
    return std::min(1.0, x * x / (1.0 - x));
}

double expected_gap(const CycleType& ct, const JointEdgeDistribution& p) {
    ct.validate();
    p.validate();
    const double moved = static_cast<double>(ct.total - ct.fixed_points());
    return 2.0 * moved * (p.p00 * p.p11 - p.p01 * p.p10);
}

double converse_success_bound(uint32_t n, double p11) {
    if (n < 3) throw ConfigError("converse_success_bound: n must be >= 3");
    if (!(p11 >= 0.0 && p11 <= 1.0))
        throw ConfigError("converse_success_bound: p11 must be in [0,1]");
    const double nn = n;
    const double ex = nn * std::pow(1.0 - p11, nn - 1.0);
    if (ex <= 0.0) return 1.0;  // no isolated vertices expected, no leverage
    const double ex2 = nn * (nn - 1.0) * std::pow(1.0 - p11, 2.0 * nn - 3.0) + ex;
    const double var = ex2 - ex * ex;
    const double chebyshev = 4.0 * var / (ex * ex);
    const double tie_term = std::exp(-std::lgamma(std::floor(ex / 2.0) + 1.0));
    return std::min(1.0, chebyshev + tie_term);
}

std::vector<CurvePoint> tradeoff_curves(const std::vector<double>& s_grid) {
    std::vector<CurvePoint> out;
    out.reserve(s_grid.size());
    for (double s : s_grid) {
        if (!(s > 0.0 && s <= 1.0))
            throw ConfigError("tradeoff_curves: s must be in (0,1], got " + std::to_string(s));
        out.push_back({s, 1.0 / s, 2.0 / s, 8.0 * (2.0 - s) / (s * s)});
    }
    return out;
}

std::string curves_csv(const std::vector<CurvePoint>& points) {
    std::string csv = "s,lb,ub,pg\n";
    for (const CurvePoint& c : points) {
        csv += format_double(c.s);
        csv += ',';
        csv += format_double(c.lb);
        csv += ',';
        csv += format_double(c.ub);
        csv += ',';
        csv += format_double(c.pg);
        csv += '\n';
    }
    return csv;
}

ThresholdReport threshold_report(const JointEdgeDistribution& p, uint32_t n, double slack) {
    check_n_slack(n, slack, "threshold_report");
    const DerivedParams d = derive_params(p);
    ThresholdReport r;
    r.n = n;
    r.slack = slack;
    r.q_required = achievability_q_threshold(n, slack);
    r.q_actual = d.q;
    r.achievable = r.q_actual >= r.q_required;
    r.sparse = p.p00 >= kSparseP00Cutoff;
    r.significant = d.sig_ratio >= kSignificantRatioCutoff;  // NaN compares false
    r.negative = d.sig_ratio < 1.0;
    r.sig_ratio = d.sig_ratio;

    const double conv_level = (std::log(static_cast<double>(n)) - slack) / n;
    if (r.sparse && r.significant)
        r.converse_violated = p.p11 <= conv_level;
    else if (r.negative)
        r.converse_violated = p.p01 * p.p10 <= conv_level;
    else
        r.converse_violated = false;
    return r;
}

std::string ThresholdReport::to_json(const JointEdgeDistribution& p) const {
    nlohmann::json j;
    j["n"] = n;
    j["slack"] = slack;
    j["p"] = {{"p11", p.p11}, {"p10", p.p10}, {"p01", p.p01}, {"p00", p.p00}};
    j["q_required"] = q_required;
    j["q_actual"] = q_actual;
    j["achievable"] = achievable;
    j["converse_violated"] = converse_violated;
    nlohmann::json regime;
    regime["sparse"] = sparse;
    regime["significant"] = significant;
    regime["negative"] = negative;
    if (std::isnan(sig_ratio))
        regime["sig_ratio"] = "undefined";
    else if (std::isinf(sig_ratio))
        regime["sig_ratio"] = "inf";
    else
        regime["sig_ratio"] = sig_ratio;
    regime["sparse_cutoff_p00"] = kSparseP00Cutoff;
    regime["significant_cutoff_ratio"] = kSignificantRatioCutoff;
    j["regime"] = regime;
    if (std::abs(p.p10 - p.p01) <= kProbTolerance) {
        j["pg_condition"] = pg_condition(p, n, slack);
        j["pg_note"] = "growth hypothesis on p11/p1* has no finite-n form and is not checked";
    }
    return j.dump(2);
}

}  // namespace ermatch
