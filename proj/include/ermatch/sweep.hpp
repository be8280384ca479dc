#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ermatch/matching.hpp"
#include "ermatch/model.hpp"

namespace ermatch {

enum class SuccessConvention {
    strict_tie,   // success = the tie set is exactly {identity}
    uniform_tie,  // success = 1/|tie set| when the identity is among the optima
};

struct ChannelSpec {
    double r = 0.0;
    Channel a{};
    Channel b{};
};

// Distribution in one of the three accepted forms.
struct DistSpec {
    std::variant<JointEdgeDistribution, SubsampleParams, ChannelSpec> form;

    JointEdgeDistribution to_joint() const;
};

// Parses {"joint": {...}} | {"subsample": {...}} | {"channel": {...}} or a
// bare joint object. Renormalization applies to the joint form only and
// happens only when requested.
DistSpec parse_dist_spec(const std::string& json_text, bool renormalize_joint = false);

struct SweepConfig {
    std::vector<uint32_t> n_list;
    std::vector<DistSpec> dists;
    uint64_t trials = 100;
    uint64_t base_seed = 0;
    double slack = 0.0;
    uint32_t matcher_limit = kDefaultMapLimit;
    SuccessConvention convention = SuccessConvention::strict_tie;
    int threads = 0;  // 0 = runtime default
    bool compute_aut = false;

    void validate() const;
    static SweepConfig from_json(const std::string& text);
    std::string to_json() const;
};

struct TrialRecord {
    uint32_t cell = 0;
    uint64_t trial = 0;
    double success_strict = 0.0;
    double success_uniform = 0.0;
    uint64_t tie_size = 0;
    int64_t optimum = 0;
    double aut_count = 0.0;  // |Aut(G_a cap G_b)|; NaN when not computed
};

struct CellResult {
    uint32_t cell = 0;
    uint32_t n = 0;
    JointEdgeDistribution p;
    double q = 0.0;
    uint64_t trials = 0;
    double successes = 0.0;  // fractional under uniform-tie
    double rate = 0.0;
    double lo = 0.0, hi = 0.0;  // Wilson 95% interval
    double theory_ach = 0.0;    // q threshold 2(ln n + slack)/n
    double theory_conv = 0.0;   // converse level (ln n - slack)/n
};

struct SweepResult {
    SweepConfig config;
    std::vector<CellResult> cells;
    std::vector<TrialRecord> records;  // ordered by (cell, trial)
};

// Wilson 95% score interval (z pinned to 1.959963984540054).
std::pair<double, double> wilson_interval(double successes, uint64_t trials);

// Runs trials independently on per-trial substreams seeded from
// (base_seed, cell, trial); output is byte-stable for any thread count.
// The environment variable ERMATCH_SEED, when set, overrides base_seed.
SweepResult run_trials(const SweepConfig& cfg);

// CSV columns: n,p11,p10,p01,p00,q,trials,successes,rate,lo,hi,theory_ach,theory_conv
std::string emit_csv(const SweepResult& result);
// JSON form round-trips losslessly through parse_result_json.
std::string emit_json(const SweepResult& result);
SweepResult parse_result_json(const std::string& text);

}  // namespace ermatch
