#include "ermatch/sweep.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"

#include "ermatch/bounds.hpp"
#include "ermatch/structure.hpp"

namespace ermatch {

namespace {

std::string format_double(double v) {
    char buf[32];
    snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

JointEdgeDistribution joint_from_json(const nlohmann::json& j, bool renormalize = false) {
    JointEdgeDistribution p{j.at("p11").get<double>(), j.at("p10").get<double>(),
                            j.at("p01").get<double>(), j.at("p00").get<double>()};
    if (renormalize) p = p.renormalized();
    p.validate();
    return p;
}

nlohmann::json joint_to_json(const JointEdgeDistribution& p) {
    return {{"p11", p.p11}, {"p10", p.p10}, {"p01", p.p01}, {"p00", p.p00}};
}

Channel channel_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        throw ConfigError("channel matrix must be a 2x2 array");
    return {{{j[0][0].get<double>(), j[0][1].get<double>()},
             {j[1][0].get<double>(), j[1][1].get<double>()}}};
}

DistSpec dist_from_json(const nlohmann::json& j, bool renormalize_joint = false) {
    if (!j.is_object()) throw ConfigError("distribution spec must be a JSON object");
    if (j.contains("joint")) return {joint_from_json(j.at("joint"), renormalize_joint)};
    if (j.contains("subsample")) {
        const auto& s = j.at("subsample");
        SubsampleParams sp{s.at("r").get<double>(), s.at("s_a").get<double>(),
                           s.at("s_b").get<double>()};
        sp.validate();
        return {sp};
    }
    if (j.contains("channel")) {
        const auto& c = j.at("channel");
        ChannelSpec ch{c.at("r").get<double>(), channel_from_json(c.at("A")),
                       channel_from_json(c.at("B"))};
        return {ch};
    }
    // bare joint object is accepted as shorthand
    if (j.contains("p11")) return {joint_from_json(j, renormalize_joint)};
    throw ConfigError("distribution spec needs one of: joint, subsample, channel");
}

nlohmann::json dist_to_json(const DistSpec& d) {
    nlohmann::json j;
    if (const auto* p = std::get_if<JointEdgeDistribution>(&d.form)) {
        j["joint"] = joint_to_json(*p);
    } else if (const auto* s = std::get_if<SubsampleParams>(&d.form)) {
        j["subsample"] = {{"r", s->r}, {"s_a", s->s_a}, {"s_b", s->s_b}};
    } else {
        const auto& c = std::get<ChannelSpec>(d.form);
        j["channel"] = {{"r", c.r},
                        {"A", {{c.a[0][0], c.a[0][1]}, {c.a[1][0], c.a[1][1]}}},
                        {"B", {{c.b[0][0], c.b[0][1]}, {c.b[1][0], c.b[1][1]}}}};
    }
    return j;
}

}  // namespace

JointEdgeDistribution DistSpec::to_joint() const {
    if (const auto* p = std::get_if<JointEdgeDistribution>(&form)) return *p;
    if (const auto* s = std::get_if<SubsampleParams>(&form)) return subsample_to_joint(*s);
    const auto& c = std::get<ChannelSpec>(form);
    return channel_to_joint(c.r, c.a, c.b);
}

DistSpec parse_dist_spec(const std::string& json_text, bool renormalize_joint) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad distribution JSON: ") + e.what());
    }
    try {
        return dist_from_json(j, renormalize_joint);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad distribution value: ") + e.what());
    }
}

void SweepConfig::validate() const {
    if (n_list.empty()) throw ConfigError("sweep config: empty n list");
    if (dists.empty()) throw ConfigError("sweep config: no distributions");
    if (trials < 1) throw ConfigError("sweep config: trials must be >= 1");
    if (!(slack >= 0.0)) throw ConfigError("sweep config: slack must be >= 0");
    for (uint32_t n : n_list) {
        if (n < 2) throw ConfigError("sweep config: n must be >= 2");
        if (n > matcher_limit)
            throw ConfigError("sweep config: n = " + std::to_string(n) +
                              " exceeds matcher limit " + std::to_string(matcher_limit));
    }
    for (const DistSpec& d : dists) d.to_joint().validate();
}

SweepConfig SweepConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad sweep config JSON: ") + e.what());
    }
    SweepConfig cfg;
    try {
        if (j.contains("n")) {
            if (j["n"].is_array())
                cfg.n_list = j["n"].get<std::vector<uint32_t>>();
            else
                cfg.n_list = {j["n"].get<uint32_t>()};
        }
        if (j.contains("dists"))
            for (const auto& d : j["dists"]) cfg.dists.push_back(dist_from_json(d));
        if (j.contains("dist")) cfg.dists.push_back(dist_from_json(j["dist"]));
        if (j.contains("trials")) cfg.trials = j["trials"].get<uint64_t>();
        if (j.contains("base_seed")) cfg.base_seed = j["base_seed"].get<uint64_t>();
        if (j.contains("slack")) cfg.slack = j["slack"].get<double>();
        if (j.contains("matcher_limit")) cfg.matcher_limit = j["matcher_limit"].get<uint32_t>();
        if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
        if (j.contains("compute_aut")) cfg.compute_aut = j["compute_aut"].get<bool>();
        if (j.contains("success")) {
            const std::string s = j["success"].get<std::string>();
            if (s == "strict-tie")
                cfg.convention = SuccessConvention::strict_tie;
            else if (s == "uniform-tie")
                cfg.convention = SuccessConvention::uniform_tie;
            else
                throw ConfigError("sweep config: success must be strict-tie or uniform-tie");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad sweep config value: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

std::string SweepConfig::to_json() const {
    nlohmann::json j;
    j["n"] = n_list;
    nlohmann::json dist_arr = nlohmann::json::array();
    for (const DistSpec& d : dists) dist_arr.push_back(dist_to_json(d));
    j["dists"] = dist_arr;
    j["trials"] = trials;
    j["base_seed"] = base_seed;
    j["slack"] = slack;
    j["matcher_limit"] = matcher_limit;
    j["success"] = convention == SuccessConvention::strict_tie ? "strict-tie" : "uniform-tie";
    j["threads"] = threads;
    j["compute_aut"] = compute_aut;
    return j.dump();
}

std::pair<double, double> wilson_interval(double successes, uint64_t trials) {
    constexpr double z = 1.959963984540054;
    const double nn = static_cast<double>(trials);
    const double phat = successes / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (phat + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

SweepResult run_trials(const SweepConfig& cfg_in) {
    SweepConfig cfg = cfg_in;
    if (const char* env = std::getenv("ERMATCH_SEED")) {
        char* end = nullptr;
        const unsigned long long v = strtoull(env, &end, 10);
        if (end == env || *end != '\0') throw ConfigError("ERMATCH_SEED must be an integer");
        cfg.base_seed = v;
    }
    cfg.validate();

    struct Cell {
        uint32_t n;
        JointEdgeDistribution p;
    };
    std::vector<Cell> cells;
    for (uint32_t n : cfg.n_list)
        for (const DistSpec& d : cfg.dists) cells.push_back({n, d.to_joint()});

    SweepResult result;
    result.config = cfg;
    result.records.resize(cells.size() * cfg.trials);

#ifdef _OPENMP
    const int prev_threads = omp_get_max_threads();
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif

    const int64_t total = static_cast<int64_t>(cells.size() * cfg.trials);
#pragma omp parallel for schedule(dynamic, 16)
    for (int64_t idx = 0; idx < total; ++idx) {
        const auto cell_idx = static_cast<uint32_t>(idx / static_cast<int64_t>(cfg.trials));
        const auto trial = static_cast<uint64_t>(idx % static_cast<int64_t>(cfg.trials));
        const Cell& cell = cells[cell_idx];

        Rng rng(cfg.base_seed, cell_idx, trial);
        const auto [ga, gb] = sample_pair(cell.n, cell.p, rng);
        const MapResult map = map_estimate(ga, gb, cell.p, cfg.matcher_limit);

        TrialRecord rec;
        rec.cell = cell_idx;
        rec.trial = trial;
        rec.tie_size = map.minimizers.size();
        rec.optimum = map.optimum_value;
        const bool has_identity = map.minimizers.contains_identity();
        rec.success_strict = (map.unique && has_identity) ? 1.0 : 0.0;
        rec.success_uniform = has_identity ? 1.0 / static_cast<double>(rec.tie_size) : 0.0;
        rec.aut_count = std::numeric_limits<double>::quiet_NaN();
        if (cfg.compute_aut) {
            const auto rep = automorphisms(intersect(ga, gb), cfg.matcher_limit);
            if (rep.count) rec.aut_count = static_cast<double>(*rep.count);
        }
        result.records[idx] = rec;
    }

#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(prev_threads);
#endif

    // Deterministic fold over records, which are already ordered by (cell, trial).
    result.cells.reserve(cells.size());
    for (uint32_t c = 0; c < cells.size(); ++c) {
        CellResult cr;
        cr.cell = c;
        cr.n = cells[c].n;
        cr.p = cells[c].p;
        cr.q = derive_params(cells[c].p).q;
        cr.trials = cfg.trials;
        double successes = 0.0;
        for (uint64_t t = 0; t < cfg.trials; ++t) {
            const TrialRecord& rec = result.records[c * cfg.trials + t];
            successes += cfg.convention == SuccessConvention::strict_tie ? rec.success_strict
                                                                         : rec.success_uniform;
        }
        cr.successes = successes;
        cr.rate = successes / static_cast<double>(cfg.trials);
        std::tie(cr.lo, cr.hi) = wilson_interval(successes, cfg.trials);
        cr.theory_ach = achievability_q_threshold(cells[c].n, cfg.slack);
        cr.theory_conv =
            (std::log(static_cast<double>(cells[c].n)) - cfg.slack) / cells[c].n;
        result.cells.push_back(cr);
    }
    return result;
}

std::string emit_csv(const SweepResult& result) {
    std::string csv = "n,p11,p10,p01,p00,q,trials,successes,rate,lo,hi,theory_ach,theory_conv\n";
    for (const CellResult& c : result.cells) {
        csv += std::to_string(c.n);
        for (double v : {c.p.p11, c.p.p10, c.p.p01, c.p.p00, c.q}) {
            csv += ',';
            csv += format_double(v);
        }
        csv += ',';
        csv += std::to_string(c.trials);
        for (double v : {c.successes, c.rate, c.lo, c.hi, c.theory_ach, c.theory_conv}) {
            csv += ',';
            csv += format_double(v);
        }
        csv += '\n';
    }
    return csv;
}

std::string emit_json(const SweepResult& result) {
    nlohmann::json j;
    j["config"] = nlohmann::json::parse(result.config.to_json());
    nlohmann::json cells = nlohmann::json::array();
    for (const CellResult& c : result.cells) {
        nlohmann::json jc;
        jc["cell"] = c.cell;
        jc["n"] = c.n;
        jc["p"] = joint_to_json(c.p);
        jc["q"] = c.q;
        jc["trials"] = c.trials;
        jc["successes"] = c.successes;
        jc["rate"] = c.rate;
        jc["lo"] = c.lo;
        jc["hi"] = c.hi;
        jc["theory_ach"] = c.theory_ach;
        jc["theory_conv"] = c.theory_conv;
        cells.push_back(jc);
    }
    j["cells"] = cells;
    return j.dump(2);
}

SweepResult parse_result_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad sweep result JSON: ") + e.what());
    }
    SweepResult result;
    result.config = SweepConfig::from_json(j.at("config").dump());
    for (const auto& jc : j.at("cells")) {
        CellResult c;
        c.cell = jc.at("cell").get<uint32_t>();
        c.n = jc.at("n").get<uint32_t>();
        c.p = joint_from_json(jc.at("p"));
        c.q = jc.at("q").get<double>();
        c.trials = jc.at("trials").get<uint64_t>();
        c.successes = jc.at("successes").get<double>();
        c.rate = jc.at("rate").get<double>();
        c.lo = jc.at("lo").get<double>();
        c.hi = jc.at("hi").get<double>();
        c.theory_ach = jc.at("theory_ach").get<double>();
        c.theory_conv = jc.at("theory_conv").get<double>();
        result.cells.push_back(c);
    }
    return result;
}

}  // namespace ermatch
