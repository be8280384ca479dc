// Command-line surface: sampling, exact matching, threshold reports,
// trade-off curves, converse diagnostics, Monte Carlo sweeps, and the
// identity verification suite.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ermatch/bounds.hpp"
#include "ermatch/matching.hpp"
#include "ermatch/model.hpp"
#include "ermatch/structure.hpp"
#include "ermatch/sweep.hpp"
#include "ermatch/verify.hpp"

namespace {

using namespace ermatch;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << content;
}

// --dist accepts inline JSON (starts with '{') or a path to a JSON file.
DistSpec load_dist(const std::string& arg, bool renormalize) {
    const std::string text = arg.find('{') == 0 ? arg : slurp(arg);
    return parse_dist_spec(text, renormalize);
}

Graph load_graph(const std::string& path) { return Graph::from_text(slurp(path)); }

std::vector<double> parse_grid(const std::string& spec) {
    double lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
        throw ConfigError("grid must be min:max:step with positive step");
    std::vector<double> out;
    for (double s = lo; s <= hi + 1e-12; s += step) out.push_back(std::min(s, hi));
    return out;
}

const char* sense_name(ObjectiveSense s) {
    switch (s) {
        case ObjectiveSense::minimize: return "minimize";
        case ObjectiveSense::maximize: return "maximize";
        default: return "flat";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"correlated Erdos-Renyi graph matching toolkit"};
    app.require_subcommand(1);

    // sample
    auto* sample = app.add_subcommand("sample", "draw a correlated graph pair");
    uint32_t sample_n = 0;
    std::string sample_dist, out_a, out_b;
    uint64_t sample_seed = 0;
    bool renormalize = false;
    sample->add_option("--n", sample_n, "number of vertices")->required();
    sample->add_option("--dist", sample_dist, "distribution JSON (inline or file)")->required();
    sample->add_option("--seed", sample_seed, "rng seed");
    sample->add_option("--out-a", out_a, "output file for G_a")->required();
    sample->add_option("--out-b", out_b, "output file for G_b")->required();
    sample->add_flag("--renormalize", renormalize, "renormalize a joint distribution");

    // match
    auto* match = app.add_subcommand("match", "exact MAP matching of two graphs");
    std::string match_ga, match_gb, match_dist;
    uint32_t match_limit = kDefaultMapLimit;
    match->add_option("--ga", match_ga, "graph file for G_a (the shuffled graph)")->required();
    match->add_option("--gb", match_gb, "graph file for G_b")->required();
    match->add_option("--dist", match_dist, "distribution JSON (inline or file)")->required();
    match->add_option("--limit", match_limit, "exhaustive search capacity");
    match->add_flag("--renormalize", renormalize, "renormalize a joint distribution");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo success-rate sweep");
    std::string sweep_config, sweep_format = "csv", sweep_out;
    std::vector<uint32_t> sweep_n;
    std::vector<std::string> sweep_dists;
    uint64_t sweep_trials = 0, sweep_seed = 0;
    double sweep_slack = 0.0;
    uint32_t sweep_limit = 0;
    std::string sweep_success;
    int sweep_threads = -1;
    bool sweep_aut = false;
    sweep->add_option("--config", sweep_config, "sweep config JSON file");
    sweep->add_option("--n", sweep_n, "vertex counts (overrides config)");
    sweep->add_option("--dist", sweep_dists, "distribution JSON, repeatable (overrides config)");
    auto* opt_trials = sweep->add_option("--trials", sweep_trials, "trials per cell");
    auto* opt_seed = sweep->add_option("--seed", sweep_seed, "base seed");
    auto* opt_slack = sweep->add_option("--slack", sweep_slack, "threshold slack");
    auto* opt_limit = sweep->add_option("--limit", sweep_limit, "matcher limit");
    auto* opt_success =
        sweep->add_option("--success", sweep_success, "strict-tie or uniform-tie");
    auto* opt_threads = sweep->add_option("--threads", sweep_threads, "worker threads");
    auto* opt_aut = sweep->add_flag("--compute-aut", sweep_aut,
                                    "record |Aut(G_a cap G_b)| per trial");
    sweep->add_option("--format", sweep_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", sweep_out, "output path (default stdout)");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "threshold report for a distribution");
    std::string bounds_dist;
    uint32_t bounds_n = 0;
    double bounds_slack = 0.0;
    bounds->add_option("--dist", bounds_dist, "distribution JSON (inline or file)")->required();
    bounds->add_option("--n", bounds_n, "number of vertices")->required();
    bounds->add_option("--slack", bounds_slack, "stand-in for the vanishing terms");
    bounds->add_flag("--renormalize", renormalize, "renormalize a joint distribution");

    // curves
    auto* curves = app.add_subcommand("curves", "correlation/density trade-off curves");
    std::string curves_grid = "0.05:1:0.05", curves_out;
    std::vector<double> curves_s;
    curves->add_option("--grid", curves_grid, "s grid as min:max:step");
    curves->add_option("--s", curves_s, "explicit s values (overrides --grid)");
    curves->add_option("--out", curves_out, "output path (default stdout)");

    // structure
    auto* structure = app.add_subcommand("structure", "converse diagnostics for a graph pair");
    std::string struct_ga, struct_gb;
    uint32_t struct_limit = kDefaultAutLimit;
    structure->add_option("--ga", struct_ga, "graph file for G_a")->required();
    structure->add_option("--gb", struct_gb, "graph file for G_b")->required();
    structure->add_option("--limit", struct_limit, "exact automorphism enumeration capacity");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the identity verification suite");
    std::string verify_filter;
    verify_cmd->add_option("--filter", verify_filter, "run only checks whose key contains this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*sample) {
        const JointEdgeDistribution p = load_dist(sample_dist, renormalize).to_joint();
        auto [ga, gb] = sample_pair(sample_n, p, sample_seed);
        spill(out_a, ga.to_text());
        spill(out_b, gb.to_text());
        std::cout << "wrote " << out_a << " (" << ga.edge_count() << " edges), " << out_b
                  << " (" << gb.edge_count() << " edges)\n";
        return 0;
    }

    if (*match) {
        const JointEdgeDistribution p = load_dist(match_dist, renormalize).to_joint();
        const Graph ga = load_graph(match_ga);
        const Graph gb = load_graph(match_gb);
        const MapResult res = map_estimate(ga, gb, p, match_limit);
        const bool has_id = res.minimizers.contains_identity();
        std::cout << "sense: " << sense_name(res.sense) << "\n"
                  << "optimum_delta: " << res.optimum_value << "\n"
                  << "tie_set_size: " << res.minimizers.size() << "\n"
                  << "identity_in_ties: " << (has_id ? "true" : "false") << "\n"
                  << "identity_unique: " << (res.unique && has_id ? "true" : "false") << "\n"
                  << "degenerate: " << (res.degenerate ? "true" : "false") << "\n";
        return 0;
    }

    if (*sweep) {
        SweepConfig cfg;
        if (!sweep_config.empty()) cfg = SweepConfig::from_json(slurp(sweep_config));
        if (!sweep_n.empty()) cfg.n_list = sweep_n;
        if (!sweep_dists.empty()) {
            cfg.dists.clear();
            for (const auto& d : sweep_dists) cfg.dists.push_back(load_dist(d, false));
        }
        if (opt_trials->count()) cfg.trials = sweep_trials;
        if (opt_seed->count()) cfg.base_seed = sweep_seed;
        if (opt_slack->count()) cfg.slack = sweep_slack;
        if (opt_limit->count()) cfg.matcher_limit = sweep_limit;
        if (opt_threads->count()) cfg.threads = sweep_threads;
        if (opt_aut->count()) cfg.compute_aut = sweep_aut;
        if (opt_success->count()) {
            if (sweep_success == "strict-tie")
                cfg.convention = SuccessConvention::strict_tie;
            else if (sweep_success == "uniform-tie")
                cfg.convention = SuccessConvention::uniform_tie;
            else
                throw ConfigError("--success must be strict-tie or uniform-tie");
        }
        const SweepResult result = run_trials(cfg);
        const std::string payload =
            sweep_format == "csv" ? emit_csv(result) : emit_json(result);
        if (sweep_out.empty())
            std::cout << payload;
        else
            spill(sweep_out, payload);
        return 0;
    }

    if (*bounds) {
        const JointEdgeDistribution p = load_dist(bounds_dist, renormalize).to_joint();
        const ThresholdReport report = threshold_report(p, bounds_n, bounds_slack);
        std::cout << report.to_json(p) << "\n";
        return 0;
    }

    if (*curves) {
        const std::vector<double> grid =
            curves_s.empty() ? parse_grid(curves_grid) : curves_s;
        const std::string csv = curves_csv(tradeoff_curves(grid));
        if (curves_out.empty())
            std::cout << csv;
        else
            spill(curves_out, csv);
        return 0;
    }

    if (*structure) {
        const Graph ga = load_graph(struct_ga);
        const Graph gb = load_graph(struct_gb);
        const Graph gi = intersect(ga, gb);
        const AutomorphismReport rep = automorphisms(gi, struct_limit);
        std::cout << "n: " << ga.n() << "\n"
                  << "intersection_edges: " << gi.edge_count() << "\n";
        if (rep.count)
            std::cout << "aut_count: " << *rep.count << "\n";
        else
            std::cout << "aut_count: unavailable (n exceeds limit " << struct_limit
                      << "; lower bound below)\n";
        std::cout << "isolated: " << rep.isolated << "\n"
                  << "factorial_lower_bound: " << rep.factorial_lower_bound << "\n"
                  << "blocking_pairs: " << blocking_pairs(ga, gb).size() << "\n";
        return 0;
    }

    if (*verify_cmd) {
        const auto results = ermatch::verify::run_checks(false, &std::cout, verify_filter);
        size_t failures = 0;
        for (const auto& r : results)
            if (!r.pass) ++failures;
        if (results.empty()) throw ConfigError("no checks match filter: " + verify_filter);
        if (failures) {
            std::cout << failures << " check(s) failed\n";
            return 1;
        }
        std::cout << "all " << results.size() << " checks passed\n";
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ermatch::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ermatch::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
