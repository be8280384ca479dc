// Timing comparison of the OpenMP-partitioned kernels against their serial
// references: the exhaustive MAP scan and the Monte Carlo trial runner.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ermatch/matching.hpp"
#include "ermatch/model.hpp"
#include "ermatch/sweep.hpp"

using namespace ermatch;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void bench_map_scan(uint32_t n, int instances) {
    const JointEdgeDistribution p{0.3, 0.1, 0.1, 0.5};
    std::vector<std::pair<Graph, Graph>> inputs;
    for (int i = 0; i < instances; ++i) inputs.push_back(sample_pair(n, p, 0xbe4c4 + i));

    auto t0 = clock_type::now();
    int64_t sink_ref = 0;
    for (const auto& [ga, gb] : inputs)
        sink_ref += map_estimate_reference(ga, gb, p, n).optimum_value;
    const double t_ref = seconds_since(t0);

    t0 = clock_type::now();
    int64_t sink_par = 0;
    for (const auto& [ga, gb] : inputs) sink_par += map_estimate(ga, gb, p, n).optimum_value;
    const double t_par = seconds_since(t0);

    printf("map scan        n=%u x%d     reference %.3fs   partitioned %.3fs   speedup %.2fx   identical %s\n",
           n, instances, t_ref, t_par, t_ref / t_par, sink_ref == sink_par ? "yes" : "NO");
}

void bench_sweep(uint32_t n, uint64_t trials) {
    SweepConfig cfg;
    cfg.n_list = {n};
    cfg.dists = {DistSpec{JointEdgeDistribution{0.3, 0.1, 0.1, 0.5}}};
    cfg.trials = trials;
    cfg.base_seed = 7;

    cfg.threads = 1;
    auto t0 = clock_type::now();
    const std::string csv1 = emit_csv(run_trials(cfg));
    const double t_serial = seconds_since(t0);

    cfg.threads = max_threads();
    t0 = clock_type::now();
    const std::string csv2 = emit_csv(run_trials(cfg));
    const double t_par = seconds_since(t0);

    printf("sweep           n=%u x%llu  1 thread  %.3fs   %d threads   %.3fs   speedup %.2fx   identical %s\n",
           n, static_cast<unsigned long long>(trials), t_serial, max_threads(), t_par,
           t_serial / t_par, csv1 == csv2 ? "yes" : "NO");
}

}  // namespace

int main() {
    printf("threads available: %d\n", max_threads());
    bench_map_scan(8, 40);
    bench_map_scan(9, 8);
    bench_sweep(7, 400);
    bench_sweep(8, 120);
    return 0;
}
