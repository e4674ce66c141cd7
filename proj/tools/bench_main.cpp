// Compares the OpenMP metric kernels against the serial references and times
// parallel replicate execution against a single thread.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "orgsim/experiment.hpp"
#include "orgsim/generators.hpp"
#include "orgsim/metrics.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start)
{
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

template <typename F>
double timed(F&& f, double& out)
{
    const auto start = clock_type::now();
    out = f();
    return seconds_since(start);
}

void bench_metrics(const char* label, const orgsim::Graph& g)
{
    double serial_cc = 0.0;
    double parallel_cc = 0.0;
    const double t_serial_cc =
        timed([&] { return orgsim::serial::clustering_coefficient(g); },
              serial_cc);
    const double t_parallel_cc =
        timed([&] { return orgsim::clustering_coefficient(g); }, parallel_cc);

    double serial_apl = 0.0;
    double parallel_apl = 0.0;
    const double t_serial_apl =
        timed([&] { return orgsim::serial::average_path_length(g); },
              serial_apl);
    const double t_parallel_apl =
        timed([&] { return orgsim::average_path_length(g); }, parallel_apl);

    const bool cc_ok = std::abs(serial_cc - parallel_cc) < 1e-12;
    const bool apl_ok = std::abs(serial_apl - parallel_apl) < 1e-12;
    std::printf("%-18s clustering  serial %8.3fs  omp %8.3fs  x%5.2f  %s\n",
                label, t_serial_cc, t_parallel_cc,
                t_serial_cc / std::max(t_parallel_cc, 1e-9),
                cc_ok ? "match" : "MISMATCH");
    std::printf("%-18s path length serial %8.3fs  omp %8.3fs  x%5.2f  %s\n",
                label, t_serial_apl, t_parallel_apl,
                t_serial_apl / std::max(t_parallel_apl, 1e-9),
                apl_ok ? "match" : "MISMATCH");
}

void bench_replicates(int replicates, int steps)
{
    orgsim::ExperimentConfig cfg;
    cfg.replicates = replicates;
    cfg.steps = steps;

    orgsim::RunOptions serial_opts;
    serial_opts.max_threads = 1;
    orgsim::RunOptions parallel_opts;
    parallel_opts.max_threads = 0;

    const auto t0 = clock_type::now();
    const auto serial = orgsim::run_experiment(cfg, serial_opts);
    const double t_serial = seconds_since(t0);

    const auto t1 = clock_type::now();
    const auto parallel = orgsim::run_experiment(cfg, parallel_opts);
    const double t_parallel = seconds_since(t1);

    const bool identical =
        orgsim::aggregates_json(serial) == orgsim::aggregates_json(parallel);
    std::printf(
        "%d replicates x %d steps   1 thread %8.3fs  %d threads %8.3fs  "
        "x%5.2f  %s\n",
        replicates, steps, t_serial, omp_get_max_threads(), t_parallel,
        t_serial / std::max(t_parallel, 1e-9),
        identical ? "identical results" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"orgsim benchmark: serial reference vs OpenMP kernels"};
    int nodes = 3000;
    long long edges = 30000;
    int replicates = 8;
    int steps = 200;
    app.add_option("--nodes", nodes, "graph size for the metric benchmarks");
    app.add_option("--edges", edges, "edge count for the random graph");
    app.add_option("--replicates", replicates,
                   "replicates for the experiment benchmark");
    app.add_option("--steps", steps, "steps per replicate");
    CLI11_PARSE(app, argc, argv);

    std::printf("OpenMP max threads: %d\n\n", omp_get_max_threads());

    orgsim::Rng rng(20240901);
    const orgsim::Graph er = orgsim::erdos_renyi(nodes, edges, rng);
    bench_metrics("random graph", er);
    const int attach = static_cast<int>(
        std::max<long long>(1, edges / std::max(nodes, 1)));
    const orgsim::Graph ba =
        orgsim::barabasi_albert(nodes, attach, attach + 1, rng);
    bench_metrics("preferential", ba);
    std::printf("\n");
    bench_replicates(replicates, steps);
    return 0;
}
