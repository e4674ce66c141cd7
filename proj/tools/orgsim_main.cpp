// Batch entry point: parse a JSON config, run the experiment sweep, write
// CSV/JSON outputs atomically.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orgsim/atomic_io.hpp"
#include "orgsim/config.hpp"
#include "orgsim/experiment.hpp"

namespace fs = std::filesystem;

namespace {

int env_thread_cap()
{
    const char* raw = std::getenv("ORGSIM_THREADS");
    if (!raw || !*raw) {
        return 0;
    }
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (!end || *end != '\0' || v < 1) {
        throw std::runtime_error(
            "ORGSIM_THREADS must be a positive integer, got '" +
            std::string(raw) + "'");
    }
    return static_cast<int>(v);
}

std::string point_suffix(std::size_t index)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%03zu", index);
    return buf;
}

int run(const orgsim::ExperimentConfig& cfg, const fs::path& out_dir,
        bool trace)
{
    orgsim::RunOptions opts;
    opts.max_threads = env_thread_cap();
    opts.capture_trace = trace;
    const orgsim::ExperimentResult result = orgsim::run_experiment(cfg, opts);

    // Render everything first; only then touch the filesystem.
    std::ostringstream replicates;
    orgsim::write_replicates_csv(result, replicates);
    const std::string aggregates =
        orgsim::aggregates_json(result).dump(2) + "\n";
    std::vector<std::string> histograms;
    for (std::size_t pi = 0; pi < result.points.size(); ++pi) {
        std::ostringstream h;
        orgsim::write_histograms_csv(result, pi, h);
        histograms.push_back(h.str());
    }
    std::string timeseries;
    if (cfg.measure_every > 0) {
        std::ostringstream ts;
        orgsim::write_timeseries_csv(result, ts);
        timeseries = ts.str();
    }

    fs::create_directories(out_dir);
    orgsim::write_file_atomic(out_dir / "replicates.csv", replicates.str());
    orgsim::write_file_atomic(out_dir / "aggregates.json", aggregates);
    for (std::size_t pi = 0; pi < histograms.size(); ++pi) {
        orgsim::write_file_atomic(
            out_dir / ("histograms_" + point_suffix(pi) + ".csv"),
            histograms[pi]);
    }
    if (cfg.measure_every > 0) {
        orgsim::write_file_atomic(out_dir / "timeseries.csv", timeseries);
    }
    if (trace) {
        for (std::size_t pi = 0; pi < result.traces.size(); ++pi) {
            orgsim::write_file_atomic(
                out_dir / ("trace_" + point_suffix(pi) + ".csv"),
                result.traces[pi]);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"orgsim - simulator of a networked ecosystem of organizations"};

    std::string config_path;
    std::string out_dir;
    std::string mode = "run";
    std::vector<std::string> overrides;
    bool trace = false;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--out", out_dir, "output directory (run mode)");
    app.add_option("--set", overrides,
                   "key=value configuration override, repeatable");
    app.add_option("--mode", mode, "run | validate-config | print-defaults")
        ->check(CLI::IsMember({"run", "validate-config", "print-defaults"}));
    app.add_flag("--trace", trace,
                 "write a per-step trace for replicate 0 of each sweep point");

    CLI11_PARSE(app, argc, argv);

    try {
        if (mode == "print-defaults") {
            std::cout << orgsim::to_json(orgsim::ExperimentConfig{}).dump(2)
                      << "\n";
            return 0;
        }
        const orgsim::ExperimentConfig cfg =
            orgsim::parse_config(config_path, overrides);
        if (mode == "validate-config") {
            std::cout << "configuration OK\n";
            return 0;
        }
        if (out_dir.empty()) {
            throw std::runtime_error("run mode needs --out <directory>");
        }
        return run(cfg, out_dir, trace);
    } catch (const std::exception& e) {
        std::cerr << "orgsim: error: " << e.what() << "\n";
        return 1;
    }
}
