#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orgsim/dynamics.hpp"
#include "orgsim/ecosystem.hpp"
#include "orgsim/params.hpp"

#include <json.hpp>

namespace orgsim {

struct SweepSpec {
    std::string param;            // a ModelParams field name
    std::vector<double> values;
};

struct SweepPoint {
    std::vector<std::pair<std::string, double>> assignments;
    // Canonical "name=value;..." string; "default" when nothing is swept.
    // Also the sweep component of the replicate seed hash.
    std::string key() const;
};

struct ExperimentConfig {
    std::string generator = "mixed";  // er | ba | mixed (even/odd replicates)
    int n_orgs = 100;
    long long n_links = 197;
    int ba_attach_per_node = 2;
    int ba_seed_size = 3;
    int n_profiles = 3;
    std::vector<std::string> profile_names = {"red", "blue", "green"};
    double staffing_sd = 70.0;
    double unemployment_rate = 0.03;
    int replicates = 25;
    int steps = 500;
    std::uint64_t base_seed = 42;
    int measure_every = 0;  // 0: measure the final state only
    ModelParams model;
    std::vector<SweepSpec> sweep;
};

struct SummaryStats {
    double mean = 0.0;
    double median = 0.0;
    double max = 0.0;
};

// One replicate's dependent variables, measured on its final state.
struct MetricsRecord {
    double clustering = 0.0;
    double avg_path_length = 0.0;  // 0 when the graph has no edges
    SummaryStats employees;
    SummaryStats value;
    std::map<int, int> employee_hist;  // per-org headcount -> organizations
    std::map<int, int> value_hist;     // floor(org value) -> organizations
    long long unemployed = 0;
    std::uint64_t seed = 0;
    std::string generator;  // "er" or "ba"
};

struct AggregateScalars {
    double clustering = 0.0;
    double apl = 0.0;
    double emp_mean = 0.0;
    double emp_median = 0.0;
    double emp_max = 0.0;
    double val_mean = 0.0;
    double val_median = 0.0;
    double val_max = 0.0;
    double unemployed = 0.0;
};

struct AggregateRecord {
    std::string sweep_key;
    std::vector<std::pair<std::string, double>> params;
    std::string generator_mode;
    int replicates = 0;
    AggregateScalars metrics;  // geometric means across replicates
    // er/ba split, present under the mixed generator.
    std::vector<std::pair<std::string, AggregateScalars>> by_generator;
};

struct TimedMetrics {
    int replicate = 0;
    long long t = 0;
    MetricsRecord metrics;
};

struct ExperimentResult {
    std::vector<SweepPoint> points;
    std::vector<std::vector<MetricsRecord>> replicates;  // [point][replicate]
    std::vector<AggregateRecord> aggregates;
    std::vector<std::vector<TimedMetrics>> series;  // per point; only when
                                                    // measure_every > 0
    std::vector<std::string> traces;  // per point, replicate 0; only when
                                      // trace capture is on
};

// (prod v_k)^(1/n); any zero value collapses the mean to zero.
double geometric_mean(std::span<const double> values);

MetricsRecord measure(const EcosystemState& s, const ModelParams& p);

// Everything one replicate needs, with the sweep point already applied and
// the generator resolved.
struct ReplicateSpec {
    InitConfig init;
    ModelParams model;
    int steps = 0;
    int measure_every = 0;
    std::uint64_t seed = 0;
    std::string generator;  // "er" or "ba"
};

ReplicateSpec make_replicate_spec(const ExperimentConfig& cfg,
                                  const SweepPoint& point,
                                  int replicate_index);

MetricsRecord run_replicate(const ReplicateSpec& spec,
                            std::vector<TimedMetrics>* series = nullptr,
                            int replicate_index = 0,
                            std::ostream* trace = nullptr);
MetricsRecord run_replicate(const ExperimentConfig& cfg,
                            const SweepPoint& point, int replicate_index);

// Cartesian product of the sweep grids, first parameter outermost.
std::vector<SweepPoint> expand_sweep(const ExperimentConfig& cfg);

struct RunOptions {
    int max_threads = 0;  // 0: OpenMP default
    bool capture_trace = false;
};

// Replicates run in parallel; every result is keyed by (point, replicate
// index), so the output is bit-identical at any thread count.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const RunOptions& opts = {});

void write_replicates_csv(const ExperimentResult& res, std::ostream& out);
nlohmann::json aggregates_json(const ExperimentResult& res);
void write_histograms_csv(const ExperimentResult& res, std::size_t point_index,
                          std::ostream& out);
void write_timeseries_csv(const ExperimentResult& res, std::ostream& out);

// Fixed-format double for CSV/keys: deterministic and locale-independent.
std::string format_double(double v);

}  // namespace orgsim
