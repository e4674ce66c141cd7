#include "orgsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "orgsim/metrics.hpp"

namespace orgsim {

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string SweepPoint::key() const
{
    if (assignments.empty()) {
        return "default";
    }
    std::string out;
    for (const auto& [name, value] : assignments) {
        if (!out.empty()) {
            out += ';';
        }
        out += name;
        out += '=';
        out += format_double(value);
    }
    return out;
}

double geometric_mean(std::span<const double> values)
{
    if (values.empty()) {
        throw std::invalid_argument("geometric_mean: empty input");
    }
    double log_sum = 0.0;
    for (double v : values) {
        if (v < 0.0) {
            throw std::domain_error("geometric_mean: negative value");
        }
        if (v == 0.0) {
            return 0.0;
        }
        log_sum += std::log(v);
    }
    return std::exp(log_sum / static_cast<double>(values.size()));
}

namespace {

SummaryStats summarize(std::vector<double> values)
{
    SummaryStats s;
    if (values.empty()) {
        return s;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(values.size());
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    s.median = (n % 2 == 1) ? values[n / 2]
                            : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    s.max = values.back();
    return s;
}

AggregateScalars aggregate_scalars(std::span<const MetricsRecord> records)
{
    auto geo = [&](auto field) {
        std::vector<double> xs;
        xs.reserve(records.size());
        for (const auto& r : records) {
            xs.push_back(field(r));
        }
        return geometric_mean(xs);
    };
    AggregateScalars a;
    a.clustering = geo([](const MetricsRecord& r) { return r.clustering; });
    a.apl = geo([](const MetricsRecord& r) { return r.avg_path_length; });
    a.emp_mean = geo([](const MetricsRecord& r) { return r.employees.mean; });
    a.emp_median = geo([](const MetricsRecord& r) { return r.employees.median; });
    a.emp_max = geo([](const MetricsRecord& r) { return r.employees.max; });
    a.val_mean = geo([](const MetricsRecord& r) { return r.value.mean; });
    a.val_median = geo([](const MetricsRecord& r) { return r.value.median; });
    a.val_max = geo([](const MetricsRecord& r) { return r.value.max; });
    a.unemployed = geo([](const MetricsRecord& r) {
        return static_cast<double>(r.unemployed);
    });
    return a;
}

}  // namespace

MetricsRecord measure(const EcosystemState& s, const ModelParams& p)
{
    MetricsRecord r;
    r.clustering = clustering_coefficient(s.graph);
    r.avg_path_length =
        s.graph.edge_count() > 0 ? average_path_length(s.graph) : 0.0;

    const int n = s.employment.n_orgs();
    std::vector<double> employees;
    std::vector<double> values;
    employees.reserve(static_cast<std::size_t>(n));
    values.reserve(static_cast<std::size_t>(n));
    for (NodeId i = 1; i <= n; ++i) {
        const long long headcount = s.employment.row_total(i);
        const double value = organization_value(s, p, i, s.clock);
        employees.push_back(static_cast<double>(headcount));
        values.push_back(value);
        ++r.employee_hist[static_cast<int>(headcount)];
        ++r.value_hist[static_cast<int>(std::floor(value))];
    }
    r.employees = summarize(std::move(employees));
    r.value = summarize(std::move(values));
    r.unemployed = s.employment.row_total(0);
    return r;
}

ReplicateSpec make_replicate_spec(const ExperimentConfig& cfg,
                                  const SweepPoint& point,
                                  int replicate_index)
{
    ReplicateSpec spec;
    spec.model = cfg.model;
    for (const auto& [name, value] : point.assignments) {
        const ModelField* field = find_model_field(name);
        if (!field) {
            throw std::invalid_argument("sweep: unknown model parameter '" +
                                        name + "'");
        }
        field->set(spec.model, value);
    }

    if (cfg.generator == "mixed") {
        spec.generator = replicate_index % 2 == 0 ? "er" : "ba";
    } else if (cfg.generator == "er" || cfg.generator == "ba") {
        spec.generator = cfg.generator;
    } else {
        throw std::invalid_argument("generator: must be 'er', 'ba' or 'mixed'");
    }
    spec.init.generator = spec.generator == "er"
                              ? GeneratorKind::erdos_renyi
                              : GeneratorKind::barabasi_albert;
    spec.init.n_orgs = cfg.n_orgs;
    spec.init.n_links = cfg.n_links;
    spec.init.ba_attach_per_node = cfg.ba_attach_per_node;
    spec.init.ba_seed_size = cfg.ba_seed_size;
    spec.init.n_profiles = cfg.n_profiles;
    spec.init.profile_names = cfg.profile_names;
    spec.init.staffing_sd = cfg.staffing_sd;
    spec.init.unemployment_rate = cfg.unemployment_rate;

    spec.steps = cfg.steps;
    spec.measure_every = cfg.measure_every;
    spec.seed = mix_seed(cfg.base_seed, point.key(),
                         static_cast<std::uint64_t>(replicate_index));
    return spec;
}

MetricsRecord run_replicate(const ReplicateSpec& spec,
                            std::vector<TimedMetrics>* series,
                            int replicate_index, std::ostream* trace)
{
    Rng rng(spec.seed);
    EcosystemState state = init_ecosystem(spec.init, rng);
    if (trace) {
        write_trace_header(*trace);
    }
    for (int t = 1; t <= spec.steps; ++t) {
        const StepReport report = step(state, spec.model, rng);
        if (trace) {
            write_trace_row(*trace, state.clock, report, state);
        }
        if (series && spec.measure_every > 0 && t % spec.measure_every == 0 &&
            t != spec.steps) {
            MetricsRecord m = measure(state, spec.model);
            m.seed = spec.seed;
            m.generator = spec.generator;
            series->push_back({replicate_index, state.clock, std::move(m)});
        }
    }
    MetricsRecord final_metrics = measure(state, spec.model);
    final_metrics.seed = spec.seed;
    final_metrics.generator = spec.generator;
    if (series && spec.measure_every > 0) {
        series->push_back({replicate_index, state.clock, final_metrics});
    }
    return final_metrics;
}

MetricsRecord run_replicate(const ExperimentConfig& cfg,
                            const SweepPoint& point, int replicate_index)
{
    return run_replicate(make_replicate_spec(cfg, point, replicate_index),
                         nullptr, replicate_index, nullptr);
}

std::vector<SweepPoint> expand_sweep(const ExperimentConfig& cfg)
{
    std::vector<SweepPoint> points;
    if (cfg.sweep.empty()) {
        points.emplace_back();
        return points;
    }
    for (const auto& spec : cfg.sweep) {
        if (spec.values.empty()) {
            throw std::invalid_argument("sweep: parameter '" + spec.param +
                                        "' has no values");
        }
    }
    std::vector<std::size_t> index(cfg.sweep.size(), 0);
    while (true) {
        SweepPoint point;
        for (std::size_t k = 0; k < cfg.sweep.size(); ++k) {
            point.assignments.emplace_back(cfg.sweep[k].param,
                                           cfg.sweep[k].values[index[k]]);
        }
        points.push_back(std::move(point));
        // Odometer increment, last parameter fastest.
        std::size_t k = cfg.sweep.size();
        while (k > 0) {
            --k;
            if (++index[k] < cfg.sweep[k].values.size()) {
                break;
            }
            index[k] = 0;
            if (k == 0) {
                return points;
            }
        }
    }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const RunOptions& opts)
{
    ExperimentResult res;
    res.points = expand_sweep(cfg);
    const std::size_t n_points = res.points.size();
    const int n_reps = cfg.replicates;

    // Validate every sweep point before spending any simulation time.
    for (const auto& point : res.points) {
        ModelParams model = cfg.model;
        for (const auto& [name, value] : point.assignments) {
            const ModelField* field = find_model_field(name);
            if (!field) {
                throw std::invalid_argument(
                    "sweep: unknown model parameter '" + name + "'");
            }
            field->set(model, value);
        }
        try {
            validate(model);
        } catch (const std::exception& e) {
            throw std::invalid_argument("sweep point '" + point.key() +
                                        "': " + e.what());
        }
    }

    res.replicates.assign(n_points, std::vector<MetricsRecord>(
                                        static_cast<std::size_t>(n_reps)));
    const bool want_series = cfg.measure_every > 0;
    std::vector<std::vector<TimedMetrics>> task_series;
    if (want_series) {
        task_series.assign(n_points * static_cast<std::size_t>(n_reps), {});
    }
    if (opts.capture_trace) {
        res.traces.assign(n_points, {});
    }

    const long long total =
        static_cast<long long>(n_points) * static_cast<long long>(n_reps);
    std::vector<std::string> errors(static_cast<std::size_t>(total));
    const int threads =
        opts.max_threads > 0 ? opts.max_threads : omp_get_max_threads();

#pragma omp parallel for num_threads(threads) schedule(dynamic)
    for (long long task = 0; task < total; ++task) {
        const std::size_t point_idx =
            static_cast<std::size_t>(task) / static_cast<std::size_t>(n_reps);
        const int rep = static_cast<int>(task % n_reps);
        try {
            const ReplicateSpec spec =
                make_replicate_spec(cfg, res.points[point_idx], rep);
            std::ostringstream trace;
            const bool tracing = opts.capture_trace && rep == 0;
            res.replicates[point_idx][static_cast<std::size_t>(rep)] =
                run_replicate(spec,
                              want_series
                                  ? &task_series[static_cast<std::size_t>(task)]
                                  : nullptr,
                              rep, tracing ? &trace : nullptr);
            if (tracing) {
                res.traces[point_idx] = trace.str();
            }
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(task)] = e.what();
        }
    }
    for (const auto& err : errors) {
        if (!err.empty()) {
            throw std::runtime_error("replicate failed: " + err);
        }
    }

    if (want_series) {
        res.series.resize(n_points);
        for (long long task = 0; task < total; ++task) {
            auto& dst = res.series[static_cast<std::size_t>(task) /
                                   static_cast<std::size_t>(n_reps)];
            auto& src = task_series[static_cast<std::size_t>(task)];
            dst.insert(dst.end(), std::make_move_iterator(src.begin()),
                       std::make_move_iterator(src.end()));
        }
    }

    for (std::size_t pi = 0; pi < n_points; ++pi) {
        AggregateRecord agg;
        agg.sweep_key = res.points[pi].key();
        agg.params = res.points[pi].assignments;
        agg.generator_mode = cfg.generator;
        agg.replicates = n_reps;
        agg.metrics = aggregate_scalars(res.replicates[pi]);
        if (cfg.generator == "mixed") {
            for (const char* kind : {"er", "ba"}) {
                std::vector<MetricsRecord> subset;
                for (const auto& r : res.replicates[pi]) {
                    if (r.generator == kind) {
                        subset.push_back(r);
                    }
                }
                if (!subset.empty()) {
                    agg.by_generator.emplace_back(kind,
                                                  aggregate_scalars(subset));
                }
            }
        }
        res.aggregates.push_back(std::move(agg));
    }
    return res;
}

namespace {

void write_scalar_columns(std::ostream& out, const MetricsRecord& r)
{
    out << format_double(r.clustering) << ','
        << format_double(r.avg_path_length) << ','
        << format_double(r.employees.mean) << ','
        << format_double(r.employees.median) << ','
        << format_double(r.employees.max) << ','
        << format_double(r.value.mean) << ','
        << format_double(r.value.median) << ','
        << format_double(r.value.max) << ',' << r.unemployed;
}

nlohmann::json scalars_json(const AggregateScalars& a)
{
    return {{"clustering", a.clustering}, {"apl", a.apl},
            {"emp_mean", a.emp_mean},     {"emp_median", a.emp_median},
            {"emp_max", a.emp_max},       {"val_mean", a.val_mean},
            {"val_median", a.val_median}, {"val_max", a.val_max},
            {"unemployed", a.unemployed}};
}

}  // namespace

void write_replicates_csv(const ExperimentResult& res, std::ostream& out)
{
    out << "sweep_point,replicate,seed,clustering,apl,emp_mean,emp_median,"
           "emp_max,val_mean,val_median,val_max,unemployed\n";
    for (std::size_t pi = 0; pi < res.points.size(); ++pi) {
        const std::string key = res.points[pi].key();
        for (std::size_t rep = 0; rep < res.replicates[pi].size(); ++rep) {
            const MetricsRecord& r = res.replicates[pi][rep];
            out << key << ',' << rep << ',' << r.seed << ',';
            write_scalar_columns(out, r);
            out << '\n';
        }
    }
}

nlohmann::json aggregates_json(const ExperimentResult& res)
{
    auto arr = nlohmann::json::array();
    for (const auto& agg : res.aggregates) {
        nlohmann::json rec;
        rec["sweep_point"] = agg.sweep_key;
        auto params = nlohmann::json::object();
        for (const auto& [name, value] : agg.params) {
            params[name] = value;
        }
        rec["params"] = std::move(params);
        rec["generator"] = agg.generator_mode;
        rec["replicates"] = agg.replicates;
        rec["metrics"] = scalars_json(agg.metrics);
        if (!agg.by_generator.empty()) {
            auto split = nlohmann::json::object();
            for (const auto& [kind, scalars] : agg.by_generator) {
                split[kind] = scalars_json(scalars);
            }
            rec["by_generator"] = std::move(split);
        }
        arr.push_back(std::move(rec));
    }
    return arr;
}

void write_histograms_csv(const ExperimentResult& res, std::size_t point_index,
                          std::ostream& out)
{
    std::map<int, long long> employees;
    std::map<int, long long> values;
    for (const auto& r : res.replicates.at(point_index)) {
        for (const auto& [bin, count] : r.employee_hist) {
            employees[bin] += count;
        }
        for (const auto& [bin, count] : r.value_hist) {
            values[bin] += count;
        }
    }
    std::map<int, std::pair<long long, long long>> merged;
    for (const auto& [bin, count] : employees) {
        merged[bin].first = count;
    }
    for (const auto& [bin, count] : values) {
        merged[bin].second = count;
    }
    out << "bin,employee_count,value_count\n";
    for (const auto& [bin, counts] : merged) {
        out << bin << ',' << counts.first << ',' << counts.second << '\n';
    }
}

void write_timeseries_csv(const ExperimentResult& res, std::ostream& out)
{
    out << "sweep_point,replicate,t,clustering,apl,emp_mean,emp_median,"
           "emp_max,val_mean,val_median,val_max,unemployed\n";
    for (std::size_t pi = 0; pi < res.series.size(); ++pi) {
        const std::string key = res.points[pi].key();
        for (const auto& entry : res.series[pi]) {
            out << key << ',' << entry.replicate << ',' << entry.t << ',';
            write_scalar_columns(out, entry.metrics);
            out << '\n';
        }
    }
}

}  // namespace orgsim
