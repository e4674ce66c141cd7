#include "orgsim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace orgsim {

namespace {

const std::set<std::string> kTopLevelKeys = {
    "generator",     "n_orgs",        "n_links",
    "ba_attach_per_node", "ba_seed_size", "n_profiles",
    "profile_names", "staffing_sd",   "unemployment_rate",
    "replicates",    "steps",         "base_seed",
    "measure_every", "model",         "sweep"};

[[noreturn]] void bad_field(const std::string& field, const std::string& why)
{
    throw std::invalid_argument(field + ": " + why);
}

template <typename T>
T get_field(const nlohmann::json& j, const std::string& key, T fallback)
{
    if (!j.contains(key)) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        bad_field(key, "has the wrong type");
    }
}

std::vector<std::string> default_profile_names(int n_profiles)
{
    static const std::vector<std::string> base = {"red", "blue", "green"};
    std::vector<std::string> names;
    for (int k = 0; k < n_profiles; ++k) {
        if (k < static_cast<int>(base.size())) {
            names.push_back(base[static_cast<std::size_t>(k)]);
        } else {
            names.push_back("profile" + std::to_string(k + 1));
        }
    }
    return names;
}

ModelParams model_from_json(const nlohmann::json& j)
{
    ModelParams model;
    for (const auto& [key, value] : j.items()) {
        if (key == "synergy_count_mode") {
            const auto mode = value.get<std::string>();
            if (mode == "shared") {
                model.synergy_count_mode = SynergyCountMode::shared_cns;
            } else if (mode == "own") {
                model.synergy_count_mode = SynergyCountMode::own_cns;
            } else {
                bad_field("synergy_count_mode", "must be 'shared' or 'own'");
            }
            continue;
        }
        const ModelField* field = find_model_field(key);
        if (!field) {
            throw std::invalid_argument("unknown model parameter '" + key +
                                        "'");
        }
        if (!value.is_number()) {
            bad_field(key, "must be a number");
        }
        field->set(model, value.get<double>());
    }
    return model;
}

std::vector<SweepSpec> sweep_from_json(const nlohmann::json& j)
{
    if (!j.is_array()) {
        bad_field("sweep", "must be an array of {param, values}");
    }
    std::vector<SweepSpec> sweep;
    for (const auto& entry : j) {
        if (!entry.is_object() || !entry.contains("param") ||
            !entry.contains("values")) {
            bad_field("sweep", "entries need 'param' and 'values'");
        }
        for (const auto& [key, _] : entry.items()) {
            if (key != "param" && key != "values") {
                throw std::invalid_argument("unknown sweep key '" + key + "'");
            }
        }
        SweepSpec spec;
        spec.param = entry.at("param").get<std::string>();
        if (!entry.at("values").is_array()) {
            bad_field("sweep", "'values' must be an array of numbers");
        }
        for (const auto& v : entry.at("values")) {
            if (!v.is_number()) {
                bad_field("sweep", "'values' must be an array of numbers");
            }
            spec.values.push_back(v.get<double>());
        }
        sweep.push_back(std::move(spec));
    }
    return sweep;
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) {
        throw std::invalid_argument("config root must be a JSON object");
    }
    for (const auto& [key, _] : j.items()) {
        if (!kTopLevelKeys.count(key)) {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
    ExperimentConfig cfg;
    cfg.generator = get_field<std::string>(j, "generator", cfg.generator);
    cfg.n_orgs = get_field<int>(j, "n_orgs", cfg.n_orgs);
    cfg.n_links = get_field<long long>(j, "n_links", cfg.n_links);
    cfg.ba_attach_per_node =
        get_field<int>(j, "ba_attach_per_node", cfg.ba_attach_per_node);
    cfg.ba_seed_size = get_field<int>(j, "ba_seed_size", cfg.ba_seed_size);
    cfg.n_profiles = get_field<int>(j, "n_profiles", cfg.n_profiles);
    cfg.staffing_sd = get_field<double>(j, "staffing_sd", cfg.staffing_sd);
    cfg.unemployment_rate =
        get_field<double>(j, "unemployment_rate", cfg.unemployment_rate);
    cfg.replicates = get_field<int>(j, "replicates", cfg.replicates);
    cfg.steps = get_field<int>(j, "steps", cfg.steps);
    cfg.base_seed = get_field<std::uint64_t>(j, "base_seed", cfg.base_seed);
    cfg.measure_every = get_field<int>(j, "measure_every", cfg.measure_every);
    if (j.contains("profile_names")) {
        cfg.profile_names =
            get_field<std::vector<std::string>>(j, "profile_names", {});
    } else {
        cfg.profile_names = default_profile_names(cfg.n_profiles);
    }
    if (j.contains("model")) {
        cfg.model = model_from_json(j.at("model"));
    }
    if (j.contains("sweep")) {
        cfg.sweep = sweep_from_json(j.at("sweep"));
    }
    return cfg;
}

nlohmann::json to_json(const ExperimentConfig& cfg)
{
    nlohmann::json j;
    j["generator"] = cfg.generator;
    j["n_orgs"] = cfg.n_orgs;
    j["n_links"] = cfg.n_links;
    j["ba_attach_per_node"] = cfg.ba_attach_per_node;
    j["ba_seed_size"] = cfg.ba_seed_size;
    j["n_profiles"] = cfg.n_profiles;
    j["profile_names"] = cfg.profile_names;
    j["staffing_sd"] = cfg.staffing_sd;
    j["unemployment_rate"] = cfg.unemployment_rate;
    j["replicates"] = cfg.replicates;
    j["steps"] = cfg.steps;
    j["base_seed"] = cfg.base_seed;
    j["measure_every"] = cfg.measure_every;
    nlohmann::json model;
    for (const auto& field : model_fields()) {
        if (field.integer) {
            model[field.name] =
                static_cast<long long>(field.get(cfg.model));
        } else {
            model[field.name] = field.get(cfg.model);
        }
    }
    model["synergy_count_mode"] =
        cfg.model.synergy_count_mode == SynergyCountMode::shared_cns ? "shared"
                                                                     : "own";
    j["model"] = std::move(model);
    auto sweep = nlohmann::json::array();
    for (const auto& spec : cfg.sweep) {
        sweep.push_back({{"param", spec.param}, {"values", spec.values}});
    }
    j["sweep"] = std::move(sweep);
    return j;
}

void validate(const ExperimentConfig& cfg)
{
    if (cfg.generator != "er" && cfg.generator != "ba" &&
        cfg.generator != "mixed") {
        bad_field("generator", "must be 'er', 'ba' or 'mixed'");
    }
    if (cfg.n_orgs < 2) {
        bad_field("n_orgs", "must be >= 2");
    }
    const long long max_links =
        static_cast<long long>(cfg.n_orgs) * (cfg.n_orgs - 1) / 2;
    if (cfg.n_links < 0 || cfg.n_links > max_links) {
        bad_field("n_links",
                  "must be in 0.." + std::to_string(max_links) + " for " +
                      std::to_string(cfg.n_orgs) + " organizations");
    }
    if (cfg.ba_attach_per_node < 1 ||
        cfg.ba_seed_size < cfg.ba_attach_per_node ||
        cfg.n_orgs < cfg.ba_seed_size) {
        bad_field("ba_seed_size",
                  "need n_orgs >= ba_seed_size >= ba_attach_per_node >= 1");
    }
    if (cfg.generator != "er") {
        const long long ba_links =
            static_cast<long long>(cfg.ba_seed_size) *
                (cfg.ba_seed_size - 1) / 2 +
            static_cast<long long>(cfg.n_orgs - cfg.ba_seed_size) *
                cfg.ba_attach_per_node;
        if (ba_links != cfg.n_links) {
            bad_field("n_links",
                      "preferential attachment with these parameters yields " +
                          std::to_string(ba_links) +
                          " links; set n_links accordingly");
        }
    }
    if (cfg.n_profiles < 1) {
        bad_field("n_profiles", "must be >= 1");
    }
    if (static_cast<int>(cfg.profile_names.size()) != cfg.n_profiles) {
        bad_field("profile_names", "must list exactly n_profiles names");
    }
    if (cfg.staffing_sd < 0.0) {
        bad_field("staffing_sd", "must be >= 0");
    }
    if (cfg.unemployment_rate < 0.0 || cfg.unemployment_rate > 1.0) {
        bad_field("unemployment_rate", "must be in [0, 1]");
    }
    if (cfg.replicates < 1) {
        bad_field("replicates", "must be >= 1");
    }
    if (cfg.steps < 1) {
        bad_field("steps", "must be >= 1");
    }
    if (cfg.measure_every < 0) {
        bad_field("measure_every", "must be >= 0");
    }
    validate(cfg.model);
    for (const auto& spec : cfg.sweep) {
        if (!find_model_field(spec.param)) {
            throw std::invalid_argument("sweep: unknown model parameter '" +
                                        spec.param + "'");
        }
        if (spec.values.empty()) {
            throw std::invalid_argument("sweep: parameter '" + spec.param +
                                        "' has no values");
        }
    }
    // Every grid combination must be a valid model.
    for (const auto& point : expand_sweep(cfg)) {
        ModelParams model = cfg.model;
        for (const auto& [name, value] : point.assignments) {
            find_model_field(name)->set(model, value);
        }
        try {
            validate(model);
        } catch (const std::exception& e) {
            throw std::invalid_argument("sweep point '" + point.key() +
                                        "': " + e.what());
        }
    }
}

void apply_override(nlohmann::json& j, const std::string& key_value)
{
    const auto eq = key_value.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw std::invalid_argument("override '" + key_value +
                                    "' is not key=value");
    }
    const std::string key = key_value.substr(0, eq);
    const std::string raw = key_value.substr(eq + 1);
    nlohmann::json value = nlohmann::json::parse(raw, nullptr, false);
    if (value.is_discarded()) {
        value = raw;  // unquoted strings like generator=er
    }

    if (const auto dot = key.find('.'); dot != std::string::npos) {
        const std::string head = key.substr(0, dot);
        const std::string tail = key.substr(dot + 1);
        if (head != "model" || tail.empty()) {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
        j["model"][tail] = value;
        return;
    }
    if (kTopLevelKeys.count(key)) {
        j[key] = value;
        return;
    }
    if (find_model_field(key) || key == "synergy_count_mode") {
        j["model"][key] = value;
        return;
    }
    throw std::invalid_argument("unknown config key '" + key + "'");
}

ExperimentConfig parse_config(const std::filesystem::path& path,
                              const std::vector<std::string>& overrides)
{
    nlohmann::json j = nlohmann::json::object();
    if (!path.empty()) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw std::runtime_error("cannot open config file: " +
                                     path.string());
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        const std::string text = buffer.str();
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            // Report the position as line:column instead of a byte offset.
            std::size_t line = 1;
            std::size_t col = 1;
            for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
                if (text[k] == '\n') {
                    ++line;
                    col = 1;
                } else {
                    ++col;
                }
            }
            throw std::runtime_error("parse error at " + path.string() + ":" +
                                     std::to_string(line) + ":" +
                                     std::to_string(col) + ": " + e.what());
        }
    }
    for (const auto& kv : overrides) {
        apply_override(j, kv);
    }
    ExperimentConfig cfg = config_from_json(j);
    validate(cfg);
    return cfg;
}

}  // namespace orgsim
