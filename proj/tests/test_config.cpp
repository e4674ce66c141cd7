#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include "orgsim/config.hpp"

using namespace orgsim;
namespace fs = std::filesystem;

namespace {

std::string message_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

fs::path write_temp(const std::string& name, const std::string& content)
{
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("empty object yields the full default configuration")
{
    const auto cfg = config_from_json(nlohmann::json::object());
    CHECK(cfg.n_orgs == 100);
    CHECK(cfg.n_links == 197);
    CHECK(cfg.n_profiles == 3);
    CHECK(cfg.profile_names ==
          std::vector<std::string>{"red", "blue", "green"});
    CHECK(cfg.staffing_sd == 70.0);
    CHECK(cfg.unemployment_rate == 0.03);
    CHECK(cfg.replicates == 25);
    CHECK(cfg.steps == 500);
    CHECK(cfg.generator == "mixed");
    CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("defaults round-trip through JSON")
{
    const ExperimentConfig defaults;
    const auto dumped = to_json(defaults);
    const auto parsed = config_from_json(dumped);
    CHECK(to_json(parsed) == dumped);
}

TEST_CASE("out-of-range and inconsistent values are named")
{
    nlohmann::json j = nlohmann::json::object();
    apply_override(j, "rho=1.5");
    auto msg = message_of([&] { validate(config_from_json(j)); });
    CHECK(msg.find("rho") != std::string::npos);

    j = nlohmann::json::object();
    apply_override(j, "cn_members_min=5");
    apply_override(j, "cn_members_max=3");
    msg = message_of([&] { validate(config_from_json(j)); });
    CHECK(msg.find("cn_members_max") != std::string::npos);

    j = nlohmann::json::object();
    apply_override(j, "steps=0");
    msg = message_of([&] { validate(config_from_json(j)); });
    CHECK(msg.find("steps") != std::string::npos);
}

TEST_CASE("unknown keys are rejected by name")
{
    auto msg = message_of([] {
        config_from_json(nlohmann::json{{"n_orsg", 50}});
    });
    CHECK(msg.find("n_orsg") != std::string::npos);

    msg = message_of([] {
        config_from_json(nlohmann::json{{"model", {{"rho_typo", 0.5}}}});
    });
    CHECK(msg.find("rho_typo") != std::string::npos);

    nlohmann::json j = nlohmann::json::object();
    msg = message_of([&] { apply_override(j, "not_a_key=1"); });
    CHECK(msg.find("not_a_key") != std::string::npos);
}

TEST_CASE("overrides resolve bare model parameters")
{
    nlohmann::json j = nlohmann::json::object();
    apply_override(j, "rho=0.25");
    apply_override(j, "model.alpha=3");
    apply_override(j, "generator=er");
    apply_override(j, "synergy_count_mode=own");
    const auto cfg = config_from_json(j);
    CHECK(cfg.model.rho == 0.25);
    CHECK(cfg.model.alpha == 3.0);
    CHECK(cfg.generator == "er");
    CHECK(cfg.model.synergy_count_mode == SynergyCountMode::own_cns);

    CHECK_THROWS(apply_override(j, "novalue"));
    CHECK_THROWS(apply_override(j, "=5"));
}

TEST_CASE("n_links must match the preferential attachment count")
{
    nlohmann::json j = nlohmann::json::object();
    apply_override(j, "n_links=150");
    auto msg = message_of([&] { validate(config_from_json(j)); });
    CHECK(msg.find("n_links") != std::string::npos);

    // Pure random generator has no such constraint.
    apply_override(j, "generator=er");
    CHECK_NOTHROW(validate(config_from_json(j)));
}

TEST_CASE("sweep validation covers names, emptiness and grid points")
{
    nlohmann::json j = nlohmann::json::object();
    j["sweep"] = {{{"param", "bogus"}, {"values", {1, 2}}}};
    auto msg = message_of([&] { validate(config_from_json(j)); });
    CHECK(msg.find("bogus") != std::string::npos);

    j["sweep"] = {{{"param", "pi_same"}, {"values", nlohmann::json::array()}}};
    msg = message_of([&] { validate(config_from_json(j)); });
    CHECK(msg.find("pi_same") != std::string::npos);

    // A grid value that violates the model constraints is caught upfront.
    j["sweep"] = {{{"param", "rho"}, {"values", {0.5, 2.0}}}};
    msg = message_of([&] { validate(config_from_json(j)); });
    CHECK(msg.find("rho=2") != std::string::npos);
}

TEST_CASE("parse_config reports malformed JSON with line info")
{
    const auto path =
        write_temp("orgsim_bad_config.json", "{\n  \"n_orgs\": 50,\n  }\n");
    const auto msg = message_of([&] { parse_config(path, {}); });
    CHECK(msg.find("parse error") != std::string::npos);
    CHECK(msg.find(":3:") != std::string::npos);  // the offending line
    fs::remove(path);

    CHECK_THROWS(parse_config("/nonexistent/orgsim.json", {}));
}

TEST_CASE("parse_config applies file and overrides in order")
{
    const auto path = write_temp("orgsim_good_config.json",
                                 R"({"steps": 40, "model": {"rho": 0.3}})");
    const auto cfg = parse_config(path, {"steps=60", "pi_cn=0.2"});
    CHECK(cfg.steps == 60);
    CHECK(cfg.model.rho == 0.3);
    CHECK(cfg.model.pi_cn == 0.2);
    fs::remove(path);
}
