#include "orgsim/params.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace orgsim {

namespace {

void require(bool ok, const char* field, const std::string& rule)
{
    if (!ok) {
        throw std::invalid_argument(std::string(field) + ": " + rule);
    }
}

constexpr auto kFields = std::array<ModelField, 18>{{
    {"rho", false, [](const ModelParams& p) { return p.rho; },
     [](ModelParams& p, double v) { p.rho = v; }},
    {"theta_same", false, [](const ModelParams& p) { return p.theta_same; },
     [](ModelParams& p, double v) { p.theta_same = v; }},
    {"alpha", false, [](const ModelParams& p) { return p.alpha; },
     [](ModelParams& p, double v) { p.alpha = v; }},
    {"fade_slope", false, [](const ModelParams& p) { return p.fade_slope; },
     [](ModelParams& p, double v) { p.fade_slope = v; }},
    {"fade_duration", false, [](const ModelParams& p) { return p.fade_duration; },
     [](ModelParams& p, double v) { p.fade_duration = v; }},
    {"fade_threshold", false, [](const ModelParams& p) { return p.fade_threshold; },
     [](ModelParams& p, double v) { p.fade_threshold = v; }},
    {"pi_local", false, [](const ModelParams& p) { return p.pi_local; },
     [](ModelParams& p, double v) { p.pi_local = v; }},
    {"pi_profile", false, [](const ModelParams& p) { return p.pi_profile; },
     [](ModelParams& p, double v) { p.pi_profile = v; }},
    {"pi_cn", false, [](const ModelParams& p) { return p.pi_cn; },
     [](ModelParams& p, double v) { p.pi_cn = v; }},
    {"pi_random", false, [](const ModelParams& p) { return p.pi_random; },
     [](ModelParams& p, double v) { p.pi_random = v; }},
    {"pi_same", false, [](const ModelParams& p) { return p.pi_same; },
     [](ModelParams& p, double v) { p.pi_same = v; }},
    {"cn_duration_min", true,
     [](const ModelParams& p) { return static_cast<double>(p.cn_duration_min); },
     [](ModelParams& p, double v) { p.cn_duration_min = static_cast<int>(std::llround(v)); }},
    {"cn_duration_max", true,
     [](const ModelParams& p) { return static_cast<double>(p.cn_duration_max); },
     [](ModelParams& p, double v) { p.cn_duration_max = static_cast<int>(std::llround(v)); }},
    {"cn_members_min", true,
     [](const ModelParams& p) { return static_cast<double>(p.cn_members_min); },
     [](ModelParams& p, double v) { p.cn_members_min = static_cast<int>(std::llround(v)); }},
    {"cn_members_max", true,
     [](const ModelParams& p) { return static_cast<double>(p.cn_members_max); },
     [](ModelParams& p, double v) { p.cn_members_max = static_cast<int>(std::llround(v)); }},
    {"kappa_hire", false, [](const ModelParams& p) { return p.kappa_hire; },
     [](ModelParams& p, double v) { p.kappa_hire = v; }},
    {"kappa_fire", false, [](const ModelParams& p) { return p.kappa_fire; },
     [](ModelParams& p, double v) { p.kappa_fire = v; }},
    {"kappa_quit", false, [](const ModelParams& p) { return p.kappa_quit; },
     [](ModelParams& p, double v) { p.kappa_quit = v; }},
}};

}  // namespace

void validate(const ModelParams& p)
{
    require(p.rho > 0.0 && p.rho < 1.0, "rho", "must be in (0, 1)");
    require(p.theta_same > 0.0 && p.theta_same < 1.0, "theta_same",
            "must be in (0, 1)");
    require(p.alpha >= 0.0, "alpha", "must be >= 0");
    require(p.fade_slope > 0.0, "fade_slope", "must be > 0");
    require(p.fade_duration > 0.0, "fade_duration", "must be > 0");
    require(p.fade_threshold > 0.0 && p.fade_threshold < 1.0, "fade_threshold",
            "must be in (0, 1)");
    require(p.pi_local >= 0.0 && p.pi_local <= 1.0, "pi_local",
            "must be in [0, 1]");
    require(p.pi_profile >= 0.0 && p.pi_profile <= 1.0, "pi_profile",
            "must be in [0, 1]");
    require(p.pi_cn >= 0.0 && p.pi_cn <= 1.0, "pi_cn", "must be in [0, 1]");
    require(p.pi_random >= 0.0 && p.pi_random <= 1.0, "pi_random",
            "must be in [0, 1]");
    require(p.pi_same >= 0.0 && p.pi_same <= 1.0, "pi_same",
            "must be in [0, 1]");
    require(p.cn_duration_min >= 1, "cn_duration_min", "must be >= 1");
    require(p.cn_duration_max >= p.cn_duration_min, "cn_duration_max",
            "must be >= cn_duration_min");
    require(p.cn_members_min >= 2, "cn_members_min", "must be >= 2");
    require(p.cn_members_max >= p.cn_members_min, "cn_members_max",
            "must be >= cn_members_min");
    require(p.kappa_hire >= 0.0, "kappa_hire", "must be >= 0");
    require(p.kappa_fire >= 0.0, "kappa_fire", "must be >= 0");
    require(p.kappa_quit >= 0.0, "kappa_quit", "must be >= 0");
}

std::span<const ModelField> model_fields()
{
    return kFields;
}

const ModelField* find_model_field(std::string_view name)
{
    for (const auto& f : kFields) {
        if (name == f.name) {
            return &f;
        }
    }
    return nullptr;
}

}  // namespace orgsim
