#pragma once

#include <span>
#include <string_view>

namespace orgsim {

// How many collaborations feed the active pair synergy 1 + ln(count):
// shared_cns counts CNs both partners are in; own_cns counts all CNs of the
// organization whose value is being computed.
enum class SynergyCountMode { shared_cns, own_cns };

// Default regime: few small long-lived CNs. Each organization holds two to
// three concurrent memberships, which keeps the collaboration graph in one
// giant component while staying sparse enough that out-of-neighborhood
// members act as measurable shortcuts.
struct ModelParams {
    double rho = 0.5;             // cross-profile employee value discount
    double theta_same = 0.5;      // same-profile synergy discount
    double alpha = 2.0;           // synergy weight in the organization value
    double fade_slope = 1.0;      // f_s
    double fade_duration = 30.0;  // f_d
    double fade_threshold = 0.5;  // f_t; links fading below it are pruned
    double pi_local = 0.7;        // quit: preference for collaboration neighbors
    double pi_profile = 0.7;      // quit: preference for same-profile employers
    double pi_cn = 0.022;         // per-organization CN creation probability
    double pi_random = 0.05;      // inclusion coin for out-of-neighborhood candidates
    double pi_same = 0.5;         // same-profile share of CN members
    int cn_duration_min = 20;
    int cn_duration_max = 40;
    int cn_members_min = 2;
    int cn_members_max = 4;
    double kappa_hire = 0.05;
    double kappa_fire = 0.05;
    double kappa_quit = 0.05;
    SynergyCountMode synergy_count_mode = SynergyCountMode::shared_cns;
};

// Throws std::invalid_argument naming the offending field.
void validate(const ModelParams& p);

// Numeric fields by name, the single registry used by config parsing,
// key=value overrides and sweep application.
struct ModelField {
    const char* name;
    bool integer;
    double (*get)(const ModelParams&);
    void (*set)(ModelParams&, double);
};

std::span<const ModelField> model_fields();
const ModelField* find_model_field(std::string_view name);

}  // namespace orgsim
