#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "orgsim/ecosystem.hpp"

namespace orgsim {

// Per-step observability.
struct StepReport {
    explicit StepReport(int n_profiles)
        : hires(static_cast<std::size_t>(n_profiles), 0),
          fires(static_cast<std::size_t>(n_profiles), 0),
          quits(static_cast<std::size_t>(n_profiles), 0)
    {
    }

    int created_cns = 0;
    int dissolved_cns = 0;
    std::vector<int> hires;
    std::vector<int> fires;
    std::vector<int> quits;
    int pruned_links = 0;

    int total_hires() const;
    int total_fires() const;
    int total_quits() const;
};

// One quit, with the facts that held when the destination was chosen. The
// graph does not change during the mobility pass, but organization profiles
// can, so these are recorded at decision time.
struct QuitEvent {
    NodeId source = 0;
    NodeId destination = 0;
    int profile = 0;
    bool source_had_neighbors = false;
    bool dest_is_neighbor = false;
    bool base_had_same_profile = false;
    bool dest_same_profile = false;
};

struct DestinationChoice {
    NodeId destination = 0;
    bool local_applied = false;        // locality constraint survived
    bool profile_applied = false;      // profile constraint survived
    bool base_had_same_profile = false;
    bool dest_same_profile = false;
};

// Candidate pool: order-2 neighbors of the creator plus, per outside
// organization, an independent pi_random inclusion coin. round(pi_same *
// (target_size - 1)) members come from the creator's profile, the rest from
// other profiles; shortfalls fill from the other stratum and then from the
// whole organization set. The creator is always a member.
std::vector<NodeId> select_cn_members(const EcosystemState& s, NodeId creator,
                                      int target_size, const ModelParams& p,
                                      Rng& rng);

// With probability pi_cn: creates a CN starting now, duration uniform in
// [cn_duration_min, cn_duration_max], size uniform in
// [cn_members_min, cn_members_max], members via select_cn_members. Links
// between all member pairs are added to the graph.
std::optional<CollaborativeNetwork> maybe_create_cn(EcosystemState& s,
                                                    NodeId creator,
                                                    const ModelParams& p,
                                                    Rng& rng);

// Removes CNs with t > start + duration. Pairs whose shared active CN count
// drops to zero get their fading clock set to t.
std::vector<CollaborativeNetwork> dissolve_expired(EcosystemState& s,
                                                   long long t);

double hire_probability(const EcosystemState& s, const ModelParams& p, NodeId i);
double fire_probability(const EcosystemState& s, const ModelParams& p, NodeId i);
// Neighborless organizations never lose employees to quits.
double quit_probability(const EcosystemState& s, const ModelParams& p, NodeId i);

// Two independent coins choose locality (pi_local) and profile (pi_profile)
// constraints; empty intersections relax the profile constraint first, then
// locality. Never fails while another organization exists.
NodeId choose_destination(const EcosystemState& s, NodeId source,
                          int worker_profile, const ModelParams& p, Rng& rng,
                          DestinationChoice* detail = nullptr);

// Hire, fire, quit passes per organization in ascending id, at most one event
// per channel per organization. Probabilities are evaluated on the live state.
void mobility_step(EcosystemState& s, const ModelParams& p, Rng& rng,
                   StepReport& report,
                   std::vector<QuitEvent>* quit_log = nullptr);

// One simulation step: advance clock, dissolve expired CNs, CN creation pass
// in ascending creator id, prune faded links, mobility.
StepReport step(EcosystemState& s, const ModelParams& p, Rng& rng,
                std::vector<QuitEvent>* quit_log = nullptr);

// Optional per-step trace row; header is
// t,created_cns,dissolved_cns,hires,fires,quits,pruned_links,edges,active_cns
void write_trace_header(std::ostream& out);
void write_trace_row(std::ostream& out, long long t, const StepReport& r,
                     const EcosystemState& s);

}  // namespace orgsim
