#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "orgsim/graph.hpp"
#include "orgsim/params.hpp"
#include "orgsim/rng.hpp"

#include <json.hpp>

namespace orgsim {

// Headcounts per organization per profile. Row 0 is the unemployed pool.
// After construction the matrix only changes through transfer(), so the
// total number of people is conserved by construction.
class EmploymentMatrix {
public:
    EmploymentMatrix(int n_orgs, int n_profiles);

    int n_orgs() const { return n_orgs_; }
    int n_profiles() const { return n_profiles_; }

    int count(int row, int profile) const;
    void set(int row, int profile, int value);  // init-time only
    long long row_total(int row) const;
    long long total() const;

    // Moves one person of the given profile; throws if the source cell is 0.
    void transfer(int from_row, int to_row, int profile);

private:
    std::size_t idx(int row, int profile) const;
    void check(int row, int profile) const;

    int n_orgs_;
    int n_profiles_;
    std::vector<int> counts_;
};

struct CollaborativeNetwork {
    long long start_time = 0;       // creation step
    int duration = 1;               // active while start <= t <= start + duration
    std::vector<NodeId> members;    // sorted, distinct, >= 2, includes creator

    bool active_at(long long t) const
    {
        return start_time <= t && t <= start_time + duration;
    }
    bool has_member(NodeId v) const;
};

// Per unordered organization pair: the step when the pair's last shared CN
// dissolved (0 = never collaborated), plus a count of currently shared active
// CNs. The count is a cache maintained by CN creation/dissolution.
class PairState {
public:
    explicit PairState(int n_orgs);

    long long last_collab_end(NodeId i, NodeId j) const;
    void set_last_collab_end(NodeId i, NodeId j, long long t);

    int shared_active(NodeId i, NodeId j) const;
    void add_shared(NodeId i, NodeId j, int delta);

private:
    std::size_t idx(NodeId i, NodeId j) const;

    int n_;
    std::vector<long long> last_end_;
    std::vector<int> shared_;
};

struct EcosystemState {
    Graph graph;
    EmploymentMatrix employment;
    std::vector<CollaborativeNetwork> active_cns;
    PairState pairs;
    long long clock = 0;
    std::vector<std::string> profile_names;
};

enum class GeneratorKind { erdos_renyi, barabasi_albert };

struct InitConfig {
    GeneratorKind generator = GeneratorKind::erdos_renyi;
    int n_orgs = 100;
    long long n_links = 197;
    int ba_attach_per_node = 2;
    int ba_seed_size = 3;
    int n_profiles = 3;
    std::vector<std::string> profile_names = {"red", "blue", "green"};
    double staffing_sd = 70.0;
    double unemployment_rate = 0.03;
};

// Predominant profile of row i; ties break to the lowest index, an all-zero
// row reports profile 0.
int organization_profile(const EmploymentMatrix& e, NodeId i);

// v_i^e: own-profile employees count 1, every other profile counts rho.
double employee_value(const EcosystemState& s, const ModelParams& p, NodeId i);

// Post-collaboration synergy decay: 1 - 1/(1 + exp(f_s*(f_d/2 + t_omega - t))).
double fading_synergy(double fade_slope, double fade_duration,
                      double t_omega, double t);

// First integer step at which a pair fading since t_omega drops below the
// pruning threshold.
long long prune_step(const ModelParams& p, long long t_omega);

// v_ij^s at step t: 1 + ln(collaboration count) while the pair shares an
// active CN, the fading curve otherwise.
double pair_synergy(const EcosystemState& s, const ModelParams& p, NodeId i,
                    NodeId j, long long t);

// v_i^s: sum of pair synergies over all linked partners, same-profile
// partners discounted by theta_same.
double synergy_value(const EcosystemState& s, const ModelParams& p, NodeId i,
                     long long t);

// v_i = v_i^e + alpha * v_i^s.
double organization_value(const EcosystemState& s, const ModelParams& p,
                          NodeId i, long long t);

// Removes every link with no active shared CN whose fading value is below
// fade_threshold. Returns the removed links.
std::vector<std::pair<NodeId, NodeId>> prune_links(EcosystemState& s,
                                                   const ModelParams& p,
                                                   long long t);

// Pool size and per-profile split of the initial unemployed population.
std::vector<int> initial_unemployed_counts(long long total_employees,
                                           double unemployment_rate,
                                           int n_profiles);

EcosystemState init_ecosystem(const InitConfig& cfg, Rng& rng);

// Debug/acceptance snapshot: clock, edges, employment, active CNs and the
// sparse t_omega map.
nlohmann::json snapshot_json(const EcosystemState& s);

}  // namespace orgsim
