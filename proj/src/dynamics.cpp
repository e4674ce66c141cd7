#include "orgsim/dynamics.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace orgsim {

namespace {

double clamp01(double x)
{
    return std::clamp(x, 0.0, 1.0);
}

constexpr double kValueEpsilon = 1e-9;

// Moves k uniform draws from pool's front via partial Fisher-Yates.
void draw_without_replacement(std::vector<NodeId>& pool, int k, Rng& rng,
                              std::vector<NodeId>& out)
{
    for (int a = 0; a < k; ++a) {
        const auto pick = rng.uniform_int(
            a, static_cast<std::int64_t>(pool.size()) - 1);
        std::swap(pool[static_cast<std::size_t>(a)],
                  pool[static_cast<std::size_t>(pick)]);
        out.push_back(pool[static_cast<std::size_t>(a)]);
    }
}

// Profile drawn proportionally to the row's headcounts.
int weighted_profile_pick(const EmploymentMatrix& e, int row, Rng& rng)
{
    const long long total = e.row_total(row);
    long long r = rng.uniform_int(0, total - 1);
    for (int p = 0; p < e.n_profiles(); ++p) {
        r -= e.count(row, p);
        if (r < 0) {
            return p;
        }
    }
    throw std::logic_error("weighted_profile_pick: empty row");
}

}  // namespace

int StepReport::total_hires() const
{
    return std::accumulate(hires.begin(), hires.end(), 0);
}

int StepReport::total_fires() const
{
    return std::accumulate(fires.begin(), fires.end(), 0);
}

int StepReport::total_quits() const
{
    return std::accumulate(quits.begin(), quits.end(), 0);
}

std::vector<NodeId> select_cn_members(const EcosystemState& s, NodeId creator,
                                      int target_size, const ModelParams& p,
                                      Rng& rng)
{
    if (target_size < 2) {
        throw std::invalid_argument("select_cn_members: target_size < 2");
    }
    const int n = s.graph.node_count();
    std::vector<char> in_pool(static_cast<std::size_t>(n) + 1, 0);
    for (NodeId u : s.graph.neighbors_within(creator, 2)) {
        in_pool[static_cast<std::size_t>(u)] = 1;
    }
    // Independent inclusion coin per outside organization, ascending id.
    for (NodeId v = 1; v <= n; ++v) {
        if (v != creator && !in_pool[static_cast<std::size_t>(v)] &&
            rng.bernoulli(p.pi_random)) {
            in_pool[static_cast<std::size_t>(v)] = 1;
        }
    }

    const int creator_profile = organization_profile(s.employment, creator);
    std::vector<NodeId> same;
    std::vector<NodeId> diff;
    for (NodeId v = 1; v <= n; ++v) {
        if (v == creator || !in_pool[static_cast<std::size_t>(v)]) {
            continue;
        }
        if (organization_profile(s.employment, v) == creator_profile) {
            same.push_back(v);
        } else {
            diff.push_back(v);
        }
    }

    const int need = std::min(target_size, n) - 1;
    int want_same = static_cast<int>(
        std::llround(p.pi_same * static_cast<double>(need)));
    want_same = std::clamp(want_same, 0, need);
    int take_same = std::min(want_same, static_cast<int>(same.size()));
    int take_diff = std::min(need - want_same, static_cast<int>(diff.size()));
    int remaining = need - take_same - take_diff;
    // Exhausted stratum: fill from the other one.
    const int spill_diff =
        std::min(remaining, static_cast<int>(diff.size()) - take_diff);
    take_diff += spill_diff;
    remaining -= spill_diff;
    const int spill_same =
        std::min(remaining, static_cast<int>(same.size()) - take_same);
    take_same += spill_same;
    remaining -= spill_same;

    std::vector<NodeId> members;
    members.reserve(static_cast<std::size_t>(need) + 1);
    members.push_back(creator);
    draw_without_replacement(same, take_same, rng, members);
    draw_without_replacement(diff, take_diff, rng, members);
    if (remaining > 0) {
        // Pool exhausted entirely: fall back to the whole organization set.
        std::vector<char> taken(static_cast<std::size_t>(n) + 1, 0);
        for (NodeId v : members) {
            taken[static_cast<std::size_t>(v)] = 1;
        }
        std::vector<NodeId> rest;
        for (NodeId v = 1; v <= n; ++v) {
            if (!taken[static_cast<std::size_t>(v)]) {
                rest.push_back(v);
            }
        }
        draw_without_replacement(rest, remaining, rng, members);
    }
    std::sort(members.begin(), members.end());
    return members;
}

std::optional<CollaborativeNetwork> maybe_create_cn(EcosystemState& s,
                                                    NodeId creator,
                                                    const ModelParams& p,
                                                    Rng& rng)
{
    if (!rng.bernoulli(p.pi_cn)) {
        return std::nullopt;
    }
    const int duration = static_cast<int>(
        rng.uniform_int(p.cn_duration_min, p.cn_duration_max));
    const int target_size = static_cast<int>(
        rng.uniform_int(p.cn_members_min, p.cn_members_max));
    CollaborativeNetwork cn;
    cn.start_time = s.clock;
    cn.duration = duration;
    cn.members = select_cn_members(s, creator, target_size, p, rng);
    if (cn.members.size() < 2) {
        return std::nullopt;  // nothing to collaborate with
    }
    for (std::size_t a = 0; a < cn.members.size(); ++a) {
        for (std::size_t b = a + 1; b < cn.members.size(); ++b) {
            s.graph.add_link(cn.members[a], cn.members[b]);
            s.pairs.add_shared(cn.members[a], cn.members[b], 1);
        }
    }
    s.active_cns.push_back(cn);
    return cn;
}

std::vector<CollaborativeNetwork> dissolve_expired(EcosystemState& s,
                                                   long long t)
{
    std::vector<CollaborativeNetwork> dissolved;
    std::vector<CollaborativeNetwork> kept;
    kept.reserve(s.active_cns.size());
    for (auto& cn : s.active_cns) {
        auto& bucket = t > cn.start_time + cn.duration ? dissolved : kept;
        bucket.push_back(std::move(cn));
    }
    s.active_cns = std::move(kept);

    for (const auto& cn : dissolved) {
        for (std::size_t a = 0; a < cn.members.size(); ++a) {
            for (std::size_t b = a + 1; b < cn.members.size(); ++b) {
                const NodeId i = cn.members[a];
                const NodeId j = cn.members[b];
                s.pairs.add_shared(i, j, -1);
                if (s.pairs.shared_active(i, j) == 0) {
                    s.pairs.set_last_collab_end(i, j, t);  // fading starts
                }
            }
        }
    }
    return dissolved;
}

double hire_probability(const EcosystemState& s, const ModelParams& p, NodeId i)
{
    const double v = organization_value(s, p, i, s.clock);
    const double n_i = static_cast<double>(s.employment.row_total(i));
    return clamp01(p.kappa_hire * v / (n_i + 1.0));
}

double fire_probability(const EcosystemState& s, const ModelParams& p, NodeId i)
{
    const double v = organization_value(s, p, i, s.clock);
    const double n_i = static_cast<double>(s.employment.row_total(i));
    return clamp01(p.kappa_fire * n_i / std::max(v, kValueEpsilon));
}

double quit_probability(const EcosystemState& s, const ModelParams& p, NodeId i)
{
    const auto& nbrs = s.graph.neighbors(i);
    if (nbrs.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (NodeId j : nbrs) {
        sum += organization_value(s, p, j, s.clock);
    }
    const double mean_neighbor = sum / static_cast<double>(nbrs.size());
    const double v = organization_value(s, p, i, s.clock);
    return clamp01(p.kappa_quit * mean_neighbor / std::max(v, kValueEpsilon));
}

NodeId choose_destination(const EcosystemState& s, NodeId source,
                          int worker_profile, const ModelParams& p, Rng& rng,
                          DestinationChoice* detail)
{
    const int n = s.graph.node_count();
    if (n < 2) {
        throw std::invalid_argument(
            "choose_destination: no other organization exists");
    }
    const bool want_local = rng.bernoulli(p.pi_local);
    const bool want_profile = rng.bernoulli(p.pi_profile);

    std::vector<NodeId> base;
    if (want_local) {
        base = s.graph.neighbors(source);
    } else {
        base.reserve(static_cast<std::size_t>(n) - 1);
        for (NodeId v = 1; v <= n; ++v) {
            if (v != source) {
                base.push_back(v);
            }
        }
    }

    std::vector<NodeId> same_profile;
    for (NodeId v : base) {
        if (organization_profile(s.employment, v) == worker_profile) {
            same_profile.push_back(v);
        }
    }

    const std::vector<NodeId>* candidates = &base;
    if (want_profile && !same_profile.empty()) {
        candidates = &same_profile;
    }
    // Profile constraint relaxed above when unsatisfiable; locality is
    // dropped last.
    std::vector<NodeId> everyone;
    if (candidates->empty()) {
        everyone.reserve(static_cast<std::size_t>(n) - 1);
        for (NodeId v = 1; v <= n; ++v) {
            if (v != source) {
                everyone.push_back(v);
            }
        }
        candidates = &everyone;
    }

    const NodeId dest = (*candidates)[static_cast<std::size_t>(rng.uniform_int(
        0, static_cast<std::int64_t>(candidates->size()) - 1))];
    if (detail) {
        detail->destination = dest;
        detail->local_applied = want_local && !base.empty();
        detail->profile_applied = want_profile && !same_profile.empty();
        detail->base_had_same_profile = !same_profile.empty();
        detail->dest_same_profile =
            organization_profile(s.employment, dest) == worker_profile;
    }
    return dest;
}

void mobility_step(EcosystemState& s, const ModelParams& p, Rng& rng,
                   StepReport& report, std::vector<QuitEvent>* quit_log)
{
    const int n = s.employment.n_orgs();
    for (NodeId i = 1; i <= n; ++i) {
        // Hire: prefer the organization's own profile from the pool.
        const bool hire = rng.bernoulli(hire_probability(s, p, i));
        if (hire && s.employment.row_total(0) > 0) {
            int prof = organization_profile(s.employment, i);
            if (s.employment.count(0, prof) == 0) {
                int best = -1;
                for (int q = 0; q < s.employment.n_profiles(); ++q) {
                    if (best < 0 ||
                        s.employment.count(0, q) > s.employment.count(0, best)) {
                        best = q;
                    }
                }
                prof = best;
            }
            s.employment.transfer(0, i, prof);
            ++report.hires[static_cast<std::size_t>(prof)];
        }

        const bool fire = rng.bernoulli(fire_probability(s, p, i));
        if (fire && s.employment.row_total(i) > 0) {
            const int prof = weighted_profile_pick(s.employment, i, rng);
            s.employment.transfer(i, 0, prof);
            ++report.fires[static_cast<std::size_t>(prof)];
        }

        const bool quit = rng.bernoulli(quit_probability(s, p, i));
        if (quit && s.employment.row_total(i) > 0 && n >= 2) {
            const int prof = weighted_profile_pick(s.employment, i, rng);
            DestinationChoice det;
            const NodeId dest = choose_destination(s, i, prof, p, rng, &det);
            s.employment.transfer(i, dest, prof);
            ++report.quits[static_cast<std::size_t>(prof)];
            if (quit_log) {
                QuitEvent ev;
                ev.source = i;
                ev.destination = dest;
                ev.profile = prof;
                ev.source_had_neighbors = !s.graph.neighbors(i).empty();
                ev.dest_is_neighbor = s.graph.has_link(i, dest);
                ev.base_had_same_profile = det.base_had_same_profile;
                ev.dest_same_profile = det.dest_same_profile;
                quit_log->push_back(ev);
            }
        }
    }
}

StepReport step(EcosystemState& s, const ModelParams& p, Rng& rng,
                std::vector<QuitEvent>* quit_log)
{
    StepReport report(s.employment.n_profiles());
    s.clock += 1;
    const long long t = s.clock;
    report.dissolved_cns = static_cast<int>(dissolve_expired(s, t).size());
    for (NodeId i = 1; i <= s.graph.node_count(); ++i) {
        if (maybe_create_cn(s, i, p, rng)) {
            ++report.created_cns;
        }
    }
    report.pruned_links = static_cast<int>(prune_links(s, p, t).size());
    mobility_step(s, p, rng, report, quit_log);
    return report;
}

void write_trace_header(std::ostream& out)
{
    out << "t,created_cns,dissolved_cns,hires,fires,quits,pruned_links,edges,"
           "active_cns\n";
}

void write_trace_row(std::ostream& out, long long t, const StepReport& r,
                     const EcosystemState& s)
{
    out << t << ',' << r.created_cns << ',' << r.dissolved_cns << ','
        << r.total_hires() << ',' << r.total_fires() << ',' << r.total_quits()
        << ',' << r.pruned_links << ',' << s.graph.edge_count() << ','
        << s.active_cns.size() << '\n';
}

}  // namespace orgsim
