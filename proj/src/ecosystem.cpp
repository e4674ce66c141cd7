#include "orgsim/ecosystem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "orgsim/generators.hpp"

namespace orgsim {

// ---------------------------------------------------------------- employment

EmploymentMatrix::EmploymentMatrix(int n_orgs, int n_profiles)
    : n_orgs_(n_orgs), n_profiles_(n_profiles)
{
    if (n_orgs < 1 || n_profiles < 1) {
        throw std::invalid_argument(
            "EmploymentMatrix: need at least one organization and one profile");
    }
    counts_.assign(static_cast<std::size_t>(n_orgs + 1) * n_profiles, 0);
}

std::size_t EmploymentMatrix::idx(int row, int profile) const
{
    return static_cast<std::size_t>(row) * n_profiles_ + profile;
}

void EmploymentMatrix::check(int row, int profile) const
{
    if (row < 0 || row > n_orgs_) {
        throw std::out_of_range("EmploymentMatrix: row " + std::to_string(row));
    }
    if (profile < 0 || profile >= n_profiles_) {
        throw std::out_of_range("EmploymentMatrix: profile " +
                                std::to_string(profile));
    }
}

int EmploymentMatrix::count(int row, int profile) const
{
    check(row, profile);
    return counts_[idx(row, profile)];
}

void EmploymentMatrix::set(int row, int profile, int value)
{
    check(row, profile);
    if (value < 0) {
        throw std::invalid_argument("EmploymentMatrix: negative count");
    }
    counts_[idx(row, profile)] = value;
}

long long EmploymentMatrix::row_total(int row) const
{
    check(row, 0);
    long long sum = 0;
    for (int p = 0; p < n_profiles_; ++p) {
        sum += counts_[idx(row, p)];
    }
    return sum;
}

long long EmploymentMatrix::total() const
{
    long long sum = 0;
    for (int c : counts_) {
        sum += c;
    }
    return sum;
}

void EmploymentMatrix::transfer(int from_row, int to_row, int profile)
{
    check(from_row, profile);
    check(to_row, profile);
    int& src = counts_[idx(from_row, profile)];
    if (src <= 0) {
        throw std::logic_error("EmploymentMatrix: transfer from empty cell");
    }
    --src;
    ++counts_[idx(to_row, profile)];
}

// ------------------------------------------------------------------ CN/pairs

bool CollaborativeNetwork::has_member(NodeId v) const
{
    return std::binary_search(members.begin(), members.end(), v);
}

PairState::PairState(int n_orgs) : n_(n_orgs)
{
    if (n_orgs < 1) {
        throw std::invalid_argument("PairState: need at least one organization");
    }
    const std::size_t cells =
        static_cast<std::size_t>(n_orgs) * (n_orgs - 1) / 2;
    last_end_.assign(cells, 0);
    shared_.assign(cells, 0);
}

std::size_t PairState::idx(NodeId i, NodeId j) const
{
    if (i < 1 || j < 1 || i > n_ || j > n_ || i == j) {
        throw std::out_of_range("PairState: invalid pair (" +
                                std::to_string(i) + ", " + std::to_string(j) +
                                ")");
    }
    if (i > j) {
        std::swap(i, j);
    }
    // Triangular layout: row i (1-based) starts after the pairs of rows < i.
    const std::size_t row_offset =
        static_cast<std::size_t>(i - 1) * n_ -
        static_cast<std::size_t>(i) * (i - 1) / 2;
    return row_offset + static_cast<std::size_t>(j - i - 1);
}

long long PairState::last_collab_end(NodeId i, NodeId j) const
{
    return last_end_[idx(i, j)];
}

void PairState::set_last_collab_end(NodeId i, NodeId j, long long t)
{
    last_end_[idx(i, j)] = t;
}

int PairState::shared_active(NodeId i, NodeId j) const
{
    return shared_[idx(i, j)];
}

void PairState::add_shared(NodeId i, NodeId j, int delta)
{
    int& c = shared_[idx(i, j)];
    c += delta;
    if (c < 0) {
        throw std::logic_error("PairState: shared CN count went negative");
    }
}

// --------------------------------------------------------------- value model

int organization_profile(const EmploymentMatrix& e, NodeId i)
{
    if (i < 1 || i > e.n_orgs()) {
        throw std::out_of_range("organization_profile: invalid organization " +
                                std::to_string(i));
    }
    int best = 0;
    int best_count = e.count(i, 0);
    for (int p = 1; p < e.n_profiles(); ++p) {
        if (e.count(i, p) > best_count) {
            best = p;
            best_count = e.count(i, p);
        }
    }
    return best;
}

double employee_value(const EcosystemState& s, const ModelParams& p, NodeId i)
{
    const int own = organization_profile(s.employment, i);
    double v = 0.0;
    for (int q = 0; q < s.employment.n_profiles(); ++q) {
        const double c = s.employment.count(i, q);
        v += (q == own) ? c : p.rho * c;
    }
    return v;
}

double fading_synergy(double fade_slope, double fade_duration, double t_omega,
                      double t)
{
    // 1 - 1/(1 + e^x), written as the stable logistic so the deep tail keeps
    // decreasing instead of flushing to zero.
    const double x = fade_slope * (fade_duration / 2.0 + t_omega - t);
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double ex = std::exp(x);
    return ex / (1.0 + ex);
}

long long prune_step(const ModelParams& p, long long t_omega)
{
    // Continuous crossing time of the threshold; the link survives any step
    // where the value is still >= f_t, so the first pruning step is the next
    // integer strictly past the crossing. A crossing before t_omega means the
    // curve starts below the threshold and the link goes at t_omega already.
    const double t_star =
        static_cast<double>(t_omega) + p.fade_duration / 2.0 +
        std::log(1.0 / p.fade_threshold - 1.0) / p.fade_slope;
    const double up = std::ceil(t_star);
    const long long first = static_cast<long long>(up) + (up == t_star ? 1 : 0);
    return std::max(first, t_omega);
}

namespace {

int active_cn_count_of(const EcosystemState& s, NodeId i, long long t)
{
    int count = 0;
    for (const auto& cn : s.active_cns) {
        if (cn.active_at(t) && cn.has_member(i)) {
            ++count;
        }
    }
    return count;
}

}  // namespace

double pair_synergy(const EcosystemState& s, const ModelParams& p, NodeId i,
                    NodeId j, long long t)
{
    if (i == j) {
        throw std::invalid_argument("pair_synergy: i == j");
    }
    const int shared = s.pairs.shared_active(i, j);
    if (shared > 0) {
        const int count = p.synergy_count_mode == SynergyCountMode::shared_cns
                              ? shared
                              : active_cn_count_of(s, i, t);
        return 1.0 + std::log(static_cast<double>(count));
    }
    return fading_synergy(p.fade_slope, p.fade_duration,
                          static_cast<double>(s.pairs.last_collab_end(i, j)),
                          static_cast<double>(t));
}

double synergy_value(const EcosystemState& s, const ModelParams& p, NodeId i,
                     long long t)
{
    const int own = organization_profile(s.employment, i);
    double v = 0.0;
    for (NodeId j : s.graph.neighbors(i)) {
        const double ps = pair_synergy(s, p, i, j, t);
        v += (organization_profile(s.employment, j) == own) ? p.theta_same * ps
                                                            : ps;
    }
    return v;
}

double organization_value(const EcosystemState& s, const ModelParams& p,
                          NodeId i, long long t)
{
    return employee_value(s, p, i) + p.alpha * synergy_value(s, p, i, t);
}

std::vector<std::pair<NodeId, NodeId>> prune_links(EcosystemState& s,
                                                   const ModelParams& p,
                                                   long long t)
{
    std::vector<std::pair<NodeId, NodeId>> removed;
    for (const auto& [i, j] : s.graph.edges()) {
        if (s.pairs.shared_active(i, j) > 0) {
            continue;  // backed by an active CN, never pruned
        }
        const double v = fading_synergy(
            p.fade_slope, p.fade_duration,
            static_cast<double>(s.pairs.last_collab_end(i, j)),
            static_cast<double>(t));
        if (v < p.fade_threshold) {
            removed.emplace_back(i, j);
        }
    }
    for (const auto& [i, j] : removed) {
        s.graph.remove_link(i, j);
    }
    return removed;
}

// --------------------------------------------------------------------- init

std::vector<int> initial_unemployed_counts(long long total_employees,
                                           double unemployment_rate,
                                           int n_profiles)
{
    const long long pool =
        std::llround(unemployment_rate * static_cast<double>(total_employees));
    const long long base = pool / n_profiles;
    const long long rem = pool % n_profiles;
    std::vector<int> out(static_cast<std::size_t>(n_profiles));
    for (int p = 0; p < n_profiles; ++p) {
        out[static_cast<std::size_t>(p)] =
            static_cast<int>(base + (p < rem ? 1 : 0));
    }
    return out;
}

EcosystemState init_ecosystem(const InitConfig& cfg, Rng& rng)
{
    if (static_cast<int>(cfg.profile_names.size()) != cfg.n_profiles) {
        throw std::invalid_argument(
            "init_ecosystem: profile_names must match n_profiles");
    }
    Graph graph =
        cfg.generator == GeneratorKind::erdos_renyi
            ? erdos_renyi(cfg.n_orgs, cfg.n_links, rng)
            : barabasi_albert(cfg.n_orgs, cfg.ba_attach_per_node,
                              cfg.ba_seed_size, rng);

    EmploymentMatrix employment(cfg.n_orgs, cfg.n_profiles);
    // Folded normal staffing: lots of micro and small organizations, a few
    // large ones.
    for (int i = 1; i <= cfg.n_orgs; ++i) {
        for (int p = 0; p < cfg.n_profiles; ++p) {
            const double draw = rng.normal(0.0, cfg.staffing_sd);
            employment.set(i, p,
                           static_cast<int>(std::floor(std::abs(draw))));
        }
    }
    const auto pool = initial_unemployed_counts(
        employment.total(), cfg.unemployment_rate, cfg.n_profiles);
    for (int p = 0; p < cfg.n_profiles; ++p) {
        employment.set(0, p, pool[static_cast<std::size_t>(p)]);
    }

    return EcosystemState{std::move(graph), std::move(employment),
                          {}, PairState(cfg.n_orgs), 0, cfg.profile_names};
}

// ------------------------------------------------------------------ snapshot

nlohmann::json snapshot_json(const EcosystemState& s)
{
    nlohmann::json out;
    out["clock"] = s.clock;
    auto edges = nlohmann::json::array();
    for (const auto& [i, j] : s.graph.edges()) {
        edges.push_back({i, j});
    }
    out["edges"] = std::move(edges);
    auto employment = nlohmann::json::array();
    for (int row = 0; row <= s.employment.n_orgs(); ++row) {
        auto r = nlohmann::json::array();
        for (int p = 0; p < s.employment.n_profiles(); ++p) {
            r.push_back(s.employment.count(row, p));
        }
        employment.push_back(std::move(r));
    }
    out["employment"] = std::move(employment);
    auto cns = nlohmann::json::array();
    for (const auto& cn : s.active_cns) {
        cns.push_back({{"start", cn.start_time},
                       {"duration", cn.duration},
                       {"members", cn.members}});
    }
    out["active_cns"] = std::move(cns);
    auto t_omega = nlohmann::json::object();
    for (NodeId i = 1; i <= s.graph.node_count(); ++i) {
        for (NodeId j = i + 1; j <= s.graph.node_count(); ++j) {
            const long long t = s.pairs.last_collab_end(i, j);
            if (t != 0) {
                t_omega[std::to_string(i) + "," + std::to_string(j)] = t;
            }
        }
    }
    out["t_omega"] = std::move(t_omega);
    return out;
}

}  // namespace orgsim
