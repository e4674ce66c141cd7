#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "orgsim/dynamics.hpp"
#include "orgsim/ecosystem.hpp"

using namespace orgsim;

namespace {

EcosystemState blank_state(int n_orgs, int n_profiles)
{
    return EcosystemState{Graph(n_orgs), EmploymentMatrix(n_orgs, n_profiles),
                          {}, PairState(n_orgs), 0, {}};
}

void set_row(EmploymentMatrix& e, int row, const std::vector<int>& counts)
{
    for (int p = 0; p < static_cast<int>(counts.size()); ++p) {
        e.set(row, p, counts[static_cast<std::size_t>(p)]);
    }
}

EcosystemState small_ecosystem(std::uint64_t seed, int n_orgs = 20)
{
    InitConfig cfg;
    cfg.n_orgs = n_orgs;
    cfg.n_links = n_orgs * 2;
    cfg.staffing_sd = 10.0;
    Rng rng(seed);
    return init_ecosystem(cfg, rng);
}

std::vector<long long> profile_column_totals(const EmploymentMatrix& e)
{
    std::vector<long long> totals(static_cast<std::size_t>(e.n_profiles()), 0);
    for (int row = 0; row <= e.n_orgs(); ++row) {
        for (int p = 0; p < e.n_profiles(); ++p) {
            totals[static_cast<std::size_t>(p)] += e.count(row, p);
        }
    }
    return totals;
}

bool cn_cliques_linked(const EcosystemState& s)
{
    for (const auto& cn : s.active_cns) {
        for (std::size_t a = 0; a < cn.members.size(); ++a) {
            for (std::size_t b = a + 1; b < cn.members.size(); ++b) {
                if (!s.graph.has_link(cn.members[a], cn.members[b])) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("maybe_create_cn honors pi_cn extremes")
{
    ModelParams p;
    p.pi_cn = 0.0;
    auto s = small_ecosystem(1);
    Rng rng(2);
    for (int k = 0; k < 100; ++k) {
        CHECK_FALSE(maybe_create_cn(s, 1, p, rng).has_value());
    }
    CHECK(s.active_cns.empty());

    p.pi_cn = 1.0;
    for (int k = 0; k < 50; ++k) {
        const NodeId creator = static_cast<NodeId>(1 + k % 20);
        const auto cn = maybe_create_cn(s, creator, p, rng);
        REQUIRE(cn.has_value());
        CHECK(cn->start_time == s.clock);
        CHECK(cn->duration >= p.cn_duration_min);
        CHECK(cn->duration <= p.cn_duration_max);
        CHECK(static_cast<int>(cn->members.size()) >= p.cn_members_min);
        CHECK(static_cast<int>(cn->members.size()) <= p.cn_members_max);
        CHECK(cn->has_member(creator));
        CHECK(std::is_sorted(cn->members.begin(), cn->members.end()));
        CHECK(std::adjacent_find(cn->members.begin(), cn->members.end()) ==
              cn->members.end());
    }
    CHECK(cn_cliques_linked(s));
}

TEST_CASE("select_cn_members uses the stratified pool")
{
    ModelParams p;
    auto s = blank_state(10, 2);
    // Creator 1 has profile 0; orgs 2..5 share it, 6..10 differ.
    for (int i = 1; i <= 5; ++i) {
        set_row(s.employment, i, {4, 0});
    }
    for (int i = 6; i <= 10; ++i) {
        set_row(s.employment, i, {0, 4});
    }
    for (int i = 2; i <= 10; ++i) {
        s.graph.add_link(1, i);  // everyone is a direct neighbor
    }

    SUBCASE("pi_same = 1 picks only the creator's profile")
    {
        p.pi_same = 1.0;
        p.pi_random = 0.0;
        Rng rng(3);
        for (int k = 0; k < 30; ++k) {
            const auto members = select_cn_members(s, 1, 4, p, rng);
            REQUIRE(members.size() == 4);
            for (NodeId v : members) {
                CHECK(organization_profile(s.employment, v) == 0);
            }
        }
    }

    SUBCASE("pi_same = 0 picks only other profiles")
    {
        p.pi_same = 0.0;
        p.pi_random = 0.0;
        Rng rng(4);
        const auto members = select_cn_members(s, 1, 4, p, rng);
        REQUIRE(members.size() == 4);
        for (NodeId v : members) {
            if (v != 1) {
                CHECK(organization_profile(s.employment, v) == 1);
            }
        }
    }

    SUBCASE("stratum shortfall spills over")
    {
        // Only 4 same-profile candidates exist but 6 are requested.
        p.pi_same = 1.0;
        p.pi_random = 0.0;
        Rng rng(5);
        const auto members = select_cn_members(s, 1, 7, p, rng);
        CHECK(members.size() == 7);
    }
}

TEST_CASE("select_cn_members falls back for isolated creators")
{
    ModelParams p;
    p.pi_random = 0.0;
    auto s = blank_state(8, 2);
    Rng rng(6);
    const auto members = select_cn_members(s, 3, 4, p, rng);
    REQUIRE(members.size() == 4);
    CHECK(std::count(members.begin(), members.end(), 3) == 1);
    CHECK(std::adjacent_find(members.begin(), members.end()) == members.end());
}

TEST_CASE("pi_random = 1 opens the pool to everyone")
{
    ModelParams p;
    p.pi_random = 1.0;
    p.pi_same = 0.5;
    auto s = blank_state(30, 2);  // creator has no neighbors at all
    Rng rng(7);
    std::set<NodeId> seen;
    for (int k = 0; k < 60; ++k) {
        for (NodeId v : select_cn_members(s, 1, 5, p, rng)) {
            seen.insert(v);
        }
    }
    CHECK(seen.size() == 30);  // every organization shows up eventually
}

TEST_CASE("dissolution boundary and the fading clock")
{
    auto s = blank_state(6, 2);
    CollaborativeNetwork cn{0, 5, {1, 2}};
    s.graph.add_link(1, 2);
    s.pairs.add_shared(1, 2, 1);
    s.active_cns.push_back(cn);

    CHECK(cn.active_at(5));
    CHECK_FALSE(cn.active_at(6));

    CHECK(dissolve_expired(s, 5).empty());
    CHECK(s.active_cns.size() == 1);

    const auto dissolved = dissolve_expired(s, 6);
    REQUIRE(dissolved.size() == 1);
    CHECK(s.active_cns.empty());
    CHECK(s.pairs.shared_active(1, 2) == 0);
    CHECK(s.pairs.last_collab_end(1, 2) == 6);
}

TEST_CASE("a pair in two CNs keeps its clock while one remains")
{
    auto s = blank_state(6, 2);
    s.graph.add_link(1, 2);
    s.active_cns.push_back({0, 3, {1, 2}});
    s.active_cns.push_back({0, 9, {1, 2, 3}});
    s.graph.add_link(1, 3);
    s.graph.add_link(2, 3);
    s.pairs.add_shared(1, 2, 2);
    s.pairs.add_shared(1, 3, 1);
    s.pairs.add_shared(2, 3, 1);

    const auto dissolved = dissolve_expired(s, 4);
    REQUIRE(dissolved.size() == 1);
    CHECK(s.pairs.shared_active(1, 2) == 1);
    CHECK(s.pairs.last_collab_end(1, 2) == 0);  // untouched
    CHECK(s.active_cns.size() == 1);
}

TEST_CASE("hire and fire probabilities")
{
    ModelParams p;
    auto s = blank_state(3, 2);

    SUBCASE("zero kappa or empty organization means no events")
    {
        p.kappa_hire = 0.0;
        p.kappa_fire = 0.0;
        set_row(s.employment, 1, {5, 0});
        CHECK(hire_probability(s, p, 1) == 0.0);
        CHECK(fire_probability(s, p, 1) == 0.0);
        // Organization 2 is empty and unlinked: inert either way.
        p.kappa_hire = 0.5;
        p.kappa_fire = 0.5;
        CHECK(hire_probability(s, p, 2) == 0.0);
        CHECK(fire_probability(s, p, 2) == 0.0);
    }

    SUBCASE("rates scale with the value-to-headcount ratio")
    {
        p.kappa_hire = 0.01;
        p.kappa_fire = 0.01;
        set_row(s.employment, 1, {4, 0});  // v^e = 4, n = 4
        set_row(s.employment, 2, {0, 1});
        s.graph.add_link(1, 2);
        s.pairs.add_shared(1, 2, 1);
        s.active_cns.push_back({0, 100, {1, 2}});

        p.alpha = 0.0;  // v = 4
        const double hire_base = hire_probability(s, p, 1);
        const double fire_base = fire_probability(s, p, 1);
        p.alpha = 4.0;  // v = 4 + 4 * 1 = 8, headcount unchanged
        CHECK(hire_probability(s, p, 1) ==
              doctest::Approx(2.0 * hire_base).epsilon(1e-12));
        CHECK(fire_probability(s, p, 1) ==
              doctest::Approx(0.5 * fire_base).epsilon(1e-12));
    }

    SUBCASE("probabilities are clamped to [0, 1]")
    {
        p.kappa_hire = 1e9;
        p.kappa_fire = 1e9;
        p.kappa_quit = 1e9;
        set_row(s.employment, 1, {50, 0});
        set_row(s.employment, 2, {1, 0});
        s.graph.add_link(1, 2);
        for (NodeId i : {1, 2, 3}) {
            CHECK(hire_probability(s, p, i) >= 0.0);
            CHECK(hire_probability(s, p, i) <= 1.0);
            CHECK(fire_probability(s, p, i) >= 0.0);
            CHECK(fire_probability(s, p, i) <= 1.0);
            CHECK(quit_probability(s, p, i) >= 0.0);
            CHECK(quit_probability(s, p, i) <= 1.0);
        }
    }
}

TEST_CASE("quit probability compares against the neighborhood")
{
    ModelParams p;
    p.alpha = 0.0;
    p.kappa_quit = 0.1;
    auto s = blank_state(4, 2);
    set_row(s.employment, 1, {6, 0});

    CHECK(quit_probability(s, p, 1) == 0.0);  // no neighbors

    set_row(s.employment, 2, {6, 0});
    s.graph.add_link(1, 2);
    CHECK(quit_probability(s, p, 1) == doctest::Approx(0.1));  // ratio 1

    set_row(s.employment, 2, {12, 0});  // neighbors doing better
    const double richer = quit_probability(s, p, 1);
    set_row(s.employment, 2, {3, 0});  // neighbors doing worse
    const double poorer = quit_probability(s, p, 1);
    CHECK(richer > poorer);
}

TEST_CASE("choose_destination under hard preferences")
{
    ModelParams p;
    auto s = blank_state(6, 2);
    set_row(s.employment, 1, {5, 0});
    set_row(s.employment, 2, {0, 5});
    set_row(s.employment, 3, {5, 0});  // the only same-profile neighbor
    set_row(s.employment, 4, {5, 0});
    s.graph.add_link(1, 2);
    s.graph.add_link(1, 3);

    SUBCASE("singleton candidate set")
    {
        p.pi_local = 1.0;
        p.pi_profile = 1.0;
        Rng rng(8);
        for (int k = 0; k < 50; ++k) {
            CHECK(choose_destination(s, 1, 0, p, rng) == 3);
        }
    }

    SUBCASE("no preferences: uniform over all other organizations")
    {
        p.pi_local = 0.0;
        p.pi_profile = 0.0;
        Rng rng(9);
        std::set<NodeId> seen;
        for (int k = 0; k < 300; ++k) {
            const NodeId dest = choose_destination(s, 1, 0, p, rng);
            CHECK(dest != 1);
            seen.insert(dest);
        }
        CHECK(seen.size() == 5);
    }

    SUBCASE("isolated source relaxes to the global set")
    {
        p.pi_local = 1.0;
        p.pi_profile = 1.0;
        Rng rng(10);
        for (int k = 0; k < 50; ++k) {
            const NodeId dest = choose_destination(s, 5, 0, p, rng);
            CHECK(dest != 5);
        }
    }

    SUBCASE("profile constraint relaxes before locality")
    {
        p.pi_local = 1.0;
        p.pi_profile = 1.0;
        // Source 6 has a single neighbor of the wrong profile.
        s.graph.add_link(6, 2);
        Rng rng(11);
        for (int k = 0; k < 50; ++k) {
            DestinationChoice det;
            CHECK(choose_destination(s, 6, 0, p, rng, &det) == 2);
            CHECK_FALSE(det.base_had_same_profile);
        }
    }
}

TEST_CASE("mobility respects empty pools and frozen rates")
{
    ModelParams p;
    auto s = small_ecosystem(21, 10);

    SUBCASE("no unemployed people, no hires")
    {
        // Drain the pool.
        for (int q = 0; q < 3; ++q) {
            while (s.employment.count(0, q) > 0) {
                s.employment.transfer(0, 1, q);
            }
        }
        p.kappa_hire = 10.0;
        p.kappa_fire = 0.0;
        p.kappa_quit = 0.0;
        StepReport report(3);
        Rng rng(22);
        mobility_step(s, p, rng, report);
        CHECK(report.total_hires() == 0);
    }

    SUBCASE("all kappas zero freezes the matrix")
    {
        p.kappa_hire = 0.0;
        p.kappa_fire = 0.0;
        p.kappa_quit = 0.0;
        const auto before = snapshot_json(s)["employment"];
        StepReport report(3);
        Rng rng(23);
        mobility_step(s, p, rng, report);
        CHECK(snapshot_json(s)["employment"] == before);
        CHECK(report.total_hires() + report.total_fires() +
                  report.total_quits() ==
              0);
    }

    SUBCASE("per-profile totals are conserved")
    {
        const auto before = profile_column_totals(s.employment);
        Rng rng(24);
        for (int t = 0; t < 50; ++t) {
            step(s, p, rng);
            CHECK(profile_column_totals(s.employment) == before);
        }
    }
}

TEST_CASE("step prunes initial links exactly at the closed-form time")
{
    ModelParams p;
    p.pi_cn = 0.0;
    p.kappa_hire = 0.0;
    p.kappa_fire = 0.0;
    p.kappa_quit = 0.0;
    p.fade_slope = 1.0;
    p.fade_duration = 10.0;
    p.fade_threshold = 0.4;  // crossing between steps, t* = 5 + ln(1.5)

    auto s = small_ecosystem(31);
    const std::size_t initial_edges = s.graph.edge_count();
    REQUIRE(initial_edges > 0);
    const long long expected = prune_step(p, 0);
    CHECK(expected == 6);

    Rng rng(32);
    for (long long t = 1; t < expected; ++t) {
        step(s, p, rng);
        CHECK(s.graph.edge_count() == initial_edges);
    }
    const StepReport report = step(s, p, rng);
    CHECK(s.graph.edge_count() == 0);
    CHECK(report.pruned_links == static_cast<int>(initial_edges));
}

TEST_CASE("identical seeds give identical trajectories")
{
    ModelParams p;
    auto a = small_ecosystem(41);
    auto b = small_ecosystem(41);
    Rng ra(42);
    Rng rb(42);
    for (int t = 0; t < 60; ++t) {
        step(a, p, ra);
        step(b, p, rb);
        REQUIRE(snapshot_json(a) == snapshot_json(b));
    }
}

TEST_CASE("step conserves people and organizations")
{
    ModelParams p;
    auto s = small_ecosystem(51, 30);
    const long long people = s.employment.total();
    Rng rng(52);
    for (int t = 0; t < 200; ++t) {
        step(s, p, rng);
        REQUIRE(s.employment.total() == people);
        REQUIRE(s.graph.node_count() == 30);
        REQUIRE(s.employment.n_orgs() == 30);
    }
}

TEST_CASE("active CN member pairs stay linked after every step")
{
    ModelParams p;
    p.pi_cn = 0.3;  // heavy CN churn
    auto s = small_ecosystem(61);
    Rng rng(62);
    for (int t = 0; t < 100; ++t) {
        step(s, p, rng);
        REQUIRE(cn_cliques_linked(s));
    }
}

TEST_CASE("conservation holds across randomized parameter regimes")
{
    // Spread over many random configurations; in total >= 10000 steps.
    Rng meta(71);
    long long steps_run = 0;
    for (int config = 0; config < 25; ++config) {
        ModelParams p;
        p.pi_cn = meta.uniform01();
        p.pi_random = meta.uniform01();
        p.pi_same = meta.uniform01();
        p.pi_local = meta.uniform01();
        p.pi_profile = meta.uniform01();
        p.kappa_hire = meta.uniform01();
        p.kappa_fire = meta.uniform01();
        p.kappa_quit = meta.uniform01();
        p.cn_duration_min = static_cast<int>(meta.uniform_int(1, 4));
        p.cn_duration_max =
            p.cn_duration_min + static_cast<int>(meta.uniform_int(0, 6));
        p.cn_members_min = 2;
        p.cn_members_max = static_cast<int>(meta.uniform_int(2, 8));
        p.fade_threshold = 0.05 + 0.9 * meta.uniform01();

        auto s = small_ecosystem(100 + static_cast<std::uint64_t>(config), 12);
        const long long people = s.employment.total();
        Rng rng(200 + static_cast<std::uint64_t>(config));
        for (int t = 0; t < 400; ++t) {
            step(s, p, rng);
            ++steps_run;
            REQUIRE(s.employment.total() == people);
        }
    }
    CHECK(steps_run == 10000);
}

TEST_CASE("quit log captures locality and profile facts")
{
    ModelParams p;
    p.pi_local = 1.0;
    p.pi_profile = 1.0;
    p.kappa_quit = 1.0;
    p.kappa_hire = 0.0;
    p.kappa_fire = 0.0;
    auto s = small_ecosystem(81);
    Rng rng(82);
    std::vector<QuitEvent> log;
    for (int t = 0; t < 120; ++t) {
        step(s, p, rng, &log);
    }
    REQUIRE(!log.empty());
    for (const auto& ev : log) {
        if (ev.source_had_neighbors) {
            CHECK(ev.dest_is_neighbor);
        }
        if (ev.base_had_same_profile) {
            CHECK(ev.dest_same_profile);
        }
    }
}
