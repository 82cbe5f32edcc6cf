#include <doctest.h>

#include "idnet/errors.hpp"
#include "idnet/identity_game.hpp"
#include "idnet/scenarios.hpp"

using namespace idnet;

namespace {

ScenarioConfig config(ScenarioKind kind, std::size_t n, std::size_t d, std::uint64_t seed) {
    ScenarioConfig c;
    c.kind = kind;
    c.n = n;
    c.degree = d;
    c.seed = seed;
    return c;
}

bool same_graph(const Network& a, const Network& b) { return a.size() == b.size() && a.edges() == b.edges(); }

} // namespace

TEST_CASE("fixed topologies") {
    const auto path = generate(config(ScenarioKind::Path, 3, 0, 0));
    CHECK(path.network.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK(path.assignment == IdentityAssignment::uniform(3, kIdentityB, 2));

    auto cc = config(ScenarioKind::TwoCliquesBridge, 0, 0, 0);
    cc.clique_size = 5;
    const auto cliques = generate(cc);
    CHECK(cliques.network.size() == 10);
    CHECK(cliques.network.edge_count() == 21);
    CHECK(cliques.network.has_edge(0, 5));
    CHECK(cliques.assignment.count(kIdentityA) == 5);

    CHECK(ring_graph(6).min_degree() == 2);
    CHECK(star_graph(6).degree(0) == 5);
    CHECK(complete_graph(6).edge_count() == 15);
    CHECK(figure2_chain_analog().size() == 8);
    CHECK_THROWS_AS(generate(config(ScenarioKind::Ring, 2, 0, 0)), InputError);
}

TEST_CASE("random regular graphs pass a degree audit and are reproducible") {
    for (std::size_t d : {2u, 3u, 4u, 6u}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            Rng a(seed), b(seed);
            const auto g1 = random_regular_graph(20, d, a);
            const auto g2 = random_regular_graph(20, d, b);
            CHECK(same_graph(g1, g2));
            CHECK(g1.is_connected());
            for (NodeId i = 0; i < 20; ++i) CHECK(g1.degree(i) == d);
        }
    }
    Rng rng(1);
    CHECK_THROWS_AS(random_regular_graph(7, 3, rng), InputError);
    CHECK_THROWS_AS(random_regular_graph(5, 5, rng), InputError);
}

TEST_CASE("cafeteria 1") {
    const auto s = generate(config(ScenarioKind::Cafeteria1, 20, 4, 7));
    CHECK(s.connectivity_relaxed);
    CHECK(!s.network.is_connected());
    CHECK(s.assignment.count(kIdentityA) == 10);
    CHECK(s.assignment.count(kIdentityB) == 10);
    for (NodeId i = 0; i < 20; ++i) {
        CHECK(s.network.degree(i) == 4);
        for (NodeId j : s.network.neighbors(i)) CHECK(s.assignment[i] == s.assignment[j]);
    }

    auto bridged = config(ScenarioKind::Cafeteria1, 20, 4, 7);
    bridged.cafeteria_bridge = true;
    const auto b = generate(bridged);
    CHECK(!b.connectivity_relaxed);
    CHECK(b.network.is_connected());
    CHECK(b.network.edge_count() == s.network.edge_count() + 1);

    CHECK(same_graph(generate(config(ScenarioKind::Cafeteria1, 20, 4, 7)).network, s.network));
    CHECK_THROWS_AS(generate(config(ScenarioKind::Cafeteria1, 21, 4, 7)), InputError);
    CHECK_THROWS_AS(generate(config(ScenarioKind::Cafeteria1, 20, 10, 7)), InputError);
}

TEST_CASE("cafeteria 2") {
    const auto s = generate(config(ScenarioKind::Cafeteria2, 20, 4, 7));
    CHECK(s.network.is_connected());
    CHECK(s.assignment.count(kIdentityA) == 10);
    for (NodeId i = 0; i < 20; ++i) CHECK(s.network.degree(i) == 4);

    auto homo = config(ScenarioKind::Cafeteria2, 40, 4, 3);
    homo.homophily = 0.9;
    const auto h = generate(homo);
    const auto u = generate(config(ScenarioKind::Cafeteria2, 40, 4, 3));
    auto cross = [](const Scenario& sc) {
        std::size_t k = 0;
        for (auto [i, j] : sc.network.edges()) k += sc.assignment[i] != sc.assignment[j];
        return k;
    };
    CHECK(cross(h) < cross(u));
}

TEST_CASE("initial rules") {
    auto cfg = config(ScenarioKind::Cafeteria2, 10, 3, 1);
    cfg.initial = InitialRule::AllA;
    CHECK(generate(cfg).assignment == IdentityAssignment::uniform(10, kIdentityA, 2));
    cfg.initial = InitialRule::Custom;
    cfg.custom = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
    CHECK(generate(cfg).assignment == IdentityAssignment(cfg.custom, 2));
    cfg.custom = {0, 1};
    CHECK_THROWS_AS(generate(cfg), InputError);

    CHECK(scenario_kind_from_string("two-cliques-bridge") == ScenarioKind::TwoCliquesBridge);
    CHECK(to_string(ScenarioKind::Cafeteria1) == "cafeteria-1");
    CHECK(initial_rule_from_string("all-B") == InitialRule::AllB);
    CHECK_THROWS_AS(scenario_kind_from_string("lattice"), InputError);
}

TEST_CASE("scenario 1 policy region") {
    const auto s = generate(config(ScenarioKind::Cafeteria1, 20, 4, 7));
    const auto inside = policy_solution_check(s.network, s.assignment, -1.0, ScenarioKind::Cafeteria1);
    CHECK(inside.inherited_is_equilibrium);
    CHECK(inside.agrees);

    const auto below = policy_solution_check(s.network, s.assignment, -5.0, ScenarioKind::Cafeteria1);
    CHECK(!below.inherited_is_equilibrium);
    CHECK(below.violators.size() == 10);
    for (NodeId i : below.violators) CHECK(s.assignment[i] == kIdentityB);

    const auto edge = policy_solution_check(s.network, s.assignment, 4.0, ScenarioKind::Cafeteria1);
    CHECK(edge.inherited_is_equilibrium);
    const auto lower_edge = policy_solution_check(s.network, s.assignment, -4.0, ScenarioKind::Cafeteria1);
    CHECK(!lower_edge.inherited_is_equilibrium);

    CHECK_THROWS_AS(policy_solution_check(s.network, s.assignment, 0.0, ScenarioKind::Ring), InputError);
}

TEST_CASE("scenario 2 consensus") {
    const auto s = generate(config(ScenarioKind::Cafeteria2, 20, 4, 7));
    const auto high = policy_solution_check(s.network, s.assignment, -3.0, ScenarioKind::Cafeteria2);
    REQUIRE(high.consensus);
    CHECK(*high.consensus == kIdentityA);
    CHECK(high.final_a_fraction == 1.0);
    const auto low = policy_solution_check(s.network, s.assignment, 3.0, ScenarioKind::Cafeteria2);
    REQUIRE(low.consensus);
    CHECK(*low.consensus == kIdentityB);
    CHECK(!high.in_boundary_band);
    CHECK(scenario2_boundary_band(2.0));
    CHECK(!scenario2_boundary_band(-2.0));
    CHECK(policy_c_grid(2).front() == -3.0);
    CHECK(policy_c_grid(2).back() == 3.0);
}
