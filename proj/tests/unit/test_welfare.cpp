#include <doctest.h>

#include <cmath>

#include "idnet/actions.hpp"
#include "idnet/errors.hpp"
#include "idnet/identity_game.hpp"
#include "idnet/scenarios.hpp"
#include "idnet/welfare.hpp"
#include "oracles.hpp"

using namespace idnet;

TEST_CASE("welfare totals match the per-individual sums") {
    Rng rng(50);
    for (int k = 0; k < 20; ++k) {
        const std::size_t n = 2 + rng.below(15);
        const auto net = oracle::random_connected_graph(rng, n, 0.3);
        std::vector<double> w(n);
        for (auto& wi : w) wi = rng.uniform(0.5, 2);
        const Model model(net, IdentitySet({{"A", 1.0, 1.4}, {"B", 0.3, 0.6}}),
                          Population(w, 0.7, 0.9, 1.1));
        std::vector<IdentityId> ids(n);
        for (auto& id : ids) id = rng.below(2);
        const IdentityAssignment assign(ids, 2);
        const auto p = solve_actions(model, assign);
        const auto report = welfare(model, assign, p);
        double u = 0.0, x = 0.0;
        for (NodeId i = 0; i < n; ++i) {
            u += oracle::utility(net, assign, p.x, i, w, 0.7, 0.9, 1.1, {1.0, 0.3}, {1.4, 0.6});
            x += p.x[i];
        }
        CHECK(report.total_utility == doctest::Approx(u).epsilon(1e-12));
        CHECK(report.total_action == doctest::Approx(x).epsilon(1e-12));
        double parts = 0.0;
        std::size_t members = 0;
        for (const auto& b : report.by_identity) {
            parts += b.total_utility;
            members += b.members;
        }
        CHECK(parts == doctest::Approx(report.total_utility));
        CHECK(members == n);
    }
}

TEST_CASE("all-X profiles under homogeneous abilities") {
    Rng rng(51);
    for (int k = 0; k < 20; ++k) {
        const std::size_t n = 2 + rng.below(12);
        const auto net = oracle::random_connected_graph(rng, n, 0.3);
        const double w = rng.uniform(0.5, 2), g = rng.uniform(0, 2), beta = rng.uniform(0.1, 1);
        const IdentitySet ids({{"A", rng.uniform(0, 2), rng.uniform(0, 3)}, {"B", rng.uniform(0, 2), rng.uniform(0, 3)}});
        const Model model(net, ids, Population::homogeneous(n, w, rng.uniform(0, 1), beta, g));
        const auto rows = welfare_comparison(model, IdentityAssignment::uniform(n, 0, 2));
        REQUIRE(rows.size() == 3);
        CHECK(rows[1].label == "all-A");
        CHECK(rows[2].label == "all-B");
        const double va = oracle::intrinsic_value(ids[0].status, ids[0].prescribed_action, w, g);
        const double vb = oracle::intrinsic_value(ids[1].status, ids[1].prescribed_action, w, g);
        const auto delta = compare(rows[2].report, rows[1].report);
        CHECK(delta.utility == doctest::Approx(static_cast<double>(n) * (va - vb)).epsilon(1e-10));
        const double xa = (1 + g * ids[0].prescribed_action) / (g + 1 / w);
        CHECK(rows[1].report.total_action == doctest::Approx(static_cast<double>(n) * xa).epsilon(1e-12));

        // Best all-X welfare goes to the larger intrinsic value; best
        // all-X total action to the larger prescription.
        const bool a_wins = rows[1].report.total_utility >= rows[2].report.total_utility;
        CHECK(a_wins == (va >= vb));
        const bool a_acts = rows[1].report.total_action >= rows[2].report.total_action;
        CHECK(a_acts == (ids[0].prescribed_action >= ids[1].prescribed_action));
    }
}

TEST_CASE("split two-clique equilibrium loses intrinsic value and the bridge") {
    const auto net = two_cliques_bridge(5);
    const double w = 1.0, g = 1.0, beta = 0.7;
    const IdentitySet ids({{"A", 1.0, 1.5}, {"B", 0.8, 0.5}});
    const Model model(net, ids, Population::homogeneous(10, w, 0.5, beta, g));
    std::vector<IdentityId> split(10, 0);
    for (NodeId i = 5; i < 10; ++i) split[i] = 1;
    const auto all_a = welfare(model, IdentityAssignment::uniform(10, 0, 2));
    const auto mixed = welfare(model, IdentityAssignment(split, 2));
    const double va = oracle::intrinsic_value(1.0, 1.5, w, g), vb = oracle::intrinsic_value(0.8, 0.5, w, g);
    CHECK(all_a.total_utility - mixed.total_utility == doctest::Approx(5 * (va - vb) + 2 * beta).epsilon(1e-12));
}

TEST_CASE("mixed equilibria never beat the best all-X profile") {
    Rng rng(52);
    for (int k = 0; k < 15; ++k) {
        const std::size_t n = 3 + rng.below(9);
        const auto net = oracle::random_connected_graph(rng, n, 0.4);
        const Model model(net, IdentitySet({{"A", 1.0, 1.2}, {"B", rng.uniform(0.5, 1.5), rng.uniform(0, 2)}}),
                          Population::homogeneous(n, 1.0, 0.5, rng.uniform(0.1, 1.0), 1.0));
        const double c = relative_cost(model).c;
        const auto rows = welfare_comparison(model, IdentityAssignment::uniform(n, 0, 2));
        const double best = std::max(rows[1].report.total_utility, rows[2].report.total_utility);
        for (const auto& eq : enumerate_equilibria(net, c)) {
            CHECK(welfare(model, eq).total_utility <= best + 1e-10);
        }
    }
}

TEST_CASE("welfare example 1") {
    const auto pop = Population::homogeneous(4, 1.0, 0.5, 0.2, 1.0);
    const auto r = example1_check(pop, example1_identities(1.0, 1.0, 0.9));
    CHECK(r.bracket == doctest::Approx(0.4375));
    CHECK(r.intrinsic_a - r.intrinsic_b == doctest::Approx(0.1));
    CHECK(r.low_coordination_persists); // 0.8 < 0.9
    CHECK(r.c == doctest::Approx(-0.5));

    const auto zero = example1_check(Population::homogeneous(4, 1.0, 0.5, 0.0, 1.0),
                                     example1_identities(1.0, 1.0, 0.9));
    CHECK(!zero.low_coordination_persists);
    CHECK(std::isnan(zero.c));

    CHECK_THROWS_AS(example1_check(pop, IdentitySet({{"A", 1.0, 1.4}, {"B", 0.9, 0.5}})), InputError);
    CHECK_THROWS_AS(example1_check(pop, example1_identities(1.0, 0.5, 0.9)), InputError);
}

TEST_CASE("welfare example 2") {
    const auto ids = example2_identities(1.0, 1.0, 0.8);
    const auto r = example2_check(Population::homogeneous(4, 1.0, 0.5, 0.1, 1.0), ids);
    CHECK(r.low_status_intrinsically_better); // 0.4 < 0.5
    CHECK(r.prescription_cost == doctest::Approx(0.25));
    CHECK(r.high_coordination_persists); // 0.1 > 0.05 > 0
    CHECK(r.intrinsic_b > r.intrinsic_a);

    const auto big_gap = example2_check(Population::homogeneous(4, 1.0, 0.5, 0.1, 1.0),
                                        example2_identities(1.0, 1.0, 0.7));
    CHECK(!big_gap.low_status_intrinsically_better);
    CHECK(!big_gap.high_coordination_persists);
    CHECK(big_gap.intrinsic_a >= big_gap.intrinsic_b);

    CHECK_THROWS_AS(example2_check(Population::homogeneous(4, 1.0, 0.5, 0.1, 1.0), example1_identities(1.0, 1.0, 0.8)),
                    InputError);
}
