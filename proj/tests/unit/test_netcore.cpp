#include <doctest.h>

#include <stdexcept>

#include "idnet/errors.hpp"
#include "idnet/network.hpp"
#include "idnet/random.hpp"
#include "idnet/scenarios.hpp"
#include "oracles.hpp"

using namespace idnet;

namespace {

IdentityAssignment labels(std::initializer_list<IdentityId> ids) {
    return IdentityAssignment(std::vector<IdentityId>(ids), 2);
}

} // namespace

TEST_CASE("degree on small fixed graphs") {
    const auto k3 = complete_graph(3);
    for (NodeId i = 0; i < 3; ++i) CHECK(k3.degree(i) == 2);

    const auto p3 = path_graph(3);
    CHECK(p3.degree(0) == 1);
    CHECK(p3.degree(1) == 2);
    CHECK(p3.degree(2) == 1);

    const auto cliques = two_cliques_bridge(5);
    CHECK(cliques.degree(0) == 5);
    CHECK(cliques.degree(5) == 5);
    CHECK(cliques.degree(1) == 4);
    CHECK(cliques.edge_count() == 21);

    CHECK_THROWS_AS((void)p3.degree(3), std::out_of_range);
}

TEST_CASE("network construction validates input") {
    const std::vector<Edge> loop{{0, 1}, {2, 2}};
    CHECK_THROWS_WITH_AS(Network(3, loop), "self-loop at edge index 1", InputError);

    const std::vector<Edge> far{{0, 1}, {1, 5}};
    CHECK_THROWS_WITH_AS(Network(3, far), "endpoint out of range at edge index 1", InputError);

    const std::vector<Edge> split{{0, 1}, {2, 3}};
    CHECK_THROWS_WITH_AS(Network(4, split), "network is not connected", InputError);
    CHECK_NOTHROW(Network(4, split, Connectivity::Relaxed));

    const std::vector<Edge> dup{{0, 1}, {1, 0}, {0, 1}, {1, 2}};
    const Network net(3, dup);
    CHECK(net.edge_count() == 2);
    CHECK(net.has_edge(1, 0));
    CHECK(!net.has_edge(0, 2));

    CHECK_THROWS_AS(Network::from_adjacency({{0, 1}, {0, 0}}), InputError);
    CHECK_THROWS_AS(Network::from_adjacency({{1, 1}, {1, 0}}), InputError);
    CHECK(Network::from_adjacency({{0, 1}, {1, 0}}).edge_count() == 1);
}

TEST_CASE("identity set and population invariants") {
    CHECK_THROWS_AS(IdentitySet({{"A", 1.0, 1.0}}), InputError);
    CHECK_THROWS_AS(IdentitySet({{"A", 1.0, 1.0}, {"A", 0.0, 0.5}}), InputError);
    CHECK_THROWS_AS(IdentitySet({{"A", 1.0, -1.0}, {"B", 0.0, 0.5}}), InputError);

    const IdentitySet ok({{"A", 1.0, 1.5}, {"B", 0.5, 0.5}});
    CHECK(ok.pairing_warnings().empty());
    CHECK(ok.index_of("B") == 1);
    CHECK_THROWS_WITH_AS(ok.index_of("Z"), "unknown identity label 'Z'", InputError);

    // Higher prescribed action with lower status is legal but flagged.
    const IdentitySet odd({{"A", 0.2, 2.0}, {"B", 0.5, 0.5}});
    CHECK(odd.pairing_warnings().size() == 1);

    CHECK_THROWS_WITH_AS(Population({1.0, 0.0}, 0.5, 1.0, 1.0), "ability must be positive at index 1",
                         InputError);
    CHECK_THROWS_AS(Population({1.0}, -0.5, 1.0, 1.0), InputError);
    CHECK(Population::homogeneous(4, 2.0, 0.5, 1.0, 1.0).common_ability() == 2.0);
    CHECK_THROWS_AS((void)Population({1.0, 2.0}, 0.5, 1.0, 1.0).common_ability(), InputError);
}

TEST_CASE("typed degree counts neighbours by identity") {
    const auto p3 = path_graph(3);
    const auto aba = labels({0, 1, 0});
    CHECK(typed_degree(p3, aba, 1, 0) == 2);
    CHECK(typed_degree(p3, aba, 1, 1) == 0);
    // Independent of the node's own identity.
    CHECK(typed_degree(p3, aba.with(1, 0), 1, 0) == 2);

    const auto cliques = two_cliques_bridge(5);
    std::vector<IdentityId> ids(10, 0);
    for (NodeId i = 5; i < 10; ++i) ids[i] = 1;
    const IdentityAssignment split(ids, 2);
    CHECK(typed_degree(cliques, split, 0, 1) == 1);
    CHECK(typed_degree(cliques, split, 0, 0) == 4);
    CHECK_THROWS_AS((void)typed_degree(cliques, split, 0, 2), InputError);
}

TEST_CASE("typed degrees partition the neighbourhood") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.below(15);
        const auto net = oracle::random_connected_graph(rng, n, 0.3);
        std::vector<IdentityId> ids(n);
        for (auto& id : ids) id = rng.below(3);
        const IdentityAssignment assign(ids, 3);
        for (NodeId i = 0; i < n; ++i) {
            std::size_t total = 0;
            for (IdentityId I = 0; I < 3; ++I) total += typed_degree(net, assign, i, I);
            CHECK(total == net.degree(i));
        }
    }
}

TEST_CASE("same-identity row matrix") {
    const Network pair(2, std::vector<Edge>{{0, 1}});
    const auto m2 = same_identity_row_matrix(pair, IdentityAssignment::uniform(2, 0, 2), 0);
    CHECK(m2.weights(0, 1) == 1.0);
    CHECK(m2.weights(1, 0) == 1.0);
    CHECK(m2.weights(0, 0) == 0.0);

    const auto m3 = same_identity_row_matrix(complete_graph(3), IdentityAssignment::uniform(3, 0, 2), 0);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) CHECK(m3.weights(i, j) == (i == j ? 0.0 : 0.5));
    }

    // Node 1 (identity B) has only A neighbours.
    const auto mb = same_identity_row_matrix(path_graph(3), labels({0, 1, 0}), 1);
    REQUIRE(mb.members == std::vector<NodeId>{1});
    CHECK(mb.weights(0, 0) == 0.0);
}

TEST_CASE("same-identity rows are stochastic or zero") {
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng.below(20);
        const auto net = oracle::random_connected_graph(rng, n, 0.2);
        std::vector<IdentityId> ids(n);
        for (auto& id : ids) id = rng.below(2);
        const IdentityAssignment assign(ids, 2);
        for (IdentityId I = 0; I < 2; ++I) {
            const auto m = same_identity_row_matrix(net, assign, I);
            for (Eigen::Index r = 0; r < m.weights.rows(); ++r) {
                CHECK(m.weights.row(r).minCoeff() >= 0.0);
                const double s = m.weights.row(r).sum();
                const bool isolated = typed_degree(net, assign, m.members[r], I) == 0;
                CHECK(s == doctest::Approx(isolated ? 0.0 : 1.0).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("link difference") {
    // Triangle 0-1-2 with pendant 3 on node 2.
    const Network tri(4, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {2, 3}});
    const std::vector<NodeId> s{0, 1, 2};
    const auto view = link_difference(tri, s);
    CHECK(view.k(0) == 2);
    CHECK(view.k(1) == 2);
    CHECK(view.k(2) == 1);

    const auto cliques = two_cliques_bridge(5);
    const std::vector<NodeId> left{0, 1, 2, 3, 4};
    const auto lv = link_difference(cliques, left);
    CHECK(lv.k(0) == 3);
    for (NodeId i = 1; i < 5; ++i) CHECK(lv.k(i) == 4);

    std::vector<NodeId> all(10);
    for (NodeId i = 0; i < 10; ++i) all[i] = i;
    const auto whole = link_difference(cliques, all);
    for (NodeId i = 0; i < 10; ++i) CHECK(whole.k(i) == static_cast<long>(cliques.degree(i)));

    CHECK_THROWS_AS(link_difference(cliques, std::vector<NodeId>{}), InputError);
    CHECK_THROWS_AS(link_difference(cliques, std::vector<NodeId>{3, 12}), InputError);
    CHECK_THROWS_AS((void)lv.k(7), InputError);
}

TEST_CASE("removing one member lowers neighbours' k by two") {
    Rng rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 3 + rng.below(12);
        const auto net = oracle::random_connected_graph(rng, n, 0.35);
        std::vector<NodeId> s;
        for (NodeId i = 0; i < n; ++i) {
            if (rng.uniform() < 0.7) s.push_back(i);
        }
        if (s.size() < 2) continue;
        const auto before = link_difference(net, s);
        const NodeId j = s[rng.below(s.size())];
        std::vector<NodeId> rest;
        for (NodeId i : s) {
            if (i != j) rest.push_back(i);
        }
        const auto after = link_difference(net, rest);
        for (NodeId i : rest) {
            const long expected = before.k(i) - (net.has_edge(i, j) ? 2 : 0);
            CHECK(after.k(i) == expected);
            CHECK(after.inside[std::distance(rest.begin(), std::find(rest.begin(), rest.end(), i))] +
                      after.outside[std::distance(rest.begin(),
                                                  std::find(rest.begin(), rest.end(), i))] ==
                  net.degree(i));
        }
    }
}

TEST_CASE("identity assignment bookkeeping") {
    const IdentitySet ids({{"A", 1.0, 1.5}, {"B", 0.5, 0.5}});
    const std::vector<std::string> names{"A", "B", "B"};
    const auto assign = IdentityAssignment::from_labels(names, ids);
    CHECK(assign.count(0) == 1);
    CHECK(assign.counts() == std::vector<std::size_t>{1, 2});
    CHECK(assign.members(1) == std::vector<NodeId>{1, 2});

    const std::vector<std::string> bad{"A", "C"};
    CHECK_THROWS_AS(IdentityAssignment::from_labels(bad, ids), InputError);
    CHECK_THROWS_AS(IdentityAssignment({0, 2}, 2), InputError);

    const Model ok(path_graph(3), ids, Population::homogeneous(3, 1.0, 0.5, 1.0, 1.0));
    CHECK_THROWS_AS(Model(path_graph(3), ids, Population::homogeneous(4, 1.0, 0.5, 1.0, 1.0)),
                    InputError);
}
