#include "idnet/scenarios.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "idnet/cascade.hpp"
#include "idnet/errors.hpp"
#include "idnet/identity_game.hpp"

namespace idnet {

namespace {

constexpr std::array kKindNames{
    std::pair{ScenarioKind::Path, "path"},
    std::pair{ScenarioKind::Ring, "ring"},
    std::pair{ScenarioKind::Complete, "complete"},
    std::pair{ScenarioKind::Star, "star"},
    std::pair{ScenarioKind::TwoCliquesBridge, "two-cliques-bridge"},
    std::pair{ScenarioKind::RegularRandom, "regular-random"},
    std::pair{ScenarioKind::Cafeteria1, "cafeteria-1"},
    std::pair{ScenarioKind::Cafeteria2, "cafeteria-2"},
    std::pair{ScenarioKind::Figure2ChainAnalog, "figure2-chain-analog"},
};

constexpr std::array kRuleNames{
    std::pair{InitialRule::InheritByGroup, "inherit-by-group"},
    std::pair{InitialRule::AllA, "all-A"},
    std::pair{InitialRule::AllB, "all-B"},
    std::pair{InitialRule::Custom, "custom"},
};

constexpr std::size_t kMaxAttempts = 20000;

void require_size(std::size_t n, std::size_t minimum, std::string_view kind) {
    if (n < minimum) {
        throw InputError(std::string(kind) + " needs at least " + std::to_string(minimum) +
                         " nodes");
    }
}

// One pairing attempt. Returns false when it paints itself into a corner.
bool try_pairing(std::size_t n, std::size_t d, Rng& rng, double homophily,
                 const std::vector<int>& group, std::vector<Edge>& edges) {
    std::vector<NodeId> points;
    points.reserve(n * d);
    for (NodeId i = 0; i < n; ++i) points.insert(points.end(), d, i);
    std::vector<std::set<NodeId>> adj(n);
    edges.clear();

    auto suitable = [&](NodeId u, NodeId v) { return u != v && !adj[u].contains(v); };
    auto take = [&](std::size_t a, std::size_t b) {
        const NodeId u = points[a];
        const NodeId v = points[b];
        if (a < b) std::swap(a, b);
        points[a] = points.back();
        points.pop_back();
        points[b] = points.back();
        points.pop_back();
        adj[u].insert(v);
        adj[v].insert(u);
        edges.emplace_back(std::min(u, v), std::max(u, v));
    };

    while (!points.empty()) {
        const std::size_t p = points.size();
        bool placed = false;
        for (std::size_t trial = 0; trial < 50 * p && !placed; ++trial) {
            const std::size_t a = rng.below(p);
            const std::size_t b = rng.below(p);
            if (a == b || !suitable(points[a], points[b])) continue;
            if (homophily > 0.0 && !group.empty() && group[points[a]] != group[points[b]] &&
                rng.uniform() < homophily) {
                continue;
            }
            take(a, b);
            placed = true;
        }
        if (placed) continue;
        std::vector<std::pair<std::size_t, std::size_t>> options;
        for (std::size_t a = 0; a < p; ++a) {
            for (std::size_t b = a + 1; b < p; ++b) {
                if (suitable(points[a], points[b])) options.emplace_back(a, b);
            }
        }
        if (options.empty()) return false;
        const auto [a, b] = options[rng.below(options.size())];
        take(a, b);
    }
    return true;
}

std::vector<IdentityId> groups_to_ids(const std::vector<int>& group) {
    std::vector<IdentityId> ids(group.size());
    for (std::size_t i = 0; i < group.size(); ++i) ids[i] = group[i] == 0 ? kIdentityA : kIdentityB;
    return ids;
}

std::size_t modal_degree(const Network& net) {
    std::map<std::size_t, std::size_t> freq;
    for (NodeId i = 0; i < net.size(); ++i) ++freq[net.degree(i)];
    return std::max_element(freq.begin(), freq.end(),
                            [](const auto& x, const auto& y) { return x.second < y.second; })
        ->first;
}

} // namespace

std::string_view to_string(ScenarioKind kind) {
    for (auto [k, name] : kKindNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

ScenarioKind scenario_kind_from_string(std::string_view name) {
    for (auto [k, n] : kKindNames) {
        if (name == n) return k;
    }
    throw InputError("unknown scenario kind '" + std::string(name) + "'");
}

std::string_view to_string(InitialRule rule) {
    for (auto [r, name] : kRuleNames) {
        if (r == rule) return name;
    }
    return "unknown";
}

InitialRule initial_rule_from_string(std::string_view name) {
    for (auto [r, n] : kRuleNames) {
        if (name == n) return r;
    }
    throw InputError("unknown initial rule '" + std::string(name) + "'");
}

Network path_graph(std::size_t n) {
    require_size(n, 2, "path");
    std::vector<Edge> edges;
    for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Network(n, edges);
}

Network ring_graph(std::size_t n) {
    require_size(n, 3, "ring");
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Network(n, edges);
}

Network complete_graph(std::size_t n) {
    require_size(n, 2, "complete");
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    }
    return Network(n, edges);
}

Network star_graph(std::size_t n) {
    require_size(n, 2, "star");
    std::vector<Edge> edges;
    for (NodeId i = 1; i < n; ++i) edges.emplace_back(0, i);
    return Network(n, edges);
}

Network two_cliques_bridge(std::size_t clique_size) {
    require_size(clique_size, 2, "two-cliques-bridge clique");
    std::vector<Edge> edges;
    for (NodeId offset : {std::size_t{0}, clique_size}) {
        for (NodeId i = 0; i < clique_size; ++i) {
            for (NodeId j = i + 1; j < clique_size; ++j) edges.emplace_back(offset + i, offset + j);
        }
    }
    edges.emplace_back(0, clique_size);
    return Network(2 * clique_size, edges);
}

Network figure2_chain_analog() {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < 5; ++i) {
        for (NodeId j = i + 1; j < 5; ++j) edges.emplace_back(i, j);
    }
    edges.insert(edges.end(), {{0, 5}, {5, 6}, {1, 7}, {2, 7}});
    return Network(8, edges);
}

Network random_regular_graph(std::size_t n, std::size_t d, Rng& rng, bool require_connected,
                             double homophily, const std::vector<int>& group) {
    if (d == 0 || d >= n) {
        throw InputError("infeasible degree sequence: need 0 < d < n (n = " + std::to_string(n) +
                         ", d = " + std::to_string(d) + ")");
    }
    if ((n * d) % 2 != 0) {
        throw InputError("infeasible degree sequence: n * d must be even");
    }
    if (require_connected && d == 1 && n > 2) {
        throw InputError("infeasible degree sequence: a connected 1-regular graph has 2 nodes");
    }
    if (homophily < 0.0 || homophily > 0.95) throw InputError("homophily must lie in [0, 0.95]");
    std::vector<Edge> edges;
    for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
        if (!try_pairing(n, d, rng, homophily, group, edges)) continue;
        Network net(n, edges, Connectivity::Relaxed);
        if (require_connected && !net.is_connected()) continue;
        return net;
    }
    throw InputError("infeasible degree sequence: no simple d-regular graph found");
}

Scenario generate(const ScenarioConfig& config) {
    Scenario s;
    std::vector<int> group;
    const std::size_t n = config.n;
    Rng rng(config.seed);

    switch (config.kind) {
    case ScenarioKind::Path: s.network = path_graph(n); break;
    case ScenarioKind::Ring: s.network = ring_graph(n); break;
    case ScenarioKind::Complete: s.network = complete_graph(n); break;
    case ScenarioKind::Star: s.network = star_graph(n); break;
    case ScenarioKind::Figure2ChainAnalog: s.network = figure2_chain_analog(); break;
    case ScenarioKind::RegularRandom:
        s.network = random_regular_graph(n, config.degree, rng);
        break;
    case ScenarioKind::TwoCliquesBridge: {
        s.network = two_cliques_bridge(config.clique_size);
        group.assign(2 * config.clique_size, 1);
        std::fill_n(group.begin(), config.clique_size, 0);
        break;
    }
    case ScenarioKind::Cafeteria1: {
        if (n % 2 != 0) throw InputError("cafeteria-1 needs an even number of students");
        const std::size_t half = n / 2;
        std::vector<Edge> edges;
        for (std::size_t g = 0; g < 2; ++g) {
            const auto part = random_regular_graph(half, config.degree, rng);
            for (auto [i, j] : part.edges()) edges.emplace_back(g * half + i, g * half + j);
        }
        if (config.cafeteria_bridge) {
            edges.emplace_back(0, half);
            s.notes.push_back("single cross edge (0, " + std::to_string(half) +
                              ") added for connectivity; negligible");
            s.network = Network(n, edges);
        } else {
            s.network = Network(n, edges, Connectivity::Relaxed);
            s.connectivity_relaxed = true;
            s.notes.push_back("strictly disjoint cafeterias; connectivity check relaxed");
        }
        group.assign(n, 1);
        std::fill_n(group.begin(), half, 0);
        break;
    }
    case ScenarioKind::Cafeteria2: {
        if (n % 2 != 0) throw InputError("cafeteria-2 needs an even number of students");
        group.assign(n, 1);
        std::fill_n(group.begin(), n / 2, 0);
        s.network = random_regular_graph(n, config.degree, rng, true, config.homophily, group);
        if (config.homophily > 0.0) s.notes.push_back("homophily extension enabled");
        break;
    }
    }

    const std::size_t size = s.network.size();
    switch (config.initial) {
    case InitialRule::InheritByGroup:
        s.assignment = group.empty() ? IdentityAssignment::uniform(size, kIdentityB, 2)
                                     : IdentityAssignment(groups_to_ids(group), 2);
        break;
    case InitialRule::AllA: s.assignment = IdentityAssignment::uniform(size, kIdentityA, 2); break;
    case InitialRule::AllB: s.assignment = IdentityAssignment::uniform(size, kIdentityB, 2); break;
    case InitialRule::Custom:
        if (config.custom.size() != size) {
            throw InputError("custom assignment length does not match the generated network");
        }
        s.assignment = IdentityAssignment(config.custom, 2);
        break;
    }
    return s;
}

Model scenario_model(const Scenario& scenario, const ScenarioParameters& p) {
    return Model(scenario.network, IdentitySet({p.high, p.low}),
                 Population::homogeneous(scenario.network.size(), p.ability, p.alpha, p.beta,
                                         p.gamma));
}

bool scenario2_boundary_band(double c) { return -2.0 < c && c <= 2.0; }

PolicyReport policy_solution_check(const Network& net, const IdentityAssignment& assign, double c,
                                   ScenarioKind kind) {
    if (kind != ScenarioKind::Cafeteria1 && kind != ScenarioKind::Cafeteria2) {
        throw InputError("policy check applies to cafeteria-1 and cafeteria-2 only");
    }
    PolicyReport r;
    r.kind = kind;
    r.c = c;
    r.degree = modal_degree(net);
    const double d = static_cast<double>(r.degree);

    if (kind == ScenarioKind::Cafeteria1) {
        const auto check = is_identity_equilibrium(net, assign, c);
        r.inherited_is_equilibrium = check.is_equilibrium;
        r.violators = check.violators;
        r.predicted_equilibrium = -d < c && c <= d;
        r.agrees = r.inherited_is_equilibrium == r.predicted_equilibrium;
        r.final_a_fraction =
            static_cast<double>(assign.count(kIdentityA)) / static_cast<double>(assign.size());
        return r;
    }

    const double schedule[] = {c};
    const auto trace = cascade(net, assign, schedule, CascadeMode::General);
    const auto& final = trace.final_assignment();
    const auto a_count = final.count(kIdentityA);
    r.final_a_fraction = static_cast<double>(a_count) / static_cast<double>(final.size());
    if (a_count == final.size()) r.consensus = kIdentityA;
    if (a_count == 0) r.consensus = kIdentityB;
    r.predicted_identity = c <= 0.0 ? kIdentityA : kIdentityB;
    r.in_boundary_band = scenario2_boundary_band(c);
    r.rounds = trace.rounds.size();
    r.cycle_detected = trace.cycle_detected;
    r.agrees = r.consensus == r.predicted_identity;
    return r;
}

std::vector<double> policy_c_grid(std::size_t degree) {
    std::vector<double> grid;
    const auto top = static_cast<long>(4 * (degree + 1));
    for (long k = -top; k <= top; ++k) grid.push_back(static_cast<double>(k) / 4.0);
    return grid;
}

} // namespace idnet
