#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "idnet/network.hpp"
#include "idnet/random.hpp"

namespace idnet {

enum class ScenarioKind {
    Path,
    Ring,
    Complete,
    Star,
    TwoCliquesBridge,
    RegularRandom,
    Cafeteria1, // segregated: one d-regular graph per SES group
    Cafeteria2, // integrated: one d-regular graph over all students
    Figure2ChainAnalog,
};

enum class InitialRule { InheritByGroup, AllA, AllB, Custom };

std::string_view to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(std::string_view name);
std::string_view to_string(InitialRule rule);
InitialRule initial_rule_from_string(std::string_view name);

// Exogenous parameters written alongside generated instances. Identity 0 is
// the high-SES / A identity.
struct ScenarioParameters {
    double ability = 1.0;
    double alpha = 0.5;
    double beta = 1.0;
    double gamma = 1.0;
    IdentitySpec high{"H", 1.0, 1.5};
    IdentitySpec low{"L", 0.8, 0.5};
};

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::Path;
    std::size_t n = 3;
    std::size_t degree = 4;
    std::size_t clique_size = 5;
    std::uint64_t seed = 0;
    InitialRule initial = InitialRule::InheritByGroup;
    std::vector<IdentityId> custom; // used with InitialRule::Custom
    bool cafeteria_bridge = false;  // cafeteria-1: one cross edge instead of two components
    double homophily = 0.0;         // cafeteria-2: rejection rate of cross-group pairings
    ScenarioParameters parameters;
};

struct Scenario {
    Network network;
    IdentityAssignment assignment; // two identities, A = 0 = high
    bool connectivity_relaxed = false;
    std::vector<std::string> notes;
};

// Kinds without SES groups start all-B under InheritByGroup: the resting
// state a diffusion experiment perturbs.
Scenario generate(const ScenarioConfig& config);

Model scenario_model(const Scenario& scenario, const ScenarioParameters& parameters);

Network path_graph(std::size_t n);
Network ring_graph(std::size_t n);
Network complete_graph(std::size_t n);
Network star_graph(std::size_t n); // node 0 is the centre
// Two cliques of the given size joined by the edge (0, size).
Network two_cliques_bridge(std::size_t clique_size);
// K5 on 0..4, a pendant chain 0-5-6 and a degree-2 node 7 on {1, 2}.
// Degree-1 node triggers at |c'| >= 1, node 7 at |c'| >= 2, and the clique
// blocks (min k = 3) until |c'| >= 3.
Network figure2_chain_analog();

// Uniform-ish simple d-regular graph by random pairing with restarts.
// group/homophily bias pairings toward same-group endpoints.
Network random_regular_graph(std::size_t n, std::size_t d, Rng& rng, bool require_connected = true,
                             double homophily = 0.0, const std::vector<int>& group = {});

struct PolicyReport {
    ScenarioKind kind = ScenarioKind::Cafeteria1;
    double c = 0.0;
    std::size_t degree = 0;
    bool agrees = false;

    // Scenario 1: inherited identities are an equilibrium iff -d < c <= d.
    bool inherited_is_equilibrium = false;
    bool predicted_equilibrium = false;
    std::vector<NodeId> violators;

    // Scenario 2: general cascade from inherited identities reaches the
    // all-X profile given by the sign of c (A/high when c <= 0).
    double final_a_fraction = 0.0;
    std::optional<IdentityId> consensus;
    IdentityId predicted_identity = 0;
    bool in_boundary_band = false;
    std::size_t rounds = 0;
    bool cycle_detected = false;
};

// Band of c values where a finite random Scenario-2 instance need not reach
// the sign-of-c consensus: -2 < c <= 2. With an even degree d_H - d_L is
// even, so throughout this band each student just follows the majority of
// their friends (ties to H when c <= 0, to L when c > 0).
bool scenario2_boundary_band(double c);

PolicyReport policy_solution_check(const Network& net, const IdentityAssignment& assign, double c,
                                   ScenarioKind kind);

// c values from -(d+1) to d+1 in quarter steps.
std::vector<double> policy_c_grid(std::size_t degree);

} // namespace idnet
