#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "idnet/actions.hpp"
#include "idnet/network.hpp"

namespace idnet {

// Two-identity games index the identities as A = 0 and B = 1; c is the
// threshold in "choose A iff d_{i,A} - d_{i,B} >= c".
inline constexpr IdentityId kIdentityA = 0;
inline constexpr IdentityId kIdentityB = 1;

struct RelativeCost {
    double c = 0.0;
    IdentityId a = kIdentityA; // identity playing the role of A
    IdentityId b = kIdentityB;

    bool a_weakly_better() const noexcept { return c <= 0.0; }
    // Same comparison with roles swapped so that c <= 0.
    RelativeCost oriented() const noexcept {
        return c <= 0.0 ? *this : RelativeCost{-c, b, a};
    }
};

// c = (V~_B - V~_A) / beta under a common ability w.
RelativeCost relative_cost(const IdentitySpec& a, const IdentitySpec& b, double w, double gamma,
                           double beta);

// Reads w, gamma, beta from the model; requires a homogeneous population.
RelativeCost relative_cost(const Model& model, IdentityId a = kIdentityA,
                           IdentityId b = kIdentityB);

// d_{i,A} - d_{i,B}.
long neighbor_margin(const Network& net, const IdentityAssignment& assign, NodeId i);

// A iff d_{i,A} - d_{i,B} >= c; ties go to A.
IdentityId best_response_identity(const Network& net, const IdentityAssignment& assign, NodeId i,
                                  double c);

struct EquilibriumCheck {
    bool is_equilibrium = true;
    std::vector<NodeId> violators;
};

EquilibriumCheck is_identity_equilibrium(const Network& net, const IdentityAssignment& assign,
                                         double c);

// m-identity best response: argmax of V_{i,I}; ties go to the higher
// intrinsic value V_{i,I} - beta d_{i,I}, then to the smaller label.
IdentityId best_response_identity(const Model& model, const IdentityAssignment& assign,
                                  const ActionProfile& profile, NodeId i,
                                  DeviationMode mode = DeviationMode::FixedProfile);

EquilibriumCheck is_identity_equilibrium(const Model& model, const IdentityAssignment& assign,
                                         DeviationMode mode = DeviationMode::FixedProfile);

inline constexpr std::size_t kDefaultEnumerateLimit = 20;

// Every two-identity equilibrium, by exhaustive search over 2^n profiles.
// Sorted by number of A-members, then lexicographically.
std::vector<IdentityAssignment> enumerate_equilibria(const Network& net, double c,
                                                     std::size_t n_limit = kDefaultEnumerateLimit);

// min_i d_i > |c|
bool all_low_equilibrium_exists(const Network& net, double c);

// Largest S within the seed with k_i(S) > |c| for every member, by peeling.
// Empty when no such set exists. The seed defaults to the whole network.
std::vector<NodeId> find_blocking_set(const Network& net, double c);
std::vector<NodeId> find_blocking_set(const Network& net, double c, std::span<const NodeId> seed);

struct Threshold {
    double absolute = 0.0;          // t_i = (c + d_i) / 2
    std::optional<double> fraction; // q_i = t_i / d_i; empty when d_i = 0
    bool unconditional = false;     // t_i <= 0: adopts A regardless of neighbours
    bool isolated = false;          // d_i = 0: adopts A iff c <= 0
};

std::vector<Threshold> thresholds(const Network& net, double c);

// A iff d_{i,A} >= t_i.
bool adopts_by_threshold(const Threshold& t, std::size_t a_neighbors);

} // namespace idnet
