#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "idnet/network.hpp"

namespace idnet {

enum class CascadeMode {
    Monotone, // only B -> A switches; the schedule must be non-increasing
    General,  // bidirectional best response
};

struct CascadeRound {
    std::size_t stage = 0; // index into the c schedule
    double c = 0.0;
    bool sequential = false; // produced by the ascending-index fallback
    std::vector<NodeId> switchers;
    IdentityAssignment snapshot; // assignment after the round
};

struct CascadeTrace {
    IdentityAssignment initial;
    std::vector<double> c_schedule;
    CascadeMode mode = CascadeMode::Monotone;
    std::vector<CascadeRound> rounds; // only rounds with at least one switch
    bool converged = false;
    bool cycle_detected = false;

    const IdentityAssignment& final_assignment() const {
        return rounds.empty() ? initial : rounds.back().snapshot;
    }
    std::size_t switch_count() const;
};

// Myopic best-response diffusion. For each c in the schedule, synchronous
// rounds are computed against the round-start assignment until a round
// changes nothing. In general mode a revisited snapshot means a cycle: the
// stage restarts from its initial assignment with ascending-index sequential
// updates, which always terminate.
CascadeTrace cascade(const Network& net, const IdentityAssignment& initial,
                     std::span<const double> c_schedule, CascadeMode mode);

struct DiffusionReport {
    double c = 0.0;
    bool necessary_min_degree = false;      // min d_i <= |c'|
    bool necessary_no_blocking_set = false; // no S with k_i(S) > |c'| for all i in S
    bool sufficient_max_degree = false;     // max d_i - 2 <= |c'|
    std::vector<NodeId> blocking_set;

    // Cascade from all-B at c'.
    std::size_t switches = 0;
    std::size_t rounds = 0;
    bool full_diffusion = false;
    std::vector<NodeId> stall_set;
    // Every implication the conditions promise holds for the cascade run.
    // The max-degree condition is checked together with the trigger
    // (min-degree) condition, since with no first switch nothing spreads.
    bool consistent = false;
};

DiffusionReport full_diffusion_conditions(const Network& net, double c_prime);

} // namespace idnet
