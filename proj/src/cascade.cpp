#include "idnet/cascade.hpp"

#include <cmath>
#include <set>

#include "idnet/errors.hpp"
#include "idnet/identity_game.hpp"

namespace idnet {

namespace {

bool wants_switch(const Network& net, const IdentityAssignment& assign, NodeId i, double c,
                  CascadeMode mode) {
    const IdentityId target = best_response_identity(net, assign, i, c);
    if (target == assign[i]) return false;
    return mode == CascadeMode::General || target == kIdentityA;
}

// Sweeps nodes in ascending order, updating in place. Each sweep is recorded
// as one round. Best-response moves strictly raise the game's potential, with
// tie moves only ever going B -> A, so the loop terminates.
bool run_sequential(const Network& net, IdentityAssignment& current, std::size_t stage, double c,
                    CascadeMode mode, std::vector<CascadeRound>& rounds) {
    const std::size_t cap = 4 * (net.size() + 1) * (net.size() + 1) + 16;
    for (std::size_t sweep = 0; sweep < cap; ++sweep) {
        CascadeRound round{stage, c, true, {}, {}};
        for (NodeId i = 0; i < net.size(); ++i) {
            if (wants_switch(net, current, i, c, mode)) {
                current.set(i, current[i] == kIdentityA ? kIdentityB : kIdentityA);
                round.switchers.push_back(i);
            }
        }
        if (round.switchers.empty()) return true;
        round.snapshot = current;
        rounds.push_back(std::move(round));
    }
    return false;
}

} // namespace

std::size_t CascadeTrace::switch_count() const {
    std::size_t total = 0;
    for (const auto& r : rounds) total += r.switchers.size();
    return total;
}

CascadeTrace cascade(const Network& net, const IdentityAssignment& initial,
                     std::span<const double> c_schedule, CascadeMode mode) {
    if (initial.identity_count() != 2) {
        throw InputError("cascades need exactly two identities");
    }
    if (initial.size() != net.size()) {
        throw InputError("assignment length does not match the network");
    }
    if (c_schedule.empty()) throw InputError("c schedule must be non-empty");
    for (std::size_t s = 0; s < c_schedule.size(); ++s) {
        if (!std::isfinite(c_schedule[s])) throw InputError("c schedule has a non-finite entry");
        if (mode == CascadeMode::Monotone && s > 0 && c_schedule[s] > c_schedule[s - 1]) {
            throw InputError("monotone mode needs a non-increasing c schedule");
        }
    }

    CascadeTrace trace;
    trace.initial = initial;
    trace.c_schedule.assign(c_schedule.begin(), c_schedule.end());
    trace.mode = mode;
    IdentityAssignment current = initial;
    trace.converged = true;

    for (std::size_t stage = 0; stage < c_schedule.size(); ++stage) {
        const double c = c_schedule[stage];
        const IdentityAssignment stage_start = current;
        const std::size_t first_round = trace.rounds.size();
        std::set<IdentityAssignment> seen{current};
        bool cycled = false;
        while (true) {
            CascadeRound round{stage, c, false, {}, {}};
            for (NodeId i = 0; i < net.size(); ++i) {
                if (wants_switch(net, current, i, c, mode)) round.switchers.push_back(i);
            }
            if (round.switchers.empty()) break;
            for (NodeId i : round.switchers) {
                current.set(i, current[i] == kIdentityA ? kIdentityB : kIdentityA);
            }
            round.snapshot = current;
            trace.rounds.push_back(std::move(round));
            if (!seen.insert(current).second) {
                cycled = true;
                break;
            }
        }
        if (cycled) {
            trace.cycle_detected = true;
            trace.rounds.resize(first_round);
            current = stage_start;
            if (!run_sequential(net, current, stage, c, mode, trace.rounds)) {
                trace.converged = false;
                return trace;
            }
        }
    }
    return trace;
}

DiffusionReport full_diffusion_conditions(const Network& net, double c_prime) {
    if (!(c_prime <= 0.0)) throw InputError("c' must be <= 0");
    DiffusionReport r;
    r.c = c_prime;
    const double bound = std::abs(c_prime);
    r.necessary_min_degree = static_cast<double>(net.min_degree()) <= bound;
    r.blocking_set = find_blocking_set(net, c_prime);
    r.necessary_no_blocking_set = r.blocking_set.empty();
    r.sufficient_max_degree = static_cast<double>(net.max_degree()) - 2.0 <= bound;

    const auto all_b = IdentityAssignment::uniform(net.size(), kIdentityB, 2);
    const double schedule[] = {c_prime};
    const auto trace = cascade(net, all_b, schedule, CascadeMode::Monotone);
    r.switches = trace.switch_count();
    r.rounds = trace.rounds.size();
    r.stall_set = trace.final_assignment().members(kIdentityB);
    r.full_diffusion = r.stall_set.empty();

    const bool trigger_ok = r.necessary_min_degree || r.switches == 0;
    const bool min_degree_ok = !r.full_diffusion || r.necessary_min_degree || net.size() == 0;
    const bool blocking_ok = !r.full_diffusion || r.necessary_no_blocking_set;
    const bool sufficient_ok =
        !(r.sufficient_max_degree && r.necessary_min_degree) || r.full_diffusion;
    const bool stall_ok = r.stall_set == r.blocking_set;
    r.consistent = trigger_ok && min_degree_ok && blocking_ok && sufficient_ok && stall_ok;
    return r;
}

} // namespace idnet
