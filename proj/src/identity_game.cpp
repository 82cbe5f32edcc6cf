#include "idnet/identity_game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <future>
#include <thread>

#include "idnet/errors.hpp"

namespace idnet {

namespace {

void require_two(const IdentityAssignment& assign) {
    if (assign.identity_count() != 2) {
        throw InputError("the c-based identity game needs exactly two identities");
    }
}

void require_non_positive(double c) {
    if (!(c <= 0.0)) throw InputError("c must be <= 0 (orient the identities so A is weakly better)");
}

bool nearly_equal(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

RelativeCost relative_cost(const IdentitySpec& a, const IdentitySpec& b, double w, double gamma,
                           double beta) {
    if (!(beta > 0.0)) {
        throw InputError(
            "beta = 0: neighbor term absent; identity choice degenerates to sign of V~_A - V~_B");
    }
    if (!(w > 0.0)) throw InputError("ability must be positive");
    auto shape = [w](double v) { return v * (2.0 - v / w); };
    const double action_term =
        gamma / (2.0 * (gamma + 1.0 / w)) * (shape(b.prescribed_action) - shape(a.prescribed_action));
    return RelativeCost{(action_term - (a.status - b.status)) / beta, kIdentityA, kIdentityB};
}

RelativeCost relative_cost(const Model& model, IdentityId a, IdentityId b) {
    if (!model.population.is_homogeneous()) {
        throw InputError("c is only defined for a homogeneous population");
    }
    const auto& pop = model.population;
    auto out = relative_cost(model.identities[a], model.identities[b], pop.common_ability(),
                             pop.gamma(), pop.beta());
    out.a = a;
    out.b = b;
    return out;
}

long neighbor_margin(const Network& net, const IdentityAssignment& assign, NodeId i) {
    long margin = 0;
    for (NodeId j : net.neighbors(i)) margin += assign[j] == kIdentityA ? 1 : -1;
    return margin;
}

IdentityId best_response_identity(const Network& net, const IdentityAssignment& assign, NodeId i,
                                  double c) {
    require_two(assign);
    return static_cast<double>(neighbor_margin(net, assign, i)) >= c ? kIdentityA : kIdentityB;
}

EquilibriumCheck is_identity_equilibrium(const Network& net, const IdentityAssignment& assign,
                                         double c) {
    require_two(assign);
    if (assign.size() != net.size()) throw InputError("assignment length does not match the network");
    EquilibriumCheck out;
    for (NodeId i = 0; i < net.size(); ++i) {
        if (best_response_identity(net, assign, i, c) != assign[i]) out.violators.push_back(i);
    }
    out.is_equilibrium = out.violators.empty();
    return out;
}

IdentityId best_response_identity(const Model& model, const IdentityAssignment& assign,
                                  const ActionProfile& profile, NodeId i, DeviationMode mode) {
    const double beta = model.population.beta();
    IdentityId best = 0;
    double best_value = 0.0;
    double best_intrinsic = 0.0;
    for (IdentityId k = 0; k < model.identities.size(); ++k) {
        const double value = value_function(model, assign, profile, i, k, mode);
        const double intrinsic =
            value - beta * static_cast<double>(typed_degree(model.network, assign, i, k));
        bool better = false;
        if (k == 0) {
            better = true;
        } else if (!nearly_equal(value, best_value)) {
            better = value > best_value;
        } else if (!nearly_equal(intrinsic, best_intrinsic)) {
            better = intrinsic > best_intrinsic;
        } else {
            better = model.identities[k].label < model.identities[best].label;
        }
        if (better) {
            best = k;
            best_value = value;
            best_intrinsic = intrinsic;
        }
    }
    return best;
}

EquilibriumCheck is_identity_equilibrium(const Model& model, const IdentityAssignment& assign,
                                         DeviationMode mode) {
    const auto profile = solve_actions(model, assign);
    EquilibriumCheck out;
    for (NodeId i = 0; i < model.network.size(); ++i) {
        if (best_response_identity(model, assign, profile, i, mode) != assign[i]) {
            out.violators.push_back(i);
        }
    }
    out.is_equilibrium = out.violators.empty();
    return out;
}

std::vector<IdentityAssignment> enumerate_equilibria(const Network& net, double c,
                                                     std::size_t n_limit) {
    const std::size_t n = net.size();
    if (n > n_limit || n > 62) {
        throw InputError("n = " + std::to_string(n) + " exceeds the enumeration limit of " +
                         std::to_string(n_limit) +
                         "; use the cascade or blocking-set tools for larger networks");
    }
    // Bit i set <=> individual i holds B.
    std::vector<std::uint64_t> neighbor_mask(n, 0);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j : net.neighbors(i)) neighbor_mask[i] |= std::uint64_t{1} << j;
    }
    auto stable = [&](std::uint64_t b_set) {
        for (NodeId i = 0; i < n; ++i) {
            const long d_b = std::popcount(neighbor_mask[i] & b_set);
            const long d_a = static_cast<long>(net.degree(i)) - d_b;
            const bool wants_a = static_cast<double>(d_a - d_b) >= c;
            const bool is_b = (b_set >> i) & 1U;
            if (wants_a == is_b) return false;
        }
        return true;
    };

    const std::uint64_t total = std::uint64_t{1} << n;
    const unsigned workers =
        n >= 14 ? std::max(1u, std::min(8u, std::thread::hardware_concurrency())) : 1u;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    std::vector<std::future<std::vector<std::uint64_t>>> parts;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = std::min(total, w * chunk);
        const std::uint64_t hi = std::min(total, lo + chunk);
        parts.push_back(std::async(w == 0 ? std::launch::deferred : std::launch::async, [=] {
            std::vector<std::uint64_t> found;
            for (std::uint64_t s = lo; s < hi; ++s) {
                if (stable(s)) found.push_back(s);
            }
            return found;
        }));
    }
    std::vector<IdentityAssignment> out;
    for (auto& part : parts) {
        for (std::uint64_t s : part.get()) {
            std::vector<IdentityId> ids(n);
            for (NodeId i = 0; i < n; ++i) ids[i] = ((s >> i) & 1U) ? kIdentityB : kIdentityA;
            out.emplace_back(std::move(ids), 2);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        const auto ax = x.count(kIdentityA);
        const auto ay = y.count(kIdentityA);
        return ax != ay ? ax < ay : x < y;
    });
    return out;
}

bool all_low_equilibrium_exists(const Network& net, double c) {
    require_non_positive(c);
    return static_cast<double>(net.min_degree()) > std::abs(c);
}

std::vector<NodeId> find_blocking_set(const Network& net, double c) {
    std::vector<NodeId> all(net.size());
    for (NodeId i = 0; i < all.size(); ++i) all[i] = i;
    return find_blocking_set(net, c, all);
}

std::vector<NodeId> find_blocking_set(const Network& net, double c, std::span<const NodeId> seed) {
    require_non_positive(c);
    const double bound = std::abs(c);
    std::vector<char> in_set(net.size(), 0);
    for (NodeId i : seed) {
        if (i >= net.size()) throw InputError("seed member out of range: " + std::to_string(i));
        in_set[i] = 1;
    }
    std::vector<long> k(net.size(), 0);
    std::deque<NodeId> queue;
    std::vector<char> queued(net.size(), 0);
    for (NodeId i = 0; i < net.size(); ++i) {
        if (!in_set[i]) continue;
        long in = 0;
        for (NodeId j : net.neighbors(i)) in += in_set[j];
        k[i] = 2 * in - static_cast<long>(net.degree(i));
        if (static_cast<double>(k[i]) <= bound) {
            queue.push_back(i);
            queued[i] = 1;
        }
    }
    // Each removal turns one in-link of every remaining neighbour into an
    // out-link, lowering its k by exactly 2.
    while (!queue.empty()) {
        const NodeId i = queue.front();
        queue.pop_front();
        in_set[i] = 0;
        for (NodeId j : net.neighbors(i)) {
            if (!in_set[j]) continue;
            k[j] -= 2;
            if (!queued[j] && static_cast<double>(k[j]) <= bound) {
                queue.push_back(j);
                queued[j] = 1;
            }
        }
    }
    std::vector<NodeId> out;
    for (NodeId i = 0; i < net.size(); ++i) {
        if (in_set[i]) out.push_back(i);
    }
    return out;
}

std::vector<Threshold> thresholds(const Network& net, double c) {
    require_non_positive(c);
    std::vector<Threshold> out(net.size());
    for (NodeId i = 0; i < net.size(); ++i) {
        const auto d = static_cast<double>(net.degree(i));
        auto& t = out[i];
        t.absolute = (c + d) / 2.0;
        t.unconditional = t.absolute <= 0.0;
        t.isolated = net.degree(i) == 0;
        if (!t.isolated) t.fraction = t.absolute / d;
    }
    return out;
}

bool adopts_by_threshold(const Threshold& t, std::size_t a_neighbors) {
    return static_cast<double>(a_neighbors) >= t.absolute;
}

} // namespace idnet
