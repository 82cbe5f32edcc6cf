#include "idnet/actions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "idnet/errors.hpp"

namespace idnet {

namespace {

void check_sizes(const Model& model, const IdentityAssignment& assign) {
    if (assign.size() != model.network.size()) {
        throw InputError("assignment length does not match the network");
    }
    if (assign.identity_count() != model.identities.size()) {
        throw InputError("assignment refers to a different identity set");
    }
}

double ideal_utility(const Model& model, IdentityId identity, std::size_t same_degree,
                     double w, double x, double xbar) {
    const auto& spec = model.identities[identity];
    const auto& pop = model.population;
    const double dx = x - xbar;
    const double dv = x - spec.prescribed_action;
    return spec.status + pop.beta() * static_cast<double>(same_degree) + x - x * x / (2.0 * w) -
           0.5 * pop.alpha() * dx * dx - 0.5 * pop.gamma() * dv * dv;
}

// Connected components of the subgraph induced by one identity.
std::vector<std::vector<NodeId>> identity_components(const Network& net,
                                                     const IdentityAssignment& assign,
                                                     IdentityId identity) {
    std::vector<std::vector<NodeId>> out;
    std::vector<char> seen(net.size(), 0);
    for (NodeId s = 0; s < net.size(); ++s) {
        if (seen[s] || assign[s] != identity) continue;
        std::vector<NodeId> comp;
        std::vector<NodeId> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (NodeId v : net.neighbors(u)) {
                if (!seen[v] && assign[v] == identity) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

void finish_profile(const Model& model, const IdentityAssignment& assign, ActionProfile& p) {
    p.xbar = neighbor_averages(model.network, assign, p.x);
    p.utility.resize(p.x.size());
    for (NodeId i = 0; i < p.x.size(); ++i) p.utility[i] = utility(model, assign, p.x, i);
    p.residual = foc_residual(model, assign, p.x);
}

} // namespace

std::vector<double> conformity_weights(const Population& pop) {
    std::vector<double> b(pop.size());
    for (NodeId i = 0; i < pop.size(); ++i) {
        b[i] = 1.0 / (pop.gamma() + pop.alpha() + 1.0 / pop.ability(i));
    }
    return b;
}

double homogeneous_action(double w, double gamma, double prescribed_action) {
    return (1.0 + gamma * prescribed_action) / (gamma + 1.0 / w);
}

double homogeneous_intrinsic_value(double w, double gamma, const IdentitySpec& identity) {
    const double v = identity.prescribed_action;
    return identity.status + (1.0 + gamma * v * (2.0 - v / w)) / (2.0 * (gamma + 1.0 / w));
}

std::vector<double> neighbor_averages(const Network& net, const IdentityAssignment& assign,
                                      std::span<const double> x) {
    std::vector<double> xbar(x.size());
    for (NodeId i = 0; i < x.size(); ++i) {
        double sum = 0.0;
        std::size_t d = 0;
        for (NodeId j : net.neighbors(i)) {
            if (assign[j] == assign[i]) {
                sum += x[j];
                ++d;
            }
        }
        xbar[i] = d == 0 ? x[i] : sum / static_cast<double>(d);
    }
    return xbar;
}

double foc_residual(const Model& model, const IdentityAssignment& assign,
                    std::span<const double> x) {
    const auto b = conformity_weights(model.population);
    const auto xbar = neighbor_averages(model.network, assign, x);
    const auto& pop = model.population;
    double worst = 0.0;
    for (NodeId i = 0; i < x.size(); ++i) {
        const double v = model.identities[assign[i]].prescribed_action;
        const double target = b[i] * (1.0 + pop.gamma() * v + pop.alpha() * xbar[i]);
        worst = std::max(worst, std::abs(x[i] - target));
    }
    return worst;
}

ActionProfile solve_actions(const Model& model, const IdentityAssignment& assign) {
    check_sizes(model, assign);
    const auto& net = model.network;
    const auto& pop = model.population;
    const auto b = conformity_weights(pop);
    for (NodeId i = 0; i < b.size(); ++i) {
        if (!(pop.alpha() * b[i] < 1.0)) {
            throw ModelInvariantError("alpha * b_i >= 1; the action system is not invertible");
        }
    }

    ActionProfile profile;
    profile.x.assign(net.size(), 0.0);
    std::vector<Eigen::Index> position(net.size(), -1);

    for (IdentityId identity = 0; identity < model.identities.size(); ++identity) {
        const double drive = 1.0 + pop.gamma() * model.identities[identity].prescribed_action;
        for (const auto& comp : identity_components(net, assign, identity)) {
            const auto m = static_cast<Eigen::Index>(comp.size());
            for (Eigen::Index r = 0; r < m; ++r) position[comp[r]] = r;

            // (I - alpha G~) x = (1 + gamma v) b, with G~ = diag(b) G^.
            Eigen::MatrixXd system = Eigen::MatrixXd::Identity(m, m);
            Eigen::VectorXd rhs(m);
            for (Eigen::Index r = 0; r < m; ++r) {
                const NodeId i = comp[r];
                rhs(r) = drive * b[i];
                const auto d = typed_degree(net, assign, i, identity);
                if (d == 0) {
                    system(r, r) -= pop.alpha() * b[i];
                    continue;
                }
                const double weight = pop.alpha() * b[i] / static_cast<double>(d);
                for (NodeId j : net.neighbors(i)) {
                    if (assign[j] == identity) system(r, position[j]) -= weight;
                }
            }
            const Eigen::VectorXd sol = system.partialPivLu().solve(rhs);
            for (Eigen::Index r = 0; r < m; ++r) profile.x[comp[r]] = sol(r);
        }
    }

    for (NodeId i = 0; i < net.size(); ++i) {
        if (!std::isfinite(profile.x[i])) {
            throw ModelInvariantError("non-finite equilibrium action");
        }
        if (profile.x[i] < 0.0) {
            throw ModelInvariantError("negative equilibrium action at individual " +
                                      std::to_string(i));
        }
    }
    finish_profile(model, assign, profile);
    const double scale = std::max(1.0, *std::max_element(profile.x.begin(), profile.x.end()));
    if (profile.residual > kDirectResidualTol * scale) {
        std::ostringstream os;
        os << "direct solve residual " << profile.residual << " exceeds tolerance";
        throw ModelInvariantError(os.str());
    }
    return profile;
}

ActionProfile solve_actions_iterative(const Model& model, const IdentityAssignment& assign,
                                      std::span<const double> x0, IterativeOptions options) {
    check_sizes(model, assign);
    if (!(options.tol > 0.0)) throw InputError("tolerance must be positive");
    if (x0.size() != model.network.size()) {
        throw InputError("initial vector length does not match the network");
    }
    const auto& pop = model.population;
    const auto b = conformity_weights(pop);
    std::vector<double> drive(b.size());
    for (NodeId i = 0; i < b.size(); ++i) {
        drive[i] = 1.0 + pop.gamma() * model.identities[assign[i]].prescribed_action;
    }

    ActionProfile profile;
    profile.x.assign(x0.begin(), x0.end());
    std::vector<double> next(profile.x.size());
    double step = 0.0;
    for (std::size_t it = 1; it <= options.max_iters; ++it) {
        const auto xbar = neighbor_averages(model.network, assign, profile.x);
        step = 0.0;
        for (NodeId i = 0; i < next.size(); ++i) {
            next[i] = b[i] * (drive[i] + pop.alpha() * xbar[i]);
            step = std::max(step, std::abs(next[i] - profile.x[i]));
        }
        profile.x.swap(next);
        if (step <= options.tol) {
            profile.iterations = it;
            finish_profile(model, assign, profile);
            return profile;
        }
    }
    std::ostringstream os;
    os << "iterative solver did not converge in " << options.max_iters
       << " iterations (last step " << step << ")";
    throw ConvergenceError(os.str(), options.max_iters, step);
}

double utility(const Model& model, const IdentityAssignment& assign, std::span<const double> x,
               NodeId i) {
    const auto& net = model.network;
    const IdentityId identity = assign[i];
    double sum = 0.0;
    std::size_t d = 0;
    for (NodeId j : net.neighbors(i)) {
        if (assign[j] == identity) {
            sum += x[j];
            ++d;
        }
    }
    const double xbar = d == 0 ? x[i] : sum / static_cast<double>(d);
    return ideal_utility(model, identity, d, model.population.ability(i), x[i], xbar);
}

double value_function(const Model& model, const IdentityAssignment& assign,
                      const ActionProfile& profile, NodeId i, IdentityId identity,
                      DeviationMode mode) {
    check_sizes(model, assign);
    if (identity >= model.identities.size()) throw InputError("unknown identity");
    if (mode == DeviationMode::Resolve) {
        const auto moved = assign.with(i, identity);
        const auto resolved = solve_actions(model, moved);
        return resolved.utility[i];
    }
    const auto& pop = model.population;
    const double w = pop.ability(i);
    const double v = model.identities[identity].prescribed_action;
    double sum = 0.0;
    std::size_t d = 0;
    for (NodeId j : model.network.neighbors(i)) {
        if (assign[j] == identity) {
            sum += profile.x.at(j);
            ++d;
        }
    }
    if (d == 0) {
        const double x = homogeneous_action(w, pop.gamma(), v);
        return ideal_utility(model, identity, 0, w, x, x);
    }
    const double xbar = sum / static_cast<double>(d);
    const double b = 1.0 / (pop.gamma() + pop.alpha() + 1.0 / w);
    const double x = b * (1.0 + pop.gamma() * v + pop.alpha() * xbar);
    return ideal_utility(model, identity, d, w, x, xbar);
}

Eigen::MatrixXd value_table(const Model& model, const IdentityAssignment& assign,
                            const ActionProfile& profile, DeviationMode mode) {
    const auto n = static_cast<Eigen::Index>(model.network.size());
    const auto m = static_cast<Eigen::Index>(model.identities.size());
    Eigen::MatrixXd table(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < m; ++k) {
            table(i, k) = value_function(model, assign, profile, static_cast<NodeId>(i),
                                         static_cast<IdentityId>(k), mode);
        }
    }
    return table;
}

} // namespace idnet
