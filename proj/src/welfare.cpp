#include "idnet/welfare.hpp"

#include <cmath>
#include <limits>

#include "idnet/errors.hpp"

namespace idnet {

namespace {

void require_template(const Population& pop, const IdentitySet& ids, double ratio_a,
                      double ratio_b, const char* name) {
    if (ids.size() != 2) throw InputError(std::string(name) + " needs exactly two identities");
    const double w = pop.common_ability();
    auto matches = [w](double v, double ratio) {
        return std::abs(v - ratio * w) <= 1e-12 * std::max(1.0, w);
    };
    if (!matches(ids[0].prescribed_action, ratio_a) || !matches(ids[1].prescribed_action, ratio_b)) {
        throw InputError(std::string(name) + " template mismatch: prescribed actions must be " +
                         std::to_string(ratio_a) + "w and " + std::to_string(ratio_b) + "w");
    }
    if (!(ids[0].status > ids[1].status)) {
        throw InputError(std::string(name) + " requires mu_A > mu_B");
    }
}

} // namespace

WelfareReport welfare(const Model& model, const IdentityAssignment& assign) {
    return welfare(model, assign, solve_actions(model, assign));
}

WelfareReport welfare(const Model& model, const IdentityAssignment& assign,
                      const ActionProfile& profile) {
    WelfareReport r;
    r.by_identity.resize(model.identities.size());
    for (IdentityId k = 0; k < r.by_identity.size(); ++k) r.by_identity[k].identity = k;
    for (NodeId i = 0; i < assign.size(); ++i) {
        auto& slot = r.by_identity[assign[i]];
        ++slot.members;
        slot.total_utility += profile.utility[i];
        slot.total_action += profile.x[i];
        r.total_utility += profile.utility[i];
        r.total_action += profile.x[i];
    }
    return r;
}

WelfareDelta compare(const WelfareReport& from, const WelfareReport& to) {
    return {to.total_utility - from.total_utility, to.total_action - from.total_action};
}

std::vector<LabeledWelfare> welfare_comparison(const Model& model,
                                               const IdentityAssignment& assign) {
    std::vector<LabeledWelfare> out;
    out.push_back({"input", assign, welfare(model, assign)});
    for (IdentityId k = 0; k < model.identities.size(); ++k) {
        auto all = IdentityAssignment::uniform(assign.size(), k, model.identities.size());
        auto report = welfare(model, all);
        out.push_back({"all-" + model.identities[k].label, std::move(all), std::move(report)});
    }
    return out;
}

IdentitySet example1_identities(double w, double mu_a, double mu_b) {
    return IdentitySet({{"A", mu_a, 1.5 * w}, {"B", mu_b, 0.5 * w}});
}

Example1Report example1_check(const Population& pop, const IdentitySet& identities) {
    require_template(pop, identities, 1.5, 0.5, "welfare example 1");
    Example1Report r;
    r.w = pop.common_ability();
    r.gamma = pop.gamma();
    r.beta = pop.beta();
    r.mu_a = identities[0].status;
    r.mu_b = identities[1].status;
    r.bracket = (1.0 + 0.75 * r.gamma * r.w) / (2.0 * (r.gamma + 1.0 / r.w));
    r.intrinsic_a = homogeneous_intrinsic_value(r.w, r.gamma, identities[0]);
    r.intrinsic_b = homogeneous_intrinsic_value(r.w, r.gamma, identities[1]);
    r.c = r.beta > 0.0 ? (r.mu_b - r.mu_a) / r.beta : std::numeric_limits<double>::quiet_NaN();
    r.low_coordination_persists = r.mu_a - r.beta < r.mu_b;
    return r;
}

IdentitySet example2_identities(double w, double mu_a, double mu_b) {
    return IdentitySet({{"A", mu_a, 2.0 * w}, {"B", mu_b, w}});
}

Example2Report example2_check(const Population& pop, const IdentitySet& identities) {
    require_template(pop, identities, 2.0, 1.0, "welfare example 2");
    Example2Report r;
    r.w = pop.common_ability();
    r.gamma = pop.gamma();
    r.beta = pop.beta();
    r.mu_a = identities[0].status;
    r.mu_b = identities[1].status;
    r.intrinsic_a = homogeneous_intrinsic_value(r.w, r.gamma, identities[0]);
    r.intrinsic_b = homogeneous_intrinsic_value(r.w, r.gamma, identities[1]);
    r.prescription_cost = r.gamma * r.w / (2.0 * (r.gamma + 1.0 / r.w));
    const double gap = r.mu_a - r.mu_b;
    r.low_status_intrinsically_better = 2.0 * gap < r.w * r.gamma / (r.gamma + 1.0 / r.w);
    const double middle = r.prescription_cost - gap;
    r.high_coordination_persists = r.beta > middle && middle > 0.0;
    return r;
}

} // namespace idnet
