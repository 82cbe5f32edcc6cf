#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "idnet/actions.hpp"
#include "idnet/network.hpp"

namespace idnet {

struct IdentityWelfare {
    IdentityId identity = 0;
    std::size_t members = 0;
    double total_utility = 0.0;
    double total_action = 0.0;
};

struct WelfareReport {
    double total_utility = 0.0; // utilitarian sum
    double total_action = 0.0;
    std::vector<IdentityWelfare> by_identity;
};

WelfareReport welfare(const Model& model, const IdentityAssignment& assign);
WelfareReport welfare(const Model& model, const IdentityAssignment& assign,
                      const ActionProfile& profile);

struct WelfareDelta {
    double utility = 0.0;
    double action = 0.0;
};

// to - from
WelfareDelta compare(const WelfareReport& from, const WelfareReport& to);

struct LabeledWelfare {
    std::string label;
    IdentityAssignment assignment;
    WelfareReport report;
};

// The given assignment plus every all-X profile, keyed by a label.
std::vector<LabeledWelfare> welfare_comparison(const Model& model, const IdentityAssignment& assign);

// Upward mobility that raises welfare: v_A = 1.5 w, v_B = 0.5 w.
struct Example1Report {
    double w = 0.0, gamma = 0.0, beta = 0.0, mu_a = 0.0, mu_b = 0.0;
    double bracket = 0.0; // (1 + 3/4 gamma w) / (2 (gamma + 1/w)), shared by both identities
    double intrinsic_a = 0.0;
    double intrinsic_b = 0.0;
    double c = 0.0;                  // (mu_B - mu_A) / beta; NaN when beta = 0
    bool low_coordination_persists = false; // mu_A - beta < mu_B
};

IdentitySet example1_identities(double w, double mu_a, double mu_b);
// Throws InputError unless the identities follow the v_A = 1.5 w, v_B = 0.5 w template.
Example1Report example1_check(const Population& pop, const IdentitySet& identities);

// Upward mobility that lowers welfare: v_A = 2 w, v_B = w.
struct Example2Report {
    double w = 0.0, gamma = 0.0, beta = 0.0, mu_a = 0.0, mu_b = 0.0;
    double intrinsic_a = 0.0;
    double intrinsic_b = 0.0;
    double prescription_cost = 0.0; // gamma w / (2 (gamma + 1/w))
    bool low_status_intrinsically_better = false; // 2 (mu_A - mu_B) < w gamma / (gamma + 1/w)
    bool high_coordination_persists = false;      // beta > cost - (mu_A - mu_B) > 0
};

IdentitySet example2_identities(double w, double mu_a, double mu_b);
Example2Report example2_check(const Population& pop, const IdentitySet& identities);

} // namespace idnet
