#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "idnet/network.hpp"

namespace idnet {

inline constexpr double kDirectResidualTol = 1e-10;

// b_i = 1 / (gamma + alpha + 1/w_i).
std::vector<double> conformity_weights(const Population& pop);

// Equilibrium action of every member of identity I when abilities are all w:
// (1 + gamma v) / (gamma + 1/w). Also the action of a member with no
// same-identity neighbour, for any population.
double homogeneous_action(double w, double gamma, double prescribed_action);

// mu_I + [1 + gamma v (2 - v/w)] / (2 (gamma + 1/w)).
double homogeneous_intrinsic_value(double w, double gamma, const IdentitySpec& identity);

struct ActionProfile {
    std::vector<double> x;
    std::vector<double> xbar; // same-identity neighbour average; x_i itself when isolated
    std::vector<double> utility;
    std::size_t iterations = 0; // 0 for the direct solver
    double residual = 0.0;      // max |FOC residual|
};

// Same-identity neighbour averages of x. A member without same-identity
// neighbours compares against itself, so its conformity penalty vanishes.
std::vector<double> neighbor_averages(const Network& net, const IdentityAssignment& assign,
                                      std::span<const double> x);

// max_i |x_i - b_i (1 + gamma v_I + alpha xbar_i)|
double foc_residual(const Model& model, const IdentityAssignment& assign,
                    std::span<const double> x);

// Unique stage-2 equilibrium, one dense LU per connected component of each
// identity's subgraph.
ActionProfile solve_actions(const Model& model, const IdentityAssignment& assign);

struct IterativeOptions {
    double tol = 1e-12;
    std::size_t max_iters = 1'000'000;
};

// Jacobi iteration of x <- b (1 + gamma v + alpha xbar(x)) from x0. Stops when
// the sup-norm step is <= tol; throws ConvergenceError past max_iters.
ActionProfile solve_actions_iterative(const Model& model, const IdentityAssignment& assign,
                                      std::span<const double> x0, IterativeOptions options = {});

// Utility of individual i at the action vector x, for the identity it holds.
double utility(const Model& model, const IdentityAssignment& assign, std::span<const double> x,
               NodeId i);

enum class DeviationMode {
    FixedProfile, // everyone else keeps their current equilibrium action
    Resolve,      // stage 2 is re-solved after i switches
};

// V_{i,I}: utility of i after best-responding in action while holding I.
double value_function(const Model& model, const IdentityAssignment& assign,
                      const ActionProfile& profile, NodeId i, IdentityId identity,
                      DeviationMode mode = DeviationMode::FixedProfile);

// n x m table of V_{i,I}.
Eigen::MatrixXd value_table(const Model& model, const IdentityAssignment& assign,
                            const ActionProfile& profile,
                            DeviationMode mode = DeviationMode::FixedProfile);

} // namespace idnet
