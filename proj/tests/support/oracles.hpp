#pragma once

// Brute-force reference implementations used to check the library. None of
// these call into the code under test beyond the plain data types.

#include <cstddef>
#include <vector>

#include "idnet/network.hpp"
#include "idnet/random.hpp"

namespace oracle {

using idnet::IdentityAssignment;
using idnet::Network;
using idnet::NodeId;

// One representative of every isomorphism class of connected simple graphs
// on n vertices (n <= 8).
std::vector<Network> connected_graphs(std::size_t n);

// Random spanning tree plus each remaining pair with probability p.
Network random_connected_graph(idnet::Rng& rng, std::size_t n, double p);

// Every node's current identity is a best response: A (0) iff d_A - d_B >= c.
bool is_equilibrium(const Network& net, const IdentityAssignment& assign, double c);

// Union of all subsets S with k_i(S) > |c| for every i in S, by checking all
// 2^n subsets (n <= 16). The union of blocking sets is blocking, so this is
// the maximal one.
std::vector<NodeId> max_blocking_set(const Network& net, double c);

// Equilibrium actions from one Gaussian elimination over the full n x n
// system, isolated same-identity members compared against themselves.
std::vector<double> actions(const Network& net, const IdentityAssignment& assign,
                            const std::vector<double>& w, double alpha, double gamma,
                            const std::vector<double>& v_by_identity);

// Utility of i at the action vector x, evaluated term by term.
double utility(const Network& net, const IdentityAssignment& assign, const std::vector<double>& x,
               NodeId i, const std::vector<double>& w, double alpha, double beta, double gamma,
               const std::vector<double>& mu_by_identity, const std::vector<double>& v_by_identity);

// mu + [1 + gamma v (2 - v/w)] / (2 (gamma + 1/w))
double intrinsic_value(double mu, double v, double w, double gamma);

} // namespace oracle
