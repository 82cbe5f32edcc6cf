#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace idnet {

using NodeId = std::size_t;
using IdentityId = std::size_t;
using Edge = std::pair<NodeId, NodeId>;

enum class Connectivity { Required, Relaxed };

// Undirected simple graph over individuals 0..n-1. Immutable once built.
class Network {
public:
    Network() = default;

    // Duplicate edges ((i,j) twice, or (i,j) and (j,i)) collapse into one.
    // Self-loops, out-of-range endpoints and (unless relaxed) a disconnected
    // graph raise InputError.
    Network(std::size_t n, std::span<const Edge> edges,
            Connectivity connectivity = Connectivity::Required);

    // Builds from a 0/1 adjacency matrix; rejects asymmetric matrices and
    // non-zero diagonals instead of repairing them.
    static Network from_adjacency(const std::vector<std::vector<int>>& adjacency,
                                  Connectivity connectivity = Connectivity::Required);

    std::size_t size() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    // Canonical edge list: (i, j) with i < j, sorted.
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const NodeId> neighbors(NodeId i) const;
    std::size_t degree(NodeId i) const;
    bool has_edge(NodeId i, NodeId j) const;

    std::size_t min_degree() const;
    std::size_t max_degree() const;
    bool is_connected() const;

private:
    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<Edge> edges_;
};

struct IdentitySpec {
    std::string label;
    double status = 0.0;            // mu_I
    double prescribed_action = 0.0; // v_I
};

class IdentitySet {
public:
    IdentitySet() = default;
    explicit IdentitySet(std::vector<IdentitySpec> specs);

    std::size_t size() const noexcept { return specs_.size(); }
    const IdentitySpec& operator[](IdentityId id) const { return specs_.at(id); }
    const std::vector<IdentitySpec>& specs() const noexcept { return specs_; }

    IdentityId index_of(std::string_view label) const;

    // Pairs that break "v_I >= v_J implies mu_I >= mu_J". Advisory only.
    std::vector<std::string> pairing_warnings() const;

private:
    std::vector<IdentitySpec> specs_;
};

class Population {
public:
    Population() = default;
    Population(std::vector<double> abilities, double alpha, double beta, double gamma);

    // Homogeneous population of n individuals with ability w.
    static Population homogeneous(std::size_t n, double w, double alpha, double beta,
                                  double gamma);

    std::size_t size() const noexcept { return abilities_.size(); }
    const std::vector<double>& abilities() const noexcept { return abilities_; }
    double ability(NodeId i) const { return abilities_.at(i); }
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double gamma() const noexcept { return gamma_; }

    bool is_homogeneous() const;
    // Throws InputError unless homogeneous.
    double common_ability() const;

private:
    std::vector<double> abilities_;
    double alpha_ = 0.0;
    double beta_ = 0.0;
    double gamma_ = 0.0;
};

// Stage-1 profile: one identity per individual.
class IdentityAssignment {
public:
    IdentityAssignment() = default;
    IdentityAssignment(std::vector<IdentityId> ids, std::size_t identity_count);

    static IdentityAssignment uniform(std::size_t n, IdentityId id, std::size_t identity_count);
    static IdentityAssignment from_labels(std::span<const std::string> labels,
                                          const IdentitySet& identities);

    std::size_t size() const noexcept { return ids_.size(); }
    std::size_t identity_count() const noexcept { return identity_count_; }
    IdentityId operator[](NodeId i) const { return ids_.at(i); }
    std::span<const IdentityId> ids() const noexcept { return ids_; }

    void set(NodeId i, IdentityId id);
    IdentityAssignment with(NodeId i, IdentityId id) const;

    std::size_t count(IdentityId id) const;
    std::vector<std::size_t> counts() const;
    std::vector<NodeId> members(IdentityId id) const;

    bool operator==(const IdentityAssignment&) const = default;
    auto operator<=>(const IdentityAssignment&) const = default;

private:
    std::vector<IdentityId> ids_;
    std::size_t identity_count_ = 0;
};

// Network plus the exogenous parameters; the assignment varies separately.
struct Model {
    Model() = default;
    Model(Network network, IdentitySet identities, Population population);

    Network network;
    IdentitySet identities;
    Population population;
};

// d_{i,I}: neighbours of i holding identity I. Independent of i's own identity.
std::size_t typed_degree(const Network& net, const IdentityAssignment& assign, NodeId i,
                         IdentityId identity);

struct SameIdentityMatrix {
    IdentityId identity = 0;
    std::vector<NodeId> members; // ascending
    Eigen::MatrixXd weights;     // row-normalised; zero row when d_{i,I} = 0
};

SameIdentityMatrix same_identity_row_matrix(const Network& net, const IdentityAssignment& assign,
                                            IdentityId identity);

// k_i(S) for every member of S.
struct SubgroupView {
    std::vector<NodeId> members; // ascending, deduplicated
    std::vector<std::size_t> inside;
    std::vector<std::size_t> outside;
    std::vector<long> link_difference;

    long k(NodeId i) const;
};

SubgroupView link_difference(const Network& net, std::span<const NodeId> subset);

} // namespace idnet
