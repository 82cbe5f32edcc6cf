#include "idnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "idnet/errors.hpp"

namespace idnet {

namespace {

std::string str(const char* prefix, std::size_t value) {
    return std::string(prefix) + std::to_string(value);
}

} // namespace

Network::Network(std::size_t n, std::span<const Edge> edges, Connectivity connectivity)
    : adjacency_(n) {
    std::set<Edge> unique;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        auto [i, j] = edges[k];
        if (i >= n || j >= n) {
            throw InputError(str("endpoint out of range at edge index ", k));
        }
        if (i == j) {
            throw InputError(str("self-loop at edge index ", k));
        }
        unique.insert(std::minmax(i, j));
    }
    edges_.assign(unique.begin(), unique.end());
    for (auto [i, j] : edges_) {
        adjacency_[i].push_back(j);
        adjacency_[j].push_back(i);
    }
    for (auto& row : adjacency_) {
        std::sort(row.begin(), row.end());
    }
    if (connectivity == Connectivity::Required && !is_connected()) {
        throw InputError("network is not connected");
    }
}

Network Network::from_adjacency(const std::vector<std::vector<int>>& adjacency,
                                Connectivity connectivity) {
    const std::size_t n = adjacency.size();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        if (adjacency[i].size() != n) {
            throw InputError(str("adjacency row has wrong length at row ", i));
        }
        if (adjacency[i][i] != 0) {
            throw InputError(str("self-loop at node ", i));
        }
        for (std::size_t j = 0; j < n; ++j) {
            const int a = adjacency[i][j];
            if (a != 0 && a != 1) {
                throw InputError("adjacency entries must be 0 or 1");
            }
            if (a != adjacency[j][i]) {
                std::ostringstream os;
                os << "asymmetric adjacency at (" << i << ", " << j << ")";
                throw InputError(os.str());
            }
            if (a == 1 && i < j) {
                edges.emplace_back(i, j);
            }
        }
    }
    return Network(n, edges, connectivity);
}

std::span<const NodeId> Network::neighbors(NodeId i) const { return adjacency_.at(i); }

std::size_t Network::degree(NodeId i) const { return adjacency_.at(i).size(); }

bool Network::has_edge(NodeId i, NodeId j) const {
    const auto& row = adjacency_.at(i);
    return std::binary_search(row.begin(), row.end(), j);
}

std::size_t Network::min_degree() const {
    std::size_t best = adjacency_.empty() ? 0 : adjacency_.front().size();
    for (const auto& row : adjacency_) best = std::min(best, row.size());
    return best;
}

std::size_t Network::max_degree() const {
    std::size_t best = 0;
    for (const auto& row : adjacency_) best = std::max(best, row.size());
    return best;
}

bool Network::is_connected() const {
    const std::size_t n = size();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : adjacency_[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

IdentitySet::IdentitySet(std::vector<IdentitySpec> specs) : specs_(std::move(specs)) {
    if (specs_.size() < 2) {
        throw InputError("at least two identities are required");
    }
    std::set<std::string> labels;
    for (const auto& s : specs_) {
        if (s.label.empty()) throw InputError("identity label must be non-empty");
        if (!labels.insert(s.label).second) {
            throw InputError("duplicate identity label '" + s.label + "'");
        }
        if (!std::isfinite(s.status) || !std::isfinite(s.prescribed_action)) {
            throw InputError("identity '" + s.label + "' has a non-finite parameter");
        }
        if (s.prescribed_action < 0.0) {
            throw InputError("prescribed action of '" + s.label + "' must be non-negative");
        }
    }
}

IdentityId IdentitySet::index_of(std::string_view label) const {
    for (IdentityId k = 0; k < specs_.size(); ++k) {
        if (specs_[k].label == label) return k;
    }
    throw InputError("unknown identity label '" + std::string(label) + "'");
}

std::vector<std::string> IdentitySet::pairing_warnings() const {
    std::vector<std::string> out;
    for (std::size_t a = 0; a < specs_.size(); ++a) {
        for (std::size_t b = a + 1; b < specs_.size(); ++b) {
            const auto& I = specs_[a];
            const auto& J = specs_[b];
            const bool ok = (I.prescribed_action > J.prescribed_action && I.status > J.status) ||
                            (I.prescribed_action < J.prescribed_action && I.status < J.status);
            if (!ok) {
                out.push_back("identities '" + I.label + "' and '" + J.label +
                              "' do not pair prescribed action with status monotonically");
            }
        }
    }
    return out;
}

Population::Population(std::vector<double> abilities, double alpha, double beta, double gamma)
    : abilities_(std::move(abilities)), alpha_(alpha), beta_(beta), gamma_(gamma) {
    for (std::size_t i = 0; i < abilities_.size(); ++i) {
        if (!std::isfinite(abilities_[i])) {
            throw InputError(str("non-finite ability at index ", i));
        }
        if (abilities_[i] <= 0.0) {
            throw InputError(str("ability must be positive at index ", i));
        }
    }
    for (auto [name, value] : {std::pair{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}}) {
        if (!std::isfinite(value)) throw InputError(std::string(name) + " must be finite");
        if (value < 0.0) throw InputError(std::string(name) + " must be non-negative");
    }
}

Population Population::homogeneous(std::size_t n, double w, double alpha, double beta,
                                   double gamma) {
    return Population(std::vector<double>(n, w), alpha, beta, gamma);
}

bool Population::is_homogeneous() const {
    return std::adjacent_find(abilities_.begin(), abilities_.end(), std::not_equal_to<>()) ==
           abilities_.end();
}

double Population::common_ability() const {
    if (abilities_.empty() || !is_homogeneous()) {
        throw InputError("abilities are heterogeneous; a common ability is undefined");
    }
    return abilities_.front();
}

IdentityAssignment::IdentityAssignment(std::vector<IdentityId> ids, std::size_t identity_count)
    : ids_(std::move(ids)), identity_count_(identity_count) {
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (ids_[i] >= identity_count_) {
            throw InputError(str("unknown identity at individual ", i));
        }
    }
}

IdentityAssignment IdentityAssignment::uniform(std::size_t n, IdentityId id,
                                               std::size_t identity_count) {
    return IdentityAssignment(std::vector<IdentityId>(n, id), identity_count);
}

IdentityAssignment IdentityAssignment::from_labels(std::span<const std::string> labels,
                                                   const IdentitySet& identities) {
    std::vector<IdentityId> ids;
    ids.reserve(labels.size());
    for (const auto& l : labels) ids.push_back(identities.index_of(l));
    return IdentityAssignment(std::move(ids), identities.size());
}

void IdentityAssignment::set(NodeId i, IdentityId id) {
    if (id >= identity_count_) throw InputError(str("unknown identity ", id));
    ids_.at(i) = id;
}

IdentityAssignment IdentityAssignment::with(NodeId i, IdentityId id) const {
    IdentityAssignment copy = *this;
    copy.set(i, id);
    return copy;
}

std::size_t IdentityAssignment::count(IdentityId id) const {
    return static_cast<std::size_t>(std::count(ids_.begin(), ids_.end(), id));
}

std::vector<std::size_t> IdentityAssignment::counts() const {
    std::vector<std::size_t> out(identity_count_, 0);
    for (IdentityId id : ids_) ++out[id];
    return out;
}

std::vector<NodeId> IdentityAssignment::members(IdentityId id) const {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < ids_.size(); ++i) {
        if (ids_[i] == id) out.push_back(i);
    }
    return out;
}

Model::Model(Network net, IdentitySet ids, Population pop)
    : network(std::move(net)), identities(std::move(ids)), population(std::move(pop)) {
    if (population.size() != network.size()) {
        throw InputError("abilities length " + std::to_string(population.size()) +
                         " does not match n = " + std::to_string(network.size()));
    }
}

std::size_t typed_degree(const Network& net, const IdentityAssignment& assign, NodeId i,
                         IdentityId identity) {
    if (identity >= assign.identity_count()) {
        throw InputError(str("unknown identity ", identity));
    }
    std::size_t d = 0;
    for (NodeId j : net.neighbors(i)) {
        if (assign[j] == identity) ++d;
    }
    return d;
}

SameIdentityMatrix same_identity_row_matrix(const Network& net, const IdentityAssignment& assign,
                                            IdentityId identity) {
    SameIdentityMatrix out;
    out.identity = identity;
    out.members = assign.members(identity);
    const auto m = static_cast<Eigen::Index>(out.members.size());
    out.weights = Eigen::MatrixXd::Zero(m, m);
    std::vector<Eigen::Index> position(net.size(), -1);
    for (Eigen::Index r = 0; r < m; ++r) position[out.members[r]] = r;
    for (Eigen::Index r = 0; r < m; ++r) {
        const NodeId i = out.members[r];
        const auto d = typed_degree(net, assign, i, identity);
        if (d == 0) continue;
        for (NodeId j : net.neighbors(i)) {
            if (assign[j] == identity) out.weights(r, position[j]) = 1.0 / static_cast<double>(d);
        }
    }
    return out;
}

long SubgroupView::k(NodeId i) const {
    auto it = std::lower_bound(members.begin(), members.end(), i);
    if (it == members.end() || *it != i) {
        throw InputError(str("individual is not a member of the subgroup: ", i));
    }
    return link_difference[static_cast<std::size_t>(it - members.begin())];
}

SubgroupView link_difference(const Network& net, std::span<const NodeId> subset) {
    if (subset.empty()) throw InputError("subgroup must be non-empty");
    SubgroupView view;
    view.members.assign(subset.begin(), subset.end());
    std::sort(view.members.begin(), view.members.end());
    view.members.erase(std::unique(view.members.begin(), view.members.end()), view.members.end());
    std::vector<char> in_set(net.size(), 0);
    for (NodeId i : view.members) {
        if (i >= net.size()) throw InputError(str("subgroup member out of range: ", i));
        in_set[i] = 1;
    }
    for (NodeId i : view.members) {
        std::size_t in = 0;
        for (NodeId j : net.neighbors(i)) in += in_set[j];
        const std::size_t out = net.degree(i) - in;
        view.inside.push_back(in);
        view.outside.push_back(out);
        view.link_difference.push_back(static_cast<long>(in) - static_cast<long>(out));
    }
    return view;
}

} // namespace idnet
