#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "parikh/numeric.hpp"

namespace parikh {

using NodeId = std::size_t;

struct Edge {
    std::size_t id;
    NodeId source;
    NodeId target;
    BigInt weight;
};

using Matrix = std::vector<std::vector<BigInt>>;

/// Directed multigraph with positive integer edge weights. A weight-w edge
/// stands for w parallel copies.
class WeightedMultigraph {
public:
    WeightedMultigraph() = default;

    /// Adds a node named @p name (unique). Returns its id.
    NodeId add_node(const std::string& name);
    /// Adds a node with a generated name "v<k>".
    NodeId add_node();
    /// Adds an edge; weight zero is dropped and returns nullopt. Negative weights throw InputError.
    std::optional<std::size_t> add_edge(NodeId source, NodeId target, const BigInt& weight = 1);

    std::size_t node_count() const { return names_.size(); }
    const std::vector<std::string>& node_names() const { return names_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::optional<NodeId> node_index(const std::string& name) const;

    /// Weighted out-degree, loops included.
    BigInt out_degree(NodeId v) const;
    /// Weighted in-degree, loops included.
    BigInt in_degree(NodeId v) const;
    /// Nodes with an incident edge, ascending.
    std::vector<NodeId> support() const;
    BigInt max_weight() const;

    /// D_out - A over all nodes with loops removed. Rows sum to zero.
    Matrix laplacian() const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeId> ids_;
    std::vector<Edge> edges_;
};

/// Fraction-free Gaussian elimination. The matrix must be square.
BigInt bareiss_determinant(Matrix m);

/// Balanced at every node and the support is strongly connected. True for the edgeless graph.
bool is_eulerian_connected(const WeightedMultigraph& g);

/// Weighted spanning in-trees of the support directed toward @p root.
BigInt spanning_tree_count(const WeightedMultigraph& g, NodeId root);

/**
 * Weighted Euler-circuit count up to rotation,
 * t(G) * prod_v (d(v)-1)! / prod_e w(e)!.
 *
 * The value is a non-negative rational; it is an integer whenever some edge
 * has weight one. StructuralError unless is_eulerian_connected(g).
 */
Rational euler_count(const WeightedMultigraph& g);

/// euler_count, which must be integral; InternalError otherwise.
BigInt euler_count_integer(const WeightedMultigraph& g);

/// Oracle for euler_count: expands weights into copies, counts rotation
/// classes of linear circuits and divides by the copy permutations.
/// SizeError when more than @p max_copies copies would be created.
Rational brute_euler_count(const WeightedMultigraph& g, std::size_t max_copies = 12);

/// Number of weighted paths of length @p n from @p u to @p v.
BigInt count_paths(const WeightedMultigraph& g, NodeId u, NodeId v, std::uint64_t n);

} // namespace parikh
