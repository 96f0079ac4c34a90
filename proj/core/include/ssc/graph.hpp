#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ssc/matrix.hpp"

namespace ssc {

/// Zero-based node index. Documents and CLI output use 1-based indices.
using NodeId = std::size_t;

/// d×d weight carried by one edge.
using BlockWeight = Matrix;

/// How the reverse direction of an undirected edge is derived:
/// `entrywise` A_ji = A_ij, `transpose` A_ji = A_ijᵀ, `none` for directed graphs.
enum class SymmetryConvention { entrywise, transpose, none };

std::string_view to_string(SymmetryConvention s);
std::optional<SymmetryConvention> parse_symmetry(std::string_view name);

/// An edge as declared in a document. For undirected graphs the reverse
/// direction is implied by the symmetry convention.
struct Edge {
    NodeId from;
    NodeId to;
    BlockWeight weight;
};

/// Neighbor with the weight of the arc (owner → node).
struct Arc {
    NodeId node;
    BlockWeight weight;
};

class MatrixWeightedGraph {
public:
    /// Validates all invariants and materializes both directions of every
    /// undirected edge. Throws std::invalid_argument (or std::out_of_range for
    /// bad indices) on violation.
    MatrixWeightedGraph(std::size_t n, std::size_t d, SymmetryConvention symmetry,
                        std::vector<NodeId> leaders, const std::vector<Edge>& edges);

    std::size_t n() const noexcept { return n_; }
    std::size_t d() const noexcept { return d_; }
    bool directed() const noexcept { return symmetry_ == SymmetryConvention::none; }
    SymmetryConvention symmetry() const noexcept { return symmetry_; }
    const std::vector<NodeId>& leaders() const noexcept { return leaders_; }

    /// Out-arcs of node i, sorted by target.
    const std::vector<Arc>& arcs(NodeId i) const;

    /// Weight of arc (i, j), or nullopt when absent.
    std::optional<BlockWeight> weight(NodeId i, NodeId j) const;

    /// Every stored arc (i, j) in (i, j) order.
    const std::map<std::pair<NodeId, NodeId>, BlockWeight>& adjacency() const noexcept { return adjacency_; }

    /// Edges in declaration-canonical form: every directed arc, or for
    /// undirected graphs only i < j.
    std::vector<Edge> declared_edges() const;

    friend bool operator==(const MatrixWeightedGraph& a, const MatrixWeightedGraph& b) {
        return a.n_ == b.n_ && a.d_ == b.d_ && a.symmetry_ == b.symmetry_ && a.leaders_ == b.leaders_ &&
               a.adjacency_ == b.adjacency_;
    }

private:
    std::size_t n_;
    std::size_t d_;
    SymmetryConvention symmetry_;
    std::vector<NodeId> leaders_;
    std::map<std::pair<NodeId, NodeId>, BlockWeight> adjacency_;
    std::vector<std::vector<Arc>> out_;
};

/// Reverse-direction weight under an undirected convention.
BlockWeight mirrored(const BlockWeight& w, SymmetryConvention s);

/// Block sum of the weights on the out-arcs of i; the zero block when i is
/// isolated.
BlockWeight degree(const MatrixWeightedGraph& g, NodeId i);

/// Block sum of weights on arcs from i into the node subset `cell`.
BlockWeight cell_degree(const MatrixWeightedGraph& g, NodeId i, std::span<const NodeId> cell);

/// L = D - A with (i,i) block degree(i) and (i,j) block -A_ij.
BlockMatrix build_laplacian(const MatrixWeightedGraph& g);

/// nd × md matrix with an identity block at (leaders[l], l).
BlockMatrix build_input_matrix(std::span<const NodeId> leaders, std::size_t n, std::size_t d);

// ---------------------------------------------------------------------------
// Weight patterns: fixed topology with symbolic weights.

enum class SignRequirement { positive, negative };

std::string_view to_string(SignRequirement s);
std::optional<SignRequirement> parse_sign(std::string_view name);

struct EqualConstraint {
    std::size_t lhs;  // edge variable indices
    std::size_t rhs;
};
struct FixedConstraint {
    std::size_t edge;
    BlockWeight value;
};
/// Every entry of the block must have the given strict sign.
struct SignConstraint {
    std::size_t edge;
    SignRequirement sign;
};
using Constraint = std::variant<EqualConstraint, FixedConstraint, SignConstraint>;

struct PatternEdge {
    NodeId from;
    NodeId to;
    std::string name;
};

/// Topology plus one symbolic d×d block per declared edge. Each block is
/// implicitly required to be not identically zero.
class WeightPattern {
public:
    WeightPattern(std::size_t n, std::size_t d, SymmetryConvention symmetry, std::vector<NodeId> leaders,
                  std::vector<PatternEdge> edges, std::vector<Constraint> constraints = {});

    /// Pattern with the graph's topology and free weights.
    static WeightPattern from_topology(const MatrixWeightedGraph& g);

    std::size_t n() const noexcept { return n_; }
    std::size_t d() const noexcept { return d_; }
    bool directed() const noexcept { return symmetry_ == SymmetryConvention::none; }
    SymmetryConvention symmetry() const noexcept { return symmetry_; }
    const std::vector<NodeId>& leaders() const noexcept { return leaders_; }
    const std::vector<PatternEdge>& edges() const noexcept { return edges_; }
    const std::vector<Constraint>& constraints() const noexcept { return constraints_; }

    std::size_t follower_count() const noexcept { return n_ - leaders_.size(); }
    bool is_leader(NodeId v) const;

    std::optional<std::size_t> find_edge(std::string_view name) const;
    std::optional<std::size_t> find_edge(NodeId from, NodeId to) const;

    /// One entry per arc (i, j) of the materialized graph: the edge variable
    /// it reads and whether it reads the variable's transpose.
    struct ArcRef {
        NodeId from;
        NodeId to;
        std::size_t edge;
        bool transposed;
    };
    const std::vector<ArcRef>& arcs() const noexcept { return arcs_; }

    /// Sign requirement attached to the edge, if any.
    std::optional<SignRequirement> sign_of(std::size_t edge) const;

    /// Instantiates the pattern with one block per edge variable.
    MatrixWeightedGraph instantiate(const std::vector<BlockWeight>& blocks) const;

private:
    std::size_t n_;
    std::size_t d_;
    SymmetryConvention symmetry_;
    std::vector<NodeId> leaders_;
    std::vector<PatternEdge> edges_;
    std::vector<Constraint> constraints_;
    std::vector<ArcRef> arcs_;
};

}  // namespace ssc
