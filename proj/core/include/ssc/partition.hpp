#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ssc/graph.hpp"
#include "ssc/matrix.hpp"

namespace ssc {

/// Ordered cells covering 0..n-1. Always kept canonical: members ascending,
/// cells ordered by least member.
class Partition {
public:
    /// Throws InvalidPartition when cells are empty, overlap, leave a node
    /// uncovered, or reference a node ≥ n.
    Partition(std::vector<std::vector<NodeId>> cells, std::size_t n);

    static Partition singletons(std::size_t n);
    static Partition whole(std::size_t n);

    /// Builds the partition whose cell ids are given per node; labels need not
    /// be contiguous.
    static Partition from_labels(std::span<const std::size_t> labels);

    std::size_t n() const noexcept { return cell_of_.size(); }
    std::size_t size() const noexcept { return cells_.size(); }
    const std::vector<std::vector<NodeId>>& cells() const noexcept { return cells_; }
    const std::vector<NodeId>& cell(std::size_t k) const { return cells_[k]; }
    std::size_t cell_of(NodeId v) const { return cell_of_.at(v); }

    /// Every cell of *this is contained in a cell of `coarser`.
    bool refines(const Partition& coarser) const;

    friend bool operator==(const Partition& a, const Partition& b) { return a.cells_ == b.cells_; }
    friend bool operator<(const Partition& a, const Partition& b) { return a.cells_ < b.cells_; }

private:
    Partition() = default;
    void canonicalize();

    std::vector<std::vector<NodeId>> cells_;
    std::vector<std::size_t> cell_of_;
};

/// Parses "[[1],[2,3],[4]]" or "1|2,3|4" (1-based). Throws InvalidPartition.
Partition parse_partition(std::string_view text, std::size_t n);
std::string format_partition(const Partition& p);

/// nd × kd block 0/I matrix with identity at (i, j) iff node i is in cell j.
BlockMatrix characteristic_matrix(const Partition& p, std::size_t d);

enum class NeighborDirection { out, in };

/// Reading of the equitable condition. `include_own_cell` also compares sums
/// into the cell that holds the pair; `in` compares in-neighbor sums.
struct EquitableOptions {
    bool include_own_cell = true;
    NeighborDirection direction = NeighborDirection::out;
};

struct EPViolation {
    std::size_t cell;    // cell holding r and s
    NodeId r;
    NodeId s;
    std::size_t target;  // cell the sums go into
    BlockWeight sum_r;
    BlockWeight sum_s;
};

struct EPReport {
    bool equitable = true;
    std::vector<EPViolation> violations;
};

/// Checks every pair r < s within each cell against every target cell and
/// enumerates all violations.
EPReport verify_equitable(const MatrixWeightedGraph& g, const Partition& p, const EquitableOptions& opts = {});

/// Coarsest equitable partition in which every protected node is a
/// singleton, by iterated signature splitting.
Partition coarsest_ep(const MatrixWeightedGraph& g, std::span<const NodeId> protected_nodes,
                      const EquitableOptions& opts = {});

/// Graph on cells. `weights` holds d(V_i, V_j) for i ≠ j where nonzero.
struct QuotientGraph {
    std::size_t k = 0;
    std::size_t d = 0;
    std::map<std::pair<std::size_t, std::size_t>, BlockWeight> weights;
};

/// Throws NotEquitable when p is not equitable for g (out-neighbor sums, own
/// cell excluded: only i ≠ j enters the quotient).
QuotientGraph quotient(const MatrixWeightedGraph& g, const Partition& p);

/// (i,i) block Σ_{j≠i} d(V_i,V_j); (i,j) block -d(V_i,V_j).
BlockMatrix quotient_laplacian(const QuotientGraph& q);

struct LiftCheck {
    bool commutes = false;   // L P == P Lπ
    bool invariant = false;  // rank([P | L P]) == rank(P)
    bool ok() const noexcept { return commutes && invariant; }
};

/// Throws DimensionMismatch on non-conformable inputs.
LiftCheck verify_lift(const BlockMatrix& L, const BlockMatrix& P, const BlockMatrix& L_pi);

}  // namespace ssc
