#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ssc/graph.hpp"
#include "ssc/linalg.hpp"
#include "ssc/matrix.hpp"

namespace ssc {

/// Basis of the minimal L-invariant subspace containing im(M).
struct ControllableSubspace {
    Matrix basis;  // nd × dim, independent columns
    std::size_t dim = 0;
};

/// Krylov span im(M) + L im(M) + ..., built incrementally with fraction-free
/// reduction. L is applied only to newly added basis vectors and the
/// iteration stops as soon as a round adds nothing.
ControllableSubspace controllable_subspace(const Matrix& L, const Matrix& M);

/// Dimension of the controllable subspace. The floating backend grows the
/// block Krylov matrix [M LM L²M ...] in doubles until its numerical rank
/// stalls; it is not a certificate.
std::size_t controllability_dimension(const Matrix& L, const Matrix& M, RankBackend backend = RankBackend::exact);

bool is_controllable(const Matrix& L, const Matrix& M);

/// (Lᵀ, M): observability of (L, M) is controllability of this pair.
std::pair<Matrix, Matrix> dual_pair(const Matrix& L, const Matrix& M);

/// Rank of the stacked observability matrix [Mᵀ; MᵀL; ...; MᵀL^{N-1}], with
/// N = rows of L, materialized in full.
std::size_t observability_rank(const Matrix& L, const Matrix& M, RankBackend backend = RankBackend::exact);

struct BlockMismatch {
    NodeId row;
    NodeId col;
    BlockWeight reversed;    // block of L_rev
    BlockWeight transposed;  // block of Lᵀ
};

struct ReversalCheck {
    bool holds = false;
    MatrixWeightedGraph reversed;
    std::vector<BlockMismatch> mismatches;
};

/// Reverses every arc (i → j with A_ij becomes j → i with A_ijᵀ) and compares
/// the Laplacian of the result with Lᵀ. Off-diagonal blocks always agree; the
/// diagonal agrees exactly when every node's out-degree equals its in-degree.
ReversalCheck reversal_check(const MatrixWeightedGraph& g);

/// Σ_j A_ij == Σ_j A_ji at every node.
bool is_weight_balanced(const MatrixWeightedGraph& g);

}  // namespace ssc
