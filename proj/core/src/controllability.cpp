#include "ssc/controllability.hpp"

#include <Eigen/Dense>

#include <string>

#include "ssc/errors.hpp"

namespace ssc {

namespace {

void check_pair(const Matrix& L, const Matrix& M) {
    if (L.rows() != L.cols())
        throw DimensionMismatch("L must be square, got " + std::to_string(L.rows()) + "x" + std::to_string(L.cols()));
    if (M.rows() != L.rows())
        throw DimensionMismatch("M has " + std::to_string(M.rows()) + " rows, L has " + std::to_string(L.rows()));
}

std::vector<Integer> apply(const std::vector<std::vector<Integer>>& A, const std::vector<Integer>& x) {
    std::vector<Integer> y(A.size());
    for (std::size_t r = 0; r < A.size(); ++r) {
        const auto& row = A[r];
        for (std::size_t c = 0; c < row.size(); ++c)
            if (sgn(row[c]) != 0 && sgn(x[c]) != 0) y[r] += row[c] * x[c];
    }
    return y;
}

Eigen::MatrixXd to_eigen(const Matrix& m) {
    Eigen::MatrixXd x(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) x(r, c) = m(r, c).get_d();
    return x;
}

std::size_t numerical_rank(const Eigen::MatrixXd& x) {
    if (x.size() == 0) return 0;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(x);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    return static_cast<std::size_t>((sv.array() > kFloatingRankRelTol * sv(0)).count());
}

}  // namespace

ControllableSubspace controllable_subspace(const Matrix& L, const Matrix& M) {
    check_pair(L, M);
    const std::size_t N = L.rows();
    // Scaling L by a positive integer leaves every Krylov span unchanged.
    const auto Lz = integer_rows(L);

    IncrementalBasis basis(N);
    for (std::size_t c = 0; c < M.cols(); ++c) {
        std::vector<Rational> col(N);
        for (std::size_t r = 0; r < N; ++r) col[r] = M(r, c);
        basis.insert(primitive_integer_vector(col));
    }
    // Every stored vector gets L applied exactly once; the span is then
    // L-invariant and, being built from im(M) by L, minimal.
    std::size_t processed = 0;
    while (processed < basis.size() && basis.size() < N) {
        const std::size_t frontier_end = basis.size();
        for (; processed < frontier_end && basis.size() < N; ++processed)
            basis.insert(apply(Lz, basis.vector(processed)));
        if (basis.size() == frontier_end) break;
    }
    return ControllableSubspace{basis.as_columns(), basis.size()};
}

std::size_t controllability_dimension(const Matrix& L, const Matrix& M, RankBackend backend) {
    if (backend == RankBackend::exact) return controllable_subspace(L, M).dim;
    check_pair(L, M);
    const Eigen::MatrixXd l = to_eigen(L);
    Eigen::MatrixXd block = to_eigen(M);
    Eigen::MatrixXd krylov = block;
    std::size_t r = numerical_rank(krylov);
    for (std::size_t step = 1; step < L.rows() && r < L.rows(); ++step) {
        block = l * block;
        Eigen::MatrixXd grown(krylov.rows(), krylov.cols() + block.cols());
        grown << krylov, block;
        const std::size_t next = numerical_rank(grown);
        if (next == r) break;
        krylov = std::move(grown);
        r = next;
    }
    return r;
}

bool is_controllable(const Matrix& L, const Matrix& M) { return controllable_subspace(L, M).dim == L.rows(); }

std::pair<Matrix, Matrix> dual_pair(const Matrix& L, const Matrix& M) {
    check_pair(L, M);
    return {L.transpose(), M};
}

std::size_t observability_rank(const Matrix& L, const Matrix& M, RankBackend backend) {
    check_pair(L, M);
    const Matrix Mt = M.transpose();
    Matrix stack = Mt;
    Matrix term = Mt;
    for (std::size_t k = 1; k < L.rows(); ++k) {
        term = term * L;
        stack = vstack(stack, term);
    }
    return rank(stack, backend);
}

ReversalCheck reversal_check(const MatrixWeightedGraph& g) {
    std::vector<Edge> reversed_edges;
    for (const auto& [key, w] : g.adjacency()) reversed_edges.push_back(Edge{key.second, key.first, w.transpose()});
    ReversalCheck out{false,
                      MatrixWeightedGraph(g.n(), g.d(), SymmetryConvention::none, g.leaders(), reversed_edges),
                      {}};

    const BlockMatrix Lrev = build_laplacian(out.reversed);
    const BlockMatrix Lt(build_laplacian(g).matrix().transpose(), g.d());
    for (NodeId i = 0; i < g.n(); ++i)
        for (NodeId j = 0; j < g.n(); ++j) {
            Matrix a = Lrev.block(i, j);
            Matrix b = Lt.block(i, j);
            if (!(a == b)) out.mismatches.push_back(BlockMismatch{i, j, std::move(a), std::move(b)});
        }
    out.holds = out.mismatches.empty();
    return out;
}

bool is_weight_balanced(const MatrixWeightedGraph& g) {
    std::vector<Matrix> in(g.n(), Matrix::zero(g.d(), g.d()));
    for (const auto& [key, w] : g.adjacency()) in[key.second] += w;
    for (NodeId i = 0; i < g.n(); ++i)
        if (!(degree(g, i) == in[i])) return false;
    return true;
}

}  // namespace ssc
