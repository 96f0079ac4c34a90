#include "ssc/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>

#include "ssc/errors.hpp"

namespace ssc {

std::string_view to_string(RankBackend backend) {
    return backend == RankBackend::exact ? "exact" : "floating";
}

std::optional<RankBackend> parse_rank_backend(std::string_view name) {
    if (name == "exact") return RankBackend::exact;
    if (name == "floating") return RankBackend::floating;
    return std::nullopt;
}

namespace {

Integer row_lcm_of_denominators(const Matrix& m, std::size_t r) {
    Integer l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    return l;
}

}  // namespace

std::size_t rank(const Matrix& m, RankBackend backend) {
    return backend == RankBackend::exact ? rank_exact(m) : rank_floating(m);
}

std::size_t rank_exact(const Matrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    if (rows == 0 || cols == 0) return 0;

    // Row scaling does not change rank, so clear denominators row by row.
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        Integer l = row_lcm_of_denominators(m, r);
        for (std::size_t c = 0; c < cols; ++c) {
            Integer num = m(r, c).get_num() * l;
            mpz_divexact(a[r][c].get_mpz_t(), num.get_mpz_t(), m(r, c).get_den_mpz_t());
        }
    }

    // Bareiss: after step k every entry of the trailing block is a k×k minor,
    // which makes the division by the previous pivot exact.
    std::size_t rk = 0;
    Integer prev = 1;
    Integer t1;
    Integer t2;
    for (std::size_t col = 0; col < cols && rk < rows; ++col) {
        std::size_t piv = rk;
        while (piv < rows && sgn(a[piv][col]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rk]);
        const Integer& p = a[rk][col];
        for (std::size_t i = rk + 1; i < rows; ++i) {
            const Integer& lead = a[i][col];
            for (std::size_t j = col + 1; j < cols; ++j) {
                t1 = p * a[i][j];
                t2 = lead * a[rk][j];
                t1 -= t2;
                mpz_divexact(a[i][j].get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = p;
        ++rk;
    }
    return rk;
}

std::size_t rank_floating(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::MatrixXd x(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) x(r, c) = m(r, c).get_d();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(x);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    const double threshold = kFloatingRankRelTol * sv(0);
    return static_cast<std::size_t>((sv.array() > threshold).count());
}

RowEchelon rref(const Matrix& m) {
    RowEchelon out{m, {}};
    Matrix& a = out.reduced;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t piv = r;
        while (piv < a.rows() && sgn(a(piv, c)) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
        Rational inv = 1 / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || sgn(a(i, c)) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    return out;
}

NullSpace nullspace(const Matrix& m) {
    const std::size_t n = m.cols();
    RowEchelon e = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots) is_pivot[p] = true;

    NullSpace ns;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) ns.free_columns.push_back(c);

    ns.basis = Matrix(n, ns.free_columns.size());
    for (std::size_t k = 0; k < ns.free_columns.size(); ++k) {
        const std::size_t f = ns.free_columns[k];
        ns.basis(f, k) = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) ns.basis(e.pivots[r], k) = -e.reduced(r, f);
    }
    return ns;
}

bool span_contains(const Matrix& a, const Matrix& b, RankBackend backend) {
    if (b.cols() == 0) return true;
    if (a.cols() == 0) return rank(b, backend) == 0;
    return rank(hstack(a, b), backend) == rank(a, backend);
}

bool same_span(const Matrix& a, const Matrix& b, RankBackend backend) {
    return span_contains(a, b, backend) && span_contains(b, a, backend);
}

std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v) {
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> out(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Integer num = v[i].get_num() * l;
        mpz_divexact(out[i].get_mpz_t(), num.get_mpz_t(), v[i].get_den_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
    }
    if (g > 1)
        for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return out;
}

std::vector<std::vector<Integer>> integer_rows(const Matrix& m) {
    Integer l = 1;
    for (const auto& x : m.data()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            Integer num = m(r, c).get_num() * l;
            mpz_divexact(out[r][c].get_mpz_t(), num.get_mpz_t(), m(r, c).get_den_mpz_t());
        }
    return out;
}

bool IncrementalBasis::insert(std::vector<Integer> v) {
    if (v.size() != dim_) throw DimensionMismatch("vector length does not match basis dimension");
    Integer t;
    for (std::size_t k = 0; k < vectors_.size(); ++k) {
        const std::size_t p = pivots_[k];
        if (sgn(v[p]) == 0) continue;
        const auto& b = vectors_[k];
        const Integer lead = v[p];
        const Integer bp = b[p];
        for (std::size_t i = 0; i < dim_; ++i) {
            v[i] *= bp;
            t = lead * b[i];
            v[i] -= t;
        }
        Integer g = 0;
        for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 0) return false;
        if (g > 1)
            for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
    auto it = std::find_if(v.begin(), v.end(), [](const Integer& x) { return sgn(x) != 0; });
    if (it == v.end()) return false;
    Integer g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    pivots_.push_back(static_cast<std::size_t>(it - v.begin()));
    vectors_.push_back(std::move(v));
    return true;
}

Matrix IncrementalBasis::as_columns() const {
    Matrix m(dim_, vectors_.size());
    for (std::size_t k = 0; k < vectors_.size(); ++k)
        for (std::size_t i = 0; i < dim_; ++i) m(i, k) = Rational(vectors_[k][i]);
    return m;
}

}  // namespace ssc
