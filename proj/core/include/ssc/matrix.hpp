#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "ssc/rational.hpp"

namespace ssc {

/// Dense row-major matrix of exact rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix identity(std::size_t n);
    static Matrix column(const std::vector<Rational>& entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;
    Matrix transpose() const;

    /// Sub-matrix copy of size h×w starting at (r, c).
    Matrix slice(std::size_t r, std::size_t c, std::size_t h, std::size_t w) const;
    void assign(std::size_t r, std::size_t c, const Matrix& src);
    Matrix col(std::size_t c) const { return slice(0, c, rows_, 1); }

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(const Rational& s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
    friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
    friend bool operator==(const Matrix& a, const Matrix& b);

    /// Lexicographic order on (rows, cols, entries); used for signatures.
    friend bool operator<(const Matrix& a, const Matrix& b);

    const std::vector<Rational>& data() const noexcept { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

std::ostream& operator<<(std::ostream& os, const Matrix& m);

/// Matrix partitioned into d×d blocks. Houses Laplacians, input matrices and
/// characteristic matrices.
class BlockMatrix {
public:
    BlockMatrix() = default;
    BlockMatrix(std::size_t block_rows, std::size_t block_cols, std::size_t d);
    BlockMatrix(Matrix m, std::size_t d);

    std::size_t block_rows() const noexcept { return d_ ? m_.rows() / d_ : 0; }
    std::size_t block_cols() const noexcept { return d_ ? m_.cols() / d_ : 0; }
    std::size_t block_dim() const noexcept { return d_; }

    Matrix block(std::size_t i, std::size_t j) const { return m_.slice(i * d_, j * d_, d_, d_); }
    void set_block(std::size_t i, std::size_t j, const Matrix& b);
    void add_block(std::size_t i, std::size_t j, const Matrix& b);

    const Matrix& matrix() const noexcept { return m_; }
    operator const Matrix&() const noexcept { return m_; }

    friend bool operator==(const BlockMatrix& a, const BlockMatrix& b) {
        return a.d_ == b.d_ && a.m_ == b.m_;
    }

private:
    Matrix m_;
    std::size_t d_ = 0;
};

}  // namespace ssc
