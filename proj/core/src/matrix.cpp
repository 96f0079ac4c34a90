#include "ssc/matrix.hpp"

#include <algorithm>

#include "ssc/errors.hpp"

namespace ssc {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::column(const std::vector<Rational>& entries) {
    Matrix m(entries.size(), 1);
    std::copy(entries.begin(), entries.end(), m.data_.begin());
    return m;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::slice(std::size_t r, std::size_t c, std::size_t h, std::size_t w) const {
    if (r + h > rows_ || c + w > cols_) throw DimensionMismatch("slice out of range");
    Matrix s(h, w);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < w; ++j) s(i, j) = (*this)(r + i, c + j);
    return s;
}

void Matrix::assign(std::size_t r, std::size_t c, const Matrix& src) {
    if (r + src.rows_ > rows_ || c + src.cols_ > cols_) throw DimensionMismatch("assign out of range");
    for (std::size_t i = 0; i < src.rows_; ++i)
        for (std::size_t j = 0; j < src.cols_; ++j) (*this)(r + i, c + j) = src(i, j);
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix sum shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix difference shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(const Rational& s) {
    for (auto& x : data_) x *= s;
    return *this;
}

Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
        }
    return p;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return std::lexicographical_compare(a.data_.begin(), a.data_.end(), b.data_.begin(), b.data_.end());
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack row mismatch");
    Matrix m(a.rows(), a.cols() + b.cols());
    m.assign(0, 0, a);
    m.assign(0, a.cols(), b);
    return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw DimensionMismatch("vstack column mismatch");
    Matrix m(a.rows() + b.rows(), a.cols());
    m.assign(0, 0, a);
    m.assign(a.rows(), 0, b);
    return m;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << to_string(m(r, c));
        os << ']';
    }
    return os << ']';
}

BlockMatrix::BlockMatrix(std::size_t block_rows, std::size_t block_cols, std::size_t d)
    : m_(block_rows * d, block_cols * d), d_(d) {}

BlockMatrix::BlockMatrix(Matrix m, std::size_t d) : m_(std::move(m)), d_(d) {
    if (d == 0 || m_.rows() % d != 0 || m_.cols() % d != 0)
        throw DimensionMismatch("matrix is not divisible into blocks of the given dimension");
}

void BlockMatrix::set_block(std::size_t i, std::size_t j, const Matrix& b) {
    if (b.rows() != d_ || b.cols() != d_) throw DimensionMismatch("block has wrong dimension");
    m_.assign(i * d_, j * d_, b);
}

void BlockMatrix::add_block(std::size_t i, std::size_t j, const Matrix& b) {
    if (b.rows() != d_ || b.cols() != d_) throw DimensionMismatch("block has wrong dimension");
    for (std::size_t r = 0; r < d_; ++r)
        for (std::size_t c = 0; c < d_; ++c) m_(i * d_ + r, j * d_ + c) += b(r, c);
}

}  // namespace ssc
