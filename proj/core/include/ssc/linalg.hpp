#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ssc/matrix.hpp"

namespace ssc {

/// `exact` is fraction-free (Bareiss) elimination over the integers and is
/// the only backend whose answers are certificates. `floating` counts
/// singular values above 1e-9 times the largest one.
enum class RankBackend { exact, floating };

std::string_view to_string(RankBackend backend);
std::optional<RankBackend> parse_rank_backend(std::string_view name);

inline constexpr double kFloatingRankRelTol = 1e-9;

std::size_t rank(const Matrix& m, RankBackend backend = RankBackend::exact);
std::size_t rank_exact(const Matrix& m);
std::size_t rank_floating(const Matrix& m);

/// Reduced row echelon form over the rationals. `pivots` lists the pivot
/// column of each nonzero row, in order.
struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};
RowEchelon rref(const Matrix& m);

/// Basis of {x : m x = 0}, one column per free variable. The column for free
/// variable f has a 1 in row f and 0 in every other free row.
struct NullSpace {
    Matrix basis;
    std::vector<std::size_t> free_columns;
};
NullSpace nullspace(const Matrix& m);

/// im(b) ⊆ im(a), decided by rank([a | b]) == rank(a).
bool span_contains(const Matrix& a, const Matrix& b, RankBackend backend = RankBackend::exact);
bool same_span(const Matrix& a, const Matrix& b, RankBackend backend = RankBackend::exact);

/// Growing set of linearly independent integer vectors kept in echelon form.
/// Insertions reduce the candidate fraction-free against every stored vector
/// and divide out the content, so entries stay primitive.
class IncrementalBasis {
public:
    explicit IncrementalBasis(std::size_t dim) : dim_(dim) {}

    /// Returns true and stores the reduced vector when `v` is independent of
    /// the stored vectors.
    bool insert(std::vector<Integer> v);

    std::size_t size() const noexcept { return vectors_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Integer>& vector(std::size_t k) const { return vectors_[k]; }

    /// Stored vectors as columns.
    Matrix as_columns() const;

private:
    std::size_t dim_;
    std::vector<std::vector<Integer>> vectors_;
    std::vector<std::size_t> pivots_;
};

/// Scales a rational vector to a primitive integer vector with the same
/// direction (all-zero stays all-zero).
std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v);

/// Multiplies every entry by the least common denominator of the matrix.
std::vector<std::vector<Integer>> integer_rows(const Matrix& m);

}  // namespace ssc
