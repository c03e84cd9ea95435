#pragma once

/**
 * @file linalg.hpp
 * @brief Exact sparse linear algebra over the Gaussian rationals.
 *
 * Two independent elimination routes are provided:
 *  - rref/nullspace: Gauss-Jordan over the field Q(i), pivots chosen as the
 *    first nonzero column, so the reduced form and the nullspace basis are
 *    canonical. Since that form is unique, a pass modulo a prime first picks
 *    rows that look independent; exact elimination runs on those rows only and
 *    every discarded row is then checked to lie in their span (falling back to
 *    all rows if one does not).
 *  - rank: fraction-free elimination over the Gaussian integers Z[i]; rows are
 *    cleared of denominators and kept primitive by dividing out the integer
 *    content after every step.
 */

#include "superw/scalar.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace superw {

/// Sorted (column, value) pairs with no stored zeros.
using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    /// Dense construction; every inner vector must have the same length.
    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    Scalar at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Scalar& value);
    /// Adds `value` to entry (r, c), dropping the entry if it cancels.
    void add_to(std::size_t r, std::size_t c, const Scalar& value);

    const SparseRow& row(std::size_t r) const { return rows_.at(r); }
    /// Appends a row; entries may be unsorted and repeated (they are summed).
    std::size_t append_row(const std::vector<std::pair<std::size_t, Scalar>>& entries);

    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

private:
    std::size_t cols_ = 0;
    std::vector<SparseRow> rows_;
};

/// Reduced row echelon form: pivot rows (leading entry 1) in ascending pivot
/// column order, together with their pivot columns.
struct RowEchelon {
    std::vector<SparseRow> rows;
    std::vector<std::size_t> pivots;
};

RowEchelon rref(const Matrix& m);

/// Basis of {v : m v = 0}, one vector per free column in ascending order; the
/// vector for free column f has a 1 at f and zero at every other free column.
std::vector<std::vector<Scalar>> nullspace(const Matrix& m);

/// Rank by fraction-free elimination over Z[i].
std::size_t rank(const Matrix& m);

}  // namespace superw
