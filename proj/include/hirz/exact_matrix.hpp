#pragma once

#include "hirz/integer.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace hirz {

using RationalVector = std::vector<Rational>;

/// Small dense matrix over Q. Used for the per-degree pieces of a Čech complex.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalVector column(std::size_t c) const;
    RationalVector apply(const RationalVector& x) const;
    Matrix operator*(const Matrix& rhs) const;
    bool is_zero() const;

    /// Horizontal concatenation [this | rhs]; row counts must match.
    Matrix hconcat(const Matrix& rhs) const;
    static Matrix from_columns(std::size_t rows, const std::vector<RationalVector>& cols);

    /// Reduced row echelon form; returns the pivot columns.
    std::vector<std::size_t> rref();
    std::size_t rank() const;
    /// Basis of the null space, one vector per free column, in column order.
    std::vector<RationalVector> nullspace() const;
    /// Some x with A x = b, or nullopt if b is not in the column span.
    std::optional<RationalVector> solve(const RationalVector& b) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Sparse matrix over Q stored as triples; rank is computed by fraction-free
/// elimination on primitive integer rows.
class SparseMatrix {
public:
    struct Entry {
        std::size_t row;
        std::size_t col;
        Rational value;
    };

    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const std::vector<Entry>& entries() const noexcept { return entries_; }

    /// Accumulates into (row, col).
    void add(std::size_t row, std::size_t col, const Rational& value);
    /// Merges duplicate coordinates and drops zeros; entries end sorted by (row, col).
    void compress();

    std::size_t rank() const;
    SparseMatrix operator*(const SparseMatrix& rhs) const;
    std::size_t nonzeros() const;

    /// One "row col value" line per nonzero, 0-based indices, values as p/q.
    void write_triples(std::ostream& os) const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Entry> entries_;
    bool compressed_ = true;
};

}  // namespace hirz
