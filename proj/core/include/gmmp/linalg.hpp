#pragma once

#include "gmmp/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace gmmp {

using QVec = std::vector<Rational>;

// Dense exact matrix over Q. Row-major. Deterministic throughout: pivots are
// always the first nonzero entry in scan order.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void append_row(const QVec& row);
    QVec row(std::size_t i) const;

    // Reduced row echelon form in place; returns pivot column per pivot row.
    std::vector<std::size_t> rref();

    std::size_t rank() const;

    // Canonical basis of the right kernel {x : A x = 0}. Each basis vector has
    // a 1 in "its" free column and 0 in the other free columns, so membership
    // coordinates can be read off the free columns directly.
    struct KernelBasis {
        std::vector<QVec> vectors;
        std::vector<std::size_t> free_cols;
    };
    KernelBasis kernel() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

QVec qvec_scaled(const QVec& v, const Rational& c);
void qvec_axpy(QVec& y, const Rational& c, const QVec& x); // y += c*x
bool qvec_is_zero(const QVec& v);

// Solves z^T B = v for spanning rows B (possibly redundant), with the
// canonical solution that puts weight only on pivot rows of the internal
// echelon factorization. Precomputes once, answers many queries.
class RowSpaceSolver {
public:
    RowSpaceSolver() = default;
    explicit RowSpaceSolver(const std::vector<QVec>& rows, std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t row_count() const { return nrows_; }
    std::size_t rank() const { return pivots_.size(); }

    bool contains(const QVec& v) const;
    // Coefficients z with sum_i z_i * rows_i == v, or nullopt if v is outside
    // the row space.
    std::optional<QVec> solve(const QVec& v) const;
    // Residue of v after eliminating the row space (canonical reduction).
    QVec reduce(const QVec& v) const;

private:
    std::size_t dim_ = 0, nrows_ = 0;
    // rref_ holds the echelonized rows; ops_ the matching transformation rows
    // (ops_[k] expresses rref_[k] over the original rows).
    std::vector<QVec> rref_;
    std::vector<QVec> ops_;
    std::vector<std::size_t> pivots_; // pivot column of rref_[k]
};

// Incremental row-span with deterministic greedy membership: try_add returns
// true (and extends the span) exactly when the vector is independent.
class SpanBuilder {
public:
    explicit SpanBuilder(std::size_t dim) : dim_(dim) {}
    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    bool contains(const QVec& v) const;
    bool try_add(const QVec& v);
    void add_span(const std::vector<QVec>& rows);

private:
    QVec reduced(const QVec& v) const;
    std::size_t dim_;
    std::vector<QVec> rows_;             // echelonized, pivot-normalized
    std::vector<std::size_t> pivots_;
};

} // namespace gmmp
