#pragma once

#include "qpw/scalar.hpp"

#include <unordered_map>
#include <utility>
#include <vector>

namespace qpw {

/// Sparse vector: (column, value) pairs sorted by column, no zero values.
using SparseVec = std::vector<std::pair<int, Scalar>>;

SparseVec axpy(const SparseVec& y, const Scalar& a, const SparseVec& x);

/// Incremental row echelon form. The pivot of a row is its smallest column,
/// so callers choose elimination priority through the column numbering.
/// With tracking enabled each row remembers which inserted generators it
/// combines.
class Echelon {
public:
    explicit Echelon(bool track = false) : track_(track) {}

    int rank() const { return static_cast<int>(rows_.size()); }
    bool is_pivot(int col) const { return pivot_.count(col) != 0; }
    /// Fully reduced remainder of v; with tracking, *comb receives c with
    /// v = remainder + sum_g c_g generator_g.
    SparseVec reduce(SparseVec v, SparseVec* comb = nullptr) const;
    /// Returns false when v already lies in the span.
    bool insert(SparseVec v, int generator = -1);

private:
    bool track_;
    std::unordered_map<int, int> pivot_;
    std::vector<SparseVec> rows_;
    std::vector<SparseVec> combos_;
};

/// Dense matrix over Scalar, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
    static Matrix identity(int n);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Scalar& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Scalar& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const Scalar& s) const;
    bool is_zero() const;
    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    /// Reduced row echelon form; pivot columns returned through *pivots.
    Matrix rref(std::vector<int>* pivots = nullptr) const;
    int rank() const;
    /// Columns form a basis of the null space.
    Matrix kernel() const;
    /// Columns form a basis of the column space (the pivot columns).
    Matrix image() const;
    Matrix transpose() const;
    Matrix columns(const std::vector<int>& idx) const;
    /// Block concatenations.
    static Matrix hcat(const Matrix& a, const Matrix& b);
    static Matrix vcat(const Matrix& a, const Matrix& b);
    /// Some X with A X = B, if one exists.
    bool solve(const Matrix& b, Matrix& x) const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Scalar> a_;
};

} // namespace qpw
