#include "qpw/linalg.hpp"

#include "qpw/errors.hpp"

namespace qpw {

SparseVec axpy(const SparseVec& y, const Scalar& a, const SparseVec& x) {
    if (a.is_zero()) return y;
    SparseVec out;
    out.reserve(y.size() + x.size());
    size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
            out.push_back(y[i++]);
        } else if (i == y.size() || x[j].first < y[i].first) {
            out.emplace_back(x[j].first, a * x[j].second);
            ++j;
        } else {
            Scalar v = y[i].second + a * x[j].second;
            if (!v.is_zero()) out.emplace_back(y[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec Echelon::reduce(SparseVec v, SparseVec* comb) const {
    if (comb) comb->clear();
    size_t i = 0;
    while (i < v.size()) {
        auto it = pivot_.find(v[i].first);
        if (it == pivot_.end()) {
            ++i;
            continue;
        }
        Scalar f = v[i].second;
        v = axpy(v, -f, rows_[it->second]);
        if (comb && track_) *comb = axpy(*comb, f, combos_[it->second]);
    }
    return v;
}

bool Echelon::insert(SparseVec v, int generator) {
    SparseVec comb;
    SparseVec rem = reduce(std::move(v), track_ ? &comb : nullptr);
    if (rem.empty()) return false;
    Scalar inv = Scalar(1) / rem.front().second;
    for (auto& [c, x] : rem) x *= inv;
    if (track_) {
        SparseVec self{{generator, Scalar(1)}};
        SparseVec combo = axpy(self, Scalar(-1), comb);
        for (auto& [c, x] : combo) x *= inv;
        combos_.push_back(std::move(combo));
    }
    pivot_[rem.front().first] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(rem));
    return true;
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (c_ != o.r_) fail("ShapeMismatch", "matrix product of incompatible shapes");
    Matrix m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const Scalar& x = (*this)(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.c_; ++j)
                if (!o(k, j).is_zero()) m(i, j) += x * o(k, j);
        }
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) fail("ShapeMismatch", "matrix sum of incompatible shapes");
    Matrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(Scalar(-1)); }

Matrix Matrix::scaled(const Scalar& s) const {
    Matrix m = *this;
    for (auto& x : m.a_) x *= s;
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

Matrix Matrix::rref(std::vector<int>* pivots) const {
    Matrix m = *this;
    std::vector<int> piv;
    int row = 0;
    for (int col = 0; col < c_ && row < r_; ++col) {
        int sel = -1;
        for (int i = row; i < r_; ++i)
            if (!m(i, col).is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != row)
            for (int j = 0; j < c_; ++j) std::swap(m(sel, j), m(row, j));
        Scalar inv = Scalar(1) / m(row, col);
        for (int j = 0; j < c_; ++j) m(row, j) *= inv;
        for (int i = 0; i < r_; ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            Scalar f = m(i, col);
            for (int j = 0; j < c_; ++j)
                if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
        }
        piv.push_back(col);
        ++row;
    }
    if (pivots) *pivots = piv;
    return m;
}

int Matrix::rank() const {
    std::vector<int> piv;
    rref(&piv);
    return static_cast<int>(piv.size());
}

Matrix Matrix::kernel() const {
    std::vector<int> piv;
    Matrix r = rref(&piv);
    std::vector<bool> is_piv(c_, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<int> free;
    for (int j = 0; j < c_; ++j)
        if (!is_piv[j]) free.push_back(j);
    Matrix k(c_, static_cast<int>(free.size()));
    for (size_t f = 0; f < free.size(); ++f) {
        k(free[f], static_cast<int>(f)) = Scalar(1);
        for (size_t i = 0; i < piv.size(); ++i) k(piv[i], static_cast<int>(f)) = -r(static_cast<int>(i), free[f]);
    }
    return k;
}

Matrix Matrix::image() const {
    std::vector<int> piv;
    rref(&piv);
    return columns(piv);
}

Matrix Matrix::transpose() const {
    Matrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::columns(const std::vector<int>& idx) const {
    Matrix m(r_, static_cast<int>(idx.size()));
    for (int i = 0; i < r_; ++i)
        for (size_t j = 0; j < idx.size(); ++j) m(i, static_cast<int>(j)) = (*this)(i, idx[j]);
    return m;
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_) fail("ShapeMismatch", "hcat of different heights");
    Matrix m(a.r_, a.c_ + b.c_);
    for (int i = 0; i < a.r_; ++i) {
        for (int j = 0; j < a.c_; ++j) m(i, j) = a(i, j);
        for (int j = 0; j < b.c_; ++j) m(i, a.c_ + j) = b(i, j);
    }
    return m;
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.c_) fail("ShapeMismatch", "vcat of different widths");
    Matrix m(a.r_ + b.r_, a.c_);
    for (int j = 0; j < a.c_; ++j) {
        for (int i = 0; i < a.r_; ++i) m(i, j) = a(i, j);
        for (int i = 0; i < b.r_; ++i) m(a.r_ + i, j) = b(i, j);
    }
    return m;
}

bool Matrix::solve(const Matrix& b, Matrix& x) const {
    if (b.r_ != r_) fail("ShapeMismatch", "right-hand side height differs");
    std::vector<int> piv;
    Matrix r = hcat(*this, b).rref(&piv);
    for (int p : piv)
        if (p >= c_) return false;
    x = Matrix(c_, b.c_);
    for (size_t i = 0; i < piv.size(); ++i)
        for (int j = 0; j < b.c_; ++j) x(piv[i], j) = r(static_cast<int>(i), c_ + j);
    return true;
}

} // namespace qpw
