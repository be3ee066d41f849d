#pragma once

#include <vector>

#include "qcover/field.hpp"

namespace qcover {

/// Dense row-major matrix of field element codes.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<Elem> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    Elem& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    Elem at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    std::vector<Elem> row(int r) const {
        return {a.begin() + static_cast<std::ptrdiff_t>(r) * cols,
                a.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols};
    }

    void append_row(const std::vector<Elem>& v) {
        a.insert(a.end(), v.begin(), v.end());
        ++rows;
    }

    bool operator==(const Matrix&) const = default;
};

inline Matrix mat_mul(const Field& f, const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) fail(errc::mismatch, "matrix product dimension mismatch");
    Matrix out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            Elem s = x.at(i, k);
            if (s == 0) continue;
            for (int j = 0; j < y.cols; ++j)
                out.at(i, j) = f.add(out.at(i, j), f.mul(s, y.at(k, j)));
        }
    return out;
}

struct Rref {
    Matrix basis;            // rank x cols, zero rows dropped
    std::vector<int> pivots; // strictly increasing pivot columns
    int rank() const { return static_cast<int>(pivots.size()); }
};

/// Reduced row echelon form: pivot entries 1, zeros above and below every
/// pivot, pivot columns strictly increasing. Two matrices have equal row
/// spaces iff their rref basis portions are entry-for-entry identical, which
/// is what makes this the canonical subspace representation.
inline Rref rref(const Field& f, Matrix m) {
    Rref out;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        Elem s = f.inv(m.at(r, c));
        if (s != 1)
            for (int j = c; j < m.cols; ++j) m.at(r, j) = f.mul(s, m.at(r, j));
        for (int i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            Elem t = m.at(i, c);
            if (t == 0) continue;
            for (int j = c; j < m.cols; ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(t, m.at(r, j)));
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.basis = Matrix(r, m.cols);
    std::copy(m.a.begin(), m.a.begin() + static_cast<std::ptrdiff_t>(r) * m.cols,
              out.basis.a.begin());
    return out;
}

/// Rank only: forward elimination, no normalization.
inline int rank(const Field& f, Matrix m) {
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = c; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        Elem inv_piv = f.inv(m.at(r, c));
        for (int i = r + 1; i < m.rows; ++i) {
            Elem t = m.at(i, c);
            if (t == 0) continue;
            Elem s = f.mul(t, inv_piv);
            for (int j = c; j < m.cols; ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(s, m.at(r, j)));
        }
        ++r;
    }
    return r;
}

/// Basis of the right null space {x : M x^T = 0}, one solution per row.
/// Row count is cols - rank(M); rows are independent but not canonicalized.
inline Matrix kernel(const Field& f, const Matrix& m) {
    Rref red = rref(f, m);
    const int n = m.cols;
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int c : red.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    Matrix out(n - red.rank(), n);
    int k = 0;
    for (int free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[static_cast<std::size_t>(free_col)]) continue;
        out.at(k, free_col) = 1;
        for (int i = 0; i < red.rank(); ++i)
            out.at(k, red.pivots[static_cast<std::size_t>(i)]) =
                f.neg(red.basis.at(i, free_col));
        ++k;
    }
    return out;
}

} // namespace qcover
