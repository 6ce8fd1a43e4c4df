#pragma once

#include <complex>
#include <vector>

#include "rtglab/rational.hpp"

namespace rtglab::linalg {

// Field glue so the exact solvers can also be instantiated with
// std::complex<double> for the floating cross-check path.
template <typename F>
struct field_traits {
    static bool is_zero(const F& x) { return x.is_zero(); }
};

template <>
struct field_traits<std::complex<double>> {
    static bool is_zero(const std::complex<double>& x) { return std::abs(x) < 1e-9; }
};

template <typename F>
using Vector = std::vector<F>;
template <typename F>
using Matrix = std::vector<std::vector<F>>;

// In-place reduced row echelon form. Returns the pivot column of each
// produced row (rank = pivots.size()).
template <typename F>
std::vector<int> rref(Matrix<F>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i) {
            if (!field_traits<F>::is_zero(m[i][c])) { piv = i; break; }
        }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        F lead = m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] = m[r][j] / lead;
        for (int i = 0; i < rows; ++i) {
            if (i == r || field_traits<F>::is_zero(m[i][c])) continue;
            F factor = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] = m[i][j] - factor * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(pivots.size(), std::vector<F>(cols, F{}));
    return pivots;
}

template <typename F>
int rank(Matrix<F> m) {
    return static_cast<int>(rref(m).size());
}

// Basis of {x : m x = 0}, one vector per free column.
template <typename F>
Matrix<F> nullspace(Matrix<F> m, int cols) {
    if (m.empty()) m.push_back(Vector<F>(cols, F{}));
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    Matrix<F> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        Vector<F> v(cols, F{});
        v[c] = F{} + F(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

template <typename F>
bool in_span(const Matrix<F>& rref_basis, const std::vector<int>& pivots, Vector<F> v) {
    for (size_t r = 0; r < pivots.size(); ++r) {
        const F& coef = v[pivots[r]];
        if (field_traits<F>::is_zero(coef)) continue;
        F c = coef;
        for (size_t j = 0; j < v.size(); ++j) v[j] = v[j] - c * rref_basis[r][j];
    }
    for (const F& x : v)
        if (!field_traits<F>::is_zero(x)) return false;
    return true;
}

// Row space wrapper: canonical (RREF) basis of a span, membership and
// equality tests. Spans compare equal iff their RREF matrices agree.
template <typename F>
struct Span {
    Matrix<F> basis; // RREF rows
    std::vector<int> pivots;
    int dim() const { return static_cast<int>(basis.size()); }

    static Span from_rows(Matrix<F> rows) {
        Span s;
        s.pivots = rref(rows);
        s.basis = std::move(rows);
        return s;
    }
    bool contains(Vector<F> v) const { return in_span(basis, pivots, std::move(v)); }
    bool contains_all(const Matrix<F>& rows) const {
        for (const auto& r : rows)
            if (!contains(r)) return false;
        return true;
    }
    friend bool operator==(const Span& a, const Span& b) { return a.basis == b.basis; }
};

using QSpan = Span<CRat>;

} // namespace rtglab::linalg
