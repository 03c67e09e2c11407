#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "coulomb/rational.hpp"

namespace coulomb::linalg {

using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

inline Matrix to_matrix(const std::vector<std::vector<int>>& rows) {
    Matrix m;
    m.reserve(rows.size());
    for (const auto& r : rows) {
        Row q(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) q[i] = r[i];
        m.push_back(std::move(q));
    }
    return m;
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(Matrix& m, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t p = row;
        while (p < m.size() && m[p][col] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Rational inv = 1 / m[row][col];
        for (auto& v : m[row]) v *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(Matrix m) {
    if (m.empty()) return 0;
    return rref(m, m.front().size()).size();
}

inline std::size_t rank(const std::vector<std::vector<int>>& rows) { return rank(to_matrix(rows)); }

/// True iff `v` lies in the rational span of `rows`.
inline bool in_span(const std::vector<std::vector<int>>& rows, const std::vector<int>& v) {
    auto with = rows;
    with.push_back(v);
    return rank(with) == rank(rows);
}

/// Solve A x = b over Q; returns one solution (free variables set to 0) or
/// nothing when inconsistent.
inline std::optional<Row> solve(const Matrix& a, const Row& b, std::size_t ncols) {
    Matrix aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) {
        aug[i].resize(ncols);
        aug[i].push_back(b[i]);
    }
    auto piv = rref(aug, ncols + 1);
    if (!piv.empty() && piv.back() == ncols) return std::nullopt;
    Row x(ncols);
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][ncols];
    return x;
}

/// Basis of the right kernel of `rows` (vectors of length ncols), scaled to
/// primitive integer vectors whose last nonzero entry is positive.
inline std::vector<std::vector<long>> integer_kernel(const std::vector<std::vector<int>>& rows, std::size_t ncols) {
    Matrix m = to_matrix(rows);
    for (auto& r : m) r.resize(ncols);
    auto piv = rref(m, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<std::vector<long>> out;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        Row v(ncols);
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
        Integer den = 1;
        for (const auto& q : v) den = lcm(den, Integer(q.get_den()));
        std::vector<Integer> iv(ncols);
        Integer g = 0;
        for (std::size_t i = 0; i < ncols; ++i) {
            Rational s = v[i] * den;
            iv[i] = s.get_num();
            g = gcd(g, iv[i]);
        }
        std::vector<long> lv(ncols);
        for (std::size_t i = 0; i < ncols; ++i) {
            Integer q = iv[i] / g;
            lv[i] = q.get_si();
        }
        out.push_back(std::move(lv));
    }
    return out;
}

/// Integer determinant of a square matrix (fraction-free via rationals).
inline Integer determinant(const std::vector<std::vector<int>>& rows) {
    Matrix m = to_matrix(rows);
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det.get_num();
}

/// All k-element subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

} // namespace coulomb::linalg
