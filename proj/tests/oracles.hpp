#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance runner.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coulomb.hpp"

namespace testing_helpers {

using namespace coulomb;
using IntVec = std::vector<int>;

inline int d_function(int a, int b) {
    if (a == 0 || b == 0 || (a > 0) == (b > 0)) return 0;
    return std::min(std::abs(a), std::abs(b));
}

/// Product r_l * r_m written out weight by weight with the d(a,b) rule.
inline MultiPoly explicit_structure_constant(const GaugeTheory& t, const Cocharacter& l, const Cocharacter& m) {
    const std::size_t n = t.ring_vars();
    const MultiPoly hbar = MultiPoly::variable(n, n - 1);
    MultiPoly r(n, 1);
    for (const auto& w : t.weights()) {
        FactorKey key = w.gauge;
        key.insert(key.end(), w.flavor.begin(), w.flavor.end());
        key.push_back(0);
        const MultiPoly chi = HomRealization::linear_form(key);
        const int a = pairing(w.gauge, l), b = pairing(w.gauge, m), d = d_function(a, b);
        for (int rep = 0; rep < w.multiplicity; ++rep) {
            if (a > 0 && b < 0)
                for (int j = 1; j <= d; ++j) r *= chi + hbar * Rational(a - j);
            if (a < 0 && b > 0)
                for (int j = 0; j <= d - 1; ++j) r *= chi + hbar * Rational(a + j);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Kostant multiplicity formula, evaluated by brute force:
//   m_lambda(mu) = sum_{w in W} sign(w) P(w(lambda + rho) - (mu + rho)).

struct KostantOracle {
    IntMatrix c;
    std::size_t n;
    std::vector<IntVec> roots; // positive roots, root coordinates
    std::vector<std::pair<IntMatrix, int>> weyl; // matrices on fundamental-weight coordinates, sign
    std::map<IntVec, long> memo_partition;

    explicit KostantOracle(const std::string& type) : c(cartan_matrix(type)), n(c.size()) {
        IntVec b(n, 0);
        for (;;) {
            std::size_t i = 0;
            while (i < n && b[i] == 3) b[i++] = 0;
            if (i == n) break;
            ++b[i];
            long norm = 0;
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) norm += long(b[p]) * c[p][q] * b[q];
            if (norm == 2) roots.push_back(b);
        }
        IntMatrix id(n, IntVec(n, 0));
        for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
        std::set<IntMatrix> seen{id};
        std::vector<std::pair<IntMatrix, int>> frontier{{id, 1}};
        weyl = frontier;
        while (!frontier.empty()) {
            std::vector<std::pair<IntMatrix, int>> next;
            for (const auto& [m, sign] : frontier)
                for (std::size_t i = 0; i < n; ++i) {
                    // s_i(v) = v - v_i * alpha_i, alpha_i = row i of the Cartan matrix.
                    IntMatrix r = m;
                    for (std::size_t col = 0; col < n; ++col)
                        for (std::size_t row = 0; row < n; ++row) r[row][col] = m[row][col] - m[i][col] * c[i][row];
                    if (seen.insert(r).second) next.emplace_back(r, -sign);
                }
            weyl.insert(weyl.end(), next.begin(), next.end());
            frontier = std::move(next);
        }
    }

    std::optional<IntVec> root_coords(const IntVec& weight) const {
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) m[i][j] = c[i][j];
            m[i][n] = weight[i];
        }
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (m[piv][col] == 0) ++piv;
            std::swap(m[piv], m[col]);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col || m[r][col] == 0) continue;
                Rational f = m[r][col] / m[col][col];
                for (std::size_t k = col; k <= n; ++k) m[r][k] -= f * m[col][k];
            }
        }
        IntVec x(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rational v = m[i][n] / m[i][i];
            if (v.get_den() != 1) return std::nullopt;
            x[i] = static_cast<int>(v.get_num().get_si());
        }
        return x;
    }

    long partitions(const IntVec& x, std::size_t from) {
        if (std::any_of(x.begin(), x.end(), [](int v) { return v < 0; })) return 0;
        if (from == roots.size()) return std::all_of(x.begin(), x.end(), [](int v) { return v == 0; }) ? 1 : 0;
        IntVec key = x;
        key.push_back(static_cast<int>(from));
        auto it = memo_partition.find(key);
        if (it != memo_partition.end()) return it->second;
        long total = 0;
        IntVec y = x;
        while (std::all_of(y.begin(), y.end(), [](int v) { return v >= 0; })) {
            total += partitions(y, from + 1);
            for (std::size_t i = 0; i < n; ++i) y[i] -= roots[from][i];
        }
        return memo_partition[key] = total;
    }

    long multiplicity(const IntVec& lambda, const IntVec& mu) {
        long total = 0;
        for (const auto& [m, sign] : weyl) {
            IntVec img(n, 0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) img[i] += m[i][j] * (lambda[j] + 1);
            IntVec diff(n);
            for (std::size_t i = 0; i < n; ++i) diff[i] = img[i] - (mu[i] + 1);
            auto x = root_coords(diff);
            if (x) total += sign * partitions(*x, 0);
        }
        return total;
    }
};

} // namespace testing_helpers
