#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "coulomb/coulomb_hom.hpp"
#include "coulomb/coulomb_k.hpp"
#include "coulomb/gauge_theory.hpp"
#include "coulomb/polynomial.hpp"

namespace coulomb {

/// Seeded generator of small random inputs. Integers are drawn by reducing
/// the raw 64-bit output modulo the range, so sequences are identical on
/// every platform and standard library.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    long uniform(long lo, long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(rng_() % span);
    }

    Cocharacter cocharacter(std::size_t d, int bound) {
        Cocharacter l(d);
        for (auto& x : l) x = static_cast<int>(uniform(-bound, bound));
        return l;
    }

    /// Polynomial in n variables with at most `terms` terms, exponents <= max_exp.
    MultiPoly poly(std::size_t n, int terms = 3, int max_exp = 2, long coeff = 3) {
        MultiPoly p(n);
        for (int k = 0; k < terms; ++k) {
            Exponents e(n);
            for (auto& x : e) x = static_cast<int>(uniform(0, max_exp));
            p.add_term(e, Rational(uniform(-coeff, coeff)));
        }
        return p;
    }

    /// Laurent polynomial in n variables; the last variable (q) gets exponents in [-1, 1].
    LaurentPoly laurent(std::size_t n, int terms = 3, int max_exp = 2, long coeff = 3) {
        LaurentPoly p(n);
        for (int k = 0; k < terms; ++k) {
            Exponents e(n);
            for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<int>(i + 1 == n ? uniform(-1, 1) : uniform(-max_exp, max_exp));
            p.add_term(e, Rational(uniform(-coeff, coeff)));
        }
        return p;
    }

    HomElement hom_element(const GaugeTheory& t, int terms = 2, int bound = 2) {
        HomElement e(t.ring_vars());
        for (int k = 0; k < terms; ++k) e.add_term(cocharacter(t.gauge_rank(), bound), poly(t.ring_vars(), 2, 1));
        return e;
    }

    KElement k_element(const GaugeTheory& t, int terms = 2, int bound = 2) {
        KElement e(t.ring_vars());
        for (int k = 0; k < terms; ++k) e.add_term(cocharacter(t.gauge_rank(), bound), laurent(t.ring_vars(), 2, 1));
        return e;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace coulomb
