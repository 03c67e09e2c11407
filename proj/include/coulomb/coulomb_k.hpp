#pragma once

#include <cstddef>
#include <vector>

#include "coulomb/gauge_theory.hpp"
#include "coulomb/monopole.hpp"
#include "coulomb/polynomial.hpp"

namespace coulomb {

/// Reading of the multiplicative Euler class.
enum class EulerConvention {
    koszul,            // E(lambda) = prod (1 - f_chi^{-1} q^{-k})
    product_of_weights // E(lambda) = prod f_chi q^k
};

/// K-theoretic coefficients: Laurent polynomials in t1..td, a1..am, q.
struct KRealization {
    using Poly = LaurentPoly;
    static constexpr bool laurent = true;

    EulerConvention convention = EulerConvention::koszul;

    static LaurentPoly character(const FactorKey& key, int sign) {
        Exponents e(key.size());
        for (std::size_t i = 0; i < key.size(); ++i) e[i] = sign * key[i];
        return LaurentPoly::monomial(std::move(e));
    }
    LaurentPoly factor(const FactorKey& key, std::size_t) const {
        if (convention == EulerConvention::product_of_weights) return character(key, 1);
        if (std::all_of(key.begin(), key.end(), [](int x) { return x == 0; }))
            throw ZeroWeight("degenerate weight chi + k*hbar = 0");
        return LaurentPoly(key.size(), 1) - character(key, -1);
    }
    LaurentPoly flip_unit(const FactorKey& key, std::size_t) const {
        if (convention == EulerConvention::product_of_weights) return character(key, 2);
        return -character(key, -1);
    }
    LaurentPoly shift(const Cocharacter& lambda, const LaurentPoly& p, std::size_t d) const {
        return shift_monomials(lambda, p, d);
    }
    LaurentPoly classical(const LaurentPoly& p) const { return p.specialize(p.nvars() - 1, 1); }

    static LaurentPoly divide(const LaurentPoly& a, const LaurentPoly& b) { return exact_div(a, b); }
    static LaurentPoly classical_base(const LaurentPoly& c) {
        LaurentPoly p = c.specialize(c.nvars() - 1, 1);
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i + 1 < c.nvars(); ++i) keep.push_back(i);
        return p.restrict_variables(keep);
    }
    /// Multiply by the monomial unit in the variables from `first_unit` on
    /// that makes them non-negative, then append the chart variable.
    static MultiPoly chart(const LaurentPoly& r, std::size_t first_unit) {
        Exponents m = r.min_exponents();
        for (std::size_t i = 0; i < first_unit; ++i) m[i] = 0;
        MultiPoly out(r.nvars() + 1);
        for (const auto& [e, c] : r.terms()) {
            Exponents ne(e.size() + 1, 0);
            for (std::size_t i = 0; i < e.size(); ++i) ne[i] = e[i] - m[i];
            out.add_term(ne, c);
        }
        return out;
    }
    static VarNames base_names(const GaugeTheory& t) { return t.k_names(); }

    static LaurentPoly shift_monomials(const Cocharacter& lambda, const LaurentPoly& p, std::size_t d) {
        LaurentPoly r(p.nvars());
        const std::size_t q = p.nvars() - 1;
        for (const auto& [e, c] : p.terms()) {
            Exponents ne = e;
            for (std::size_t i = 0; i < d; ++i) ne[q] += lambda[i] * e[i];
            r.add_term(ne, c);
        }
        return r;
    }
};

using KAlgebra = MonopoleAlgebra<KRealization>;
using KElement = KAlgebra::Element;

inline KAlgebra k_algebra(const GaugeTheory& t, EulerConvention conv = EulerConvention::koszul) {
    return KAlgebra(t, KRealization{conv});
}

inline LaurentPoly euler_k(const GaugeTheory& t, const Cocharacter& lambda,
                           EulerConvention conv = EulerConvention::koszul) {
    return k_algebra(t, conv).euler(lambda);
}

/// S_lambda: t_k -> q^{lambda_k} t_k; q is the last variable of f.
inline LaurentPoly shift_k(const Cocharacter& lambda, const LaurentPoly& f) {
    if (lambda.size() >= f.nvars()) throw InvalidArgument("shift_k: cocharacter longer than the gauge block");
    return KRealization::shift_monomials(lambda, f, lambda.size());
}

inline KElement multiply_k(const KAlgebra& alg, const KElement& a, const KElement& b) { return alg.multiply(a, b); }

/// q = 1 in every coefficient.
inline KElement classical_limit_k(const KElement& a) {
    return a.map_coefficients([](const LaurentPoly& p) { return p.specialize(p.nvars() - 1, 1); });
}

inline Presentation balgebra_presentation_k(const GaugeTheory& t, int radius = 3) {
    return balgebra_presentation(k_algebra(t), t, radius);
}

} // namespace coulomb
