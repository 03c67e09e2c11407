#pragma once

#include <cstddef>
#include <vector>

#include "coulomb/gauge_theory.hpp"
#include "coulomb/monopole.hpp"
#include "coulomb/polynomial.hpp"

namespace coulomb {

/// Cohomological coefficients: polynomials in x1..xd, c1..cm, hbar.
/// Euler factor (chi, k) is the linear form chi + k*hbar.
struct HomRealization {
    using Poly = MultiPoly;
    static constexpr bool laurent = false;

    static MultiPoly linear_form(const FactorKey& key) {
        const std::size_t n = key.size();
        MultiPoly p(n);
        for (std::size_t i = 0; i < n; ++i)
            if (key[i] != 0) p += MultiPoly::variable(n, i) * Rational(key[i]);
        return p;
    }
    MultiPoly factor(const FactorKey& key, std::size_t) const {
        MultiPoly p = linear_form(key);
        if (p.is_zero()) throw ZeroWeight("degenerate weight chi + k*hbar = 0");
        return p;
    }
    MultiPoly flip_unit(const FactorKey& key, std::size_t) const { return MultiPoly(key.size(), -1); }
    MultiPoly shift(const Cocharacter& lambda, const MultiPoly& p, std::size_t d) const {
        return shift_images(lambda, p.nvars(), d, p);
    }
    MultiPoly classical(const MultiPoly& p) const { return p.specialize(p.nvars() - 1, 0); }

    static MultiPoly divide(const MultiPoly& a, const MultiPoly& b) { return exact_div(a, b); }
    static MultiPoly classical_base(const MultiPoly& c) {
        MultiPoly p = c.specialize(c.nvars() - 1, 0);
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i + 1 < c.nvars(); ++i) keep.push_back(i);
        return p.restrict_variables(keep);
    }
    static MultiPoly chart(const MultiPoly& r, std::size_t) { return r; }
    static VarNames base_names(const GaugeTheory& t) { return t.hom_names(); }

    static MultiPoly shift_images(const Cocharacter& lambda, std::size_t n, std::size_t d, const MultiPoly& p) {
        if (std::all_of(lambda.begin(), lambda.end(), [](int x) { return x == 0; })) return p;
        std::vector<MultiPoly> img;
        for (std::size_t i = 0; i < n; ++i) {
            MultiPoly v = MultiPoly::variable(n, i);
            if (i < d && lambda[i] != 0) v += MultiPoly::variable(n, n - 1) * Rational(lambda[i]);
            img.push_back(std::move(v));
        }
        return substitute(p, img);
    }
};

using HomAlgebra = MonopoleAlgebra<HomRealization>;
using HomElement = HomAlgebra::Element;

inline HomAlgebra hom_algebra(const GaugeTheory& t) { return HomAlgebra(t, HomRealization{}); }

inline MultiPoly euler_hom(const GaugeTheory& t, const Cocharacter& lambda) { return hom_algebra(t).euler(lambda); }

/// s_lambda: x_k -> x_k + lambda_k hbar; hbar is the last variable of p.
inline MultiPoly shift_hom(const Cocharacter& lambda, const MultiPoly& p) {
    if (lambda.size() >= p.nvars()) throw InvalidArgument("shift_hom: cocharacter longer than the gauge block");
    return HomRealization::shift_images(lambda, p.nvars(), lambda.size(), p);
}

inline HomElement multiply_hom(const HomAlgebra& alg, const HomElement& a, const HomElement& b) {
    return alg.multiply(a, b);
}

/// hbar = 0 in every coefficient.
inline HomElement classical_limit(const HomElement& a) {
    return a.map_coefficients([](const MultiPoly& p) { return p.specialize(p.nvars() - 1, 0); });
}

inline Presentation balgebra_presentation_hom(const GaugeTheory& t, int radius = 3) {
    return balgebra_presentation(hom_algebra(t), t, radius);
}

} // namespace coulomb
