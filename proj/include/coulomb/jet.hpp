#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "coulomb/errors.hpp"
#include "coulomb/polynomial.hpp"

namespace coulomb {

/// Default truncation order for completed computations.
inline constexpr int kDefaultJetOrder = 6;

/// Truncated multivariate power series: all terms of total degree <= order.
/// Truncation from a higher order is a ring homomorphism, so every identity
/// of power series holds exactly on jets.
class Jet {
public:
    Jet() = default;
    Jet(std::size_t nvars, int order) : order_(order), poly_(nvars) {
        if (order < 0) throw InvalidArgument("negative jet order");
    }
    Jet(const MultiPoly& p, int order) : order_(order), poly_(p.nvars()) {
        if (order < 0) throw InvalidArgument("negative jet order");
        for (const auto& [e, c] : p.terms())
            if (total_degree(e) <= order) poly_.add_term(e, c);
    }

    static Jet constant(std::size_t nvars, int order, const Rational& c) {
        return Jet(MultiPoly(nvars, c), order);
    }

    int order() const { return order_; }
    std::size_t nvars() const { return poly_.nvars(); }
    const MultiPoly& poly() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }
    Rational constant_term() const { return poly_.constant_term(); }

    Jet truncate(int order) const {
        if (order > order_) throw InvalidArgument("cannot raise the order of a jet by truncation");
        return Jet(poly_, order);
    }

    Jet& operator+=(const Jet& o) {
        check(o);
        poly_ += o.poly_;
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        check(o);
        poly_ -= o.poly_;
        return *this;
    }
    Jet& operator*=(const Rational& s) {
        poly_ *= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) {
        a.poly_ = -a.poly_;
        return a;
    }
    friend Jet operator*(Jet a, const Rational& s) { return a *= s; }
    friend Jet operator*(const Rational& s, Jet a) { return a *= s; }

    /// Truncated product; only term pairs with degree sum <= order are formed.
    friend Jet operator*(const Jet& a, const Jet& b) {
        a.check(b);
        const int n = a.order_;
        auto buckets = [n](const MultiPoly& p) {
            std::vector<std::vector<const MultiPoly::TermMap::value_type*>> by(static_cast<std::size_t>(n) + 1);
            for (const auto& t : p.terms()) by[static_cast<std::size_t>(total_degree(t.first))].push_back(&t);
            return by;
        };
        auto ba = buckets(a.poly_), bb = buckets(b.poly_);
        Jet r(a.nvars(), n);
        Exponents e(a.nvars());
        for (int da = 0; da <= n; ++da)
            for (const auto* ta : ba[static_cast<std::size_t>(da)])
                for (int db = 0; db + da <= n; ++db)
                    for (const auto* tb : bb[static_cast<std::size_t>(db)]) {
                        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ta->first[i] + tb->first[i];
                        r.poly_.add_product(e, ta->second, tb->second);
                    }
        return r;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }

    friend bool operator==(const Jet& a, const Jet& b) { return a.order_ == b.order_ && a.poly_ == b.poly_; }

private:
    void check(const Jet& o) const {
        if (order_ != o.order_) throw InvalidArgument("jets of different orders");
        if (nvars() != o.nvars()) throw InvalidArgument("jets over different variable sets");
    }

    int order_ = 0;
    MultiPoly poly_;
};

/// Jet of multiplication by a polynomial: truncate the polynomial first.
inline Jet operator*(const Jet& a, const MultiPoly& p) { return a * Jet(p, a.order()); }

namespace series {

/// Coefficients of exp(u) up to u^n.
inline std::vector<Rational> exp(int n) {
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
    Rational f = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) f /= k;
        c[static_cast<std::size_t>(k)] = f;
    }
    return c;
}

/// Coefficients of 1 - exp(-u).
inline std::vector<Rational> one_minus_exp_neg(int n) {
    auto c = exp(n);
    std::vector<Rational> r(c.size());
    for (std::size_t k = 1; k < c.size(); ++k) r[k] = (k % 2 == 1) ? c[k] : Rational(-c[k]);
    return r;
}

/// Coefficients of (1 - exp(-u)) / u = sum_k (-1)^k u^k / (k+1)!.
inline std::vector<Rational> todd_inverse(int n) {
    auto c = exp(n + 1);
    std::vector<Rational> r(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        const Rational& v = c[static_cast<std::size_t>(k) + 1];
        r[static_cast<std::size_t>(k)] = (k % 2 == 0) ? v : Rational(-v);
    }
    return r;
}

/// Coefficients of 1 / (1 + u).
inline std::vector<Rational> geometric(int n) {
    std::vector<Rational> r(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) r[static_cast<std::size_t>(k)] = (k % 2 == 0) ? 1 : -1;
    return r;
}

} // namespace series

/// sum_k coeffs[k] * u^k for a jet u without constant term (Horner scheme).
inline Jet compose_series(const std::vector<Rational>& coeffs, const Jet& u) {
    if (u.constant_term() != 0) throw NonzeroConstantTerm("series argument must vanish at the basepoint");
    const int n = u.order();
    Jet r(u.nvars(), n);
    for (int k = std::min<int>(n, static_cast<int>(coeffs.size()) - 1); k >= 0; --k) {
        r = r * u;
        r += Jet::constant(u.nvars(), n, coeffs[static_cast<std::size_t>(k)]);
    }
    return r;
}

/// exp(l) truncated at order n; l must vanish at the origin.
inline Jet jet_of_exp(const MultiPoly& l, int order) {
    if (l.constant_term() != 0) throw NonzeroConstantTerm("exp argument has a nonzero constant term");
    return compose_series(series::exp(order), Jet(l, order));
}

/// Multiplicative inverse of a jet with nonzero constant term.
inline Jet jet_invert(const Jet& f) {
    Rational c0 = f.constant_term();
    if (c0 == 0) throw NotAUnit("jet with zero constant term is not invertible");
    Jet g = f * (1 / c0) - Jet::constant(f.nvars(), f.order(), 1);
    return compose_series(series::geometric(f.order()), g) * (1 / c0);
}

/// Jet of (1 - e^{-(chi + k*hbar)}) / (chi + k*hbar). `chi` is a linear form
/// over the ring; hbar is its last variable.
inline Jet todd_inverse_factor(const MultiPoly& chi, int k, int order) {
    if (chi.nvars() == 0) throw InvalidArgument("todd_inverse_factor: empty ring");
    MultiPoly u = chi + MultiPoly::variable(chi.nvars(), chi.nvars() - 1) * Rational(k);
    if (u.is_zero()) throw ZeroWeight("degenerate weight chi + k*hbar = 0");
    return compose_series(series::todd_inverse(order), Jet(u, order));
}

/// Equivariant Chern character: every Laurent variable v_i is sent to
/// exp(y_i) where y_i is the matching polynomial variable (t -> e^x,
/// a -> e^c, q -> e^hbar). Evaluated one variable at a time so that each
/// step only multiplies by a univariate exponential.
inline Jet chern_character_jet(const LaurentPoly& f, int order) {
    const std::size_t n = f.nvars();
    using Term = std::pair<const Exponents*, const Rational*>;
    std::vector<Term> terms;
    for (const auto& [e, c] : f.terms()) terms.emplace_back(&e, &c);

    std::vector<std::map<int, Jet>> exp_cache(n);
    auto exp_of = [&](std::size_t var, int k) -> const Jet& {
        auto it = exp_cache[var].find(k);
        if (it != exp_cache[var].end()) return it->second;
        MultiPoly l = MultiPoly::variable(n, var) * Rational(k);
        return exp_cache[var].emplace(k, jet_of_exp(l, order)).first->second;
    };

    auto rec = [&](auto&& self, std::vector<Term> group, std::size_t var) -> Jet {
        if (var == n) {
            Rational s = 0;
            for (const auto& t : group) s += *t.second;
            return Jet::constant(n, order, s);
        }
        std::map<int, std::vector<Term>> by_power;
        for (const auto& t : group) by_power[(*t.first)[var]].push_back(t);
        Jet acc(n, order);
        for (auto& [k, sub] : by_power) {
            Jet inner = self(self, std::move(sub), var + 1);
            acc += k == 0 ? inner : exp_of(var, k) * inner;
        }
        return acc;
    };
    return rec(rec, std::move(terms), 0);
}

/// Ring automorphism of jets given by linear images of the variables
/// (degree preserving, so truncation commutes with it).
inline Jet substitute_linear(const Jet& f, const std::vector<MultiPoly>& images) {
    return Jet(substitute(f.poly(), images), f.order());
}

} // namespace coulomb
