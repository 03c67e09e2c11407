#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "coulomb/errors.hpp"
#include "coulomb/gauge_theory.hpp"
#include "coulomb/groebner.hpp"
#include "coulomb/polynomial.hpp"

namespace coulomb {

/// Finite sum  sum_lambda f_lambda * r_lambda  with coefficients in `Poly`.
template <class Poly>
class MonopoleElement {
public:
    using TermMap = std::map<Cocharacter, Poly>;

    MonopoleElement() = default;
    explicit MonopoleElement(std::size_t nvars) : nvars_(nvars) {}

    static MonopoleElement monopole(const Cocharacter& lambda, const Poly& coeff) {
        MonopoleElement e(coeff.nvars());
        e.add_term(lambda, coeff);
        return e;
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Poly coefficient(const Cocharacter& lambda) const {
        auto it = terms_.find(lambda);
        return it == terms_.end() ? Poly(nvars_) : it->second;
    }

    void add_term(const Cocharacter& lambda, const Poly& p) {
        if (p.is_zero()) return;
        if (nvars_ == 0) nvars_ = p.nvars();
        auto [it, inserted] = terms_.try_emplace(lambda, p);
        if (!inserted) {
            it->second += p;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MonopoleElement& operator+=(const MonopoleElement& o) {
        for (const auto& [l, p] : o.terms_) add_term(l, p);
        return *this;
    }
    MonopoleElement& operator-=(const MonopoleElement& o) {
        for (const auto& [l, p] : o.terms_) add_term(l, -p);
        return *this;
    }
    friend MonopoleElement operator+(MonopoleElement a, const MonopoleElement& b) { return a += b; }
    friend MonopoleElement operator-(MonopoleElement a, const MonopoleElement& b) { return a -= b; }

    /// Left multiplication by a Cartan coefficient.
    friend MonopoleElement operator*(const Poly& f, const MonopoleElement& a) {
        MonopoleElement r(a.nvars_);
        for (const auto& [l, p] : a.terms_) r.add_term(l, f * p);
        return r;
    }

    template <class F>
    MonopoleElement map_coefficients(F&& f) const {
        MonopoleElement r(nvars_);
        for (const auto& [l, p] : terms_) r.add_term(l, f(p));
        return r;
    }

    friend bool operator==(const MonopoleElement& a, const MonopoleElement& b) { return a.terms_ == b.terms_; }

private:
    std::size_t nvars_ = 0;
    TermMap terms_;
};

/// Euler class factor  chi + k*hbar  (or its K-theoretic counterpart),
/// encoded as the integer vector (gauge part | flavor part | k).
using FactorKey = std::vector<int>;

/// The factors of e(lambda): pairs (chi, k) with k in [<chi,lambda>, -1],
/// each repeated with the multiplicity of chi.
inline std::vector<std::pair<FactorKey, int>> euler_factor_keys(const std::vector<MatterWeight>& ws,
                                                                const Cocharacter& lambda) {
    std::vector<std::pair<FactorKey, int>> out;
    for (const auto& w : ws) {
        const int a = pairing(w.gauge, lambda);
        for (int k = a; k <= -1; ++k) {
            FactorKey key = w.gauge;
            key.insert(key.end(), w.flavor.begin(), w.flavor.end());
            key.push_back(k);
            out.emplace_back(std::move(key), w.multiplicity);
        }
    }
    return out;
}

/// Algebra of abelian monopole operators over a coefficient ring described
/// by the realization `R` (Euler factors, shifts, classical limit).
/// The product is  (f r_l) * (g r_m) = f s_l(g) c(l,m) r_{l+m}  with
/// c(l,m) = e(l) s_l(e(m)) / e(l+m); the quotient is computed by cancelling
/// Euler factors, falling back to exact division.
template <class R>
class MonopoleAlgebra {
public:
    using Poly = typename R::Poly;
    using Element = MonopoleElement<Poly>;

    MonopoleAlgebra(const GaugeTheory& theory, R realization)
        : d_(theory.gauge_rank()), m_(theory.flavor_rank()), weights_(theory.weights()),
          real_(std::move(realization)), cache_(std::make_shared<Cache>()) {}

    std::size_t gauge_rank() const { return d_; }
    std::size_t flavor_rank() const { return m_; }
    std::size_t nvars() const { return d_ + m_ + 1; }
    const std::vector<MatterWeight>& weights() const { return weights_; }
    const R& realization() const { return real_; }

    Poly one() const { return Poly(nvars(), 1); }
    Element unit() const { return Element::monopole(Cocharacter(d_, 0), one()); }
    Element monopole(const Cocharacter& lambda) const { return Element::monopole(check(lambda), one()); }
    Element monopole(const Cocharacter& lambda, const Poly& coeff) const {
        return Element::monopole(check(lambda), coeff);
    }
    Element cartan(const Poly& coeff) const { return Element::monopole(Cocharacter(d_, 0), coeff); }

    Poly euler(const Cocharacter& lambda) const {
        Poly p = one();
        for (const auto& [key, mult] : euler_factor_keys(weights_, check(lambda)))
            for (int i = 0; i < mult; ++i) p *= real_.factor(key, d_);
        return p;
    }

    Poly shift(const Cocharacter& lambda, const Poly& p) const { return real_.shift(check(lambda), p, d_); }

    /// c(lambda, mu) = e(lambda) s_lambda(e(mu)) / e(lambda + mu).
    Poly cocycle(const Cocharacter& lambda, const Cocharacter& mu) const {
        auto key = std::make_pair(lambda, mu);
        {
            std::lock_guard<std::mutex> lock(cache_->mutex);
            auto it = cache_->values.find(key);
            if (it != cache_->values.end()) return it->second;
        }
        Poly value = compute_cocycle(check(lambda), check(mu));
        std::lock_guard<std::mutex> lock(cache_->mutex);
        return cache_->values.emplace(std::move(key), std::move(value)).first->second;
    }

    Element multiply(const Element& a, const Element& b) const {
        Element r(nvars());
        for (const auto& [l, f] : a.terms())
            for (const auto& [m, g] : b.terms()) {
                Cocharacter s(d_);
                for (std::size_t i = 0; i < d_; ++i) s[i] = l[i] + m[i];
                r.add_term(s, f * shift(l, g) * cocycle(l, m));
            }
        return r;
    }

    Element classical_limit(const Element& a) const {
        return a.map_coefficients([this](const Poly& p) { return real_.classical(p); });
    }

private:
    struct Cache {
        std::mutex mutex;
        std::map<std::pair<Cocharacter, Cocharacter>, Poly> values;
    };

    const Cocharacter& check(const Cocharacter& lambda) const {
        if (lambda.size() != d_) throw InvalidArgument("cocharacter has wrong length");
        return lambda;
    }

    Poly compute_cocycle(const Cocharacter& lambda, const Cocharacter& mu) const {
        std::map<FactorKey, int> count;
        Poly unit_num = one(), unit_den = one();
        auto add = [&](FactorKey key, int mult, bool numerator) {
            bool flipped = false;
            for (int x : key) {
                if (x == 0) continue;
                flipped = x < 0;
                break;
            }
            Poly& unit = numerator ? unit_num : unit_den;
            if (flipped) {
                for (int i = 0; i < mult; ++i) unit *= real_.flip_unit(key, d_);
                for (int& x : key) x = -x;
            }
            count[key] += numerator ? mult : -mult;
        };
        for (auto& [k, mult] : euler_factor_keys(weights_, lambda)) add(k, mult, true);
        for (auto [k, mult] : euler_factor_keys(weights_, mu)) {
            k.back() += pairing({k.begin(), k.begin() + static_cast<long>(d_)}, lambda);
            add(std::move(k), mult, true);
        }
        Cocharacter sum(d_);
        for (std::size_t i = 0; i < d_; ++i) sum[i] = lambda[i] + mu[i];
        for (auto& [k, mult] : euler_factor_keys(weights_, sum)) add(k, mult, false);

        Poly num = unit_num, den = unit_den;
        for (const auto& [key, n] : count) {
            Poly f = real_.factor(key, d_);
            for (int i = 0; i < n; ++i) num *= f;
            for (int i = 0; i < -n; ++i) den *= f;
        }
        return R::divide(num, den);
    }

    std::size_t d_, m_;
    std::vector<MatterWeight> weights_;
    R real_;
    std::shared_ptr<Cache> cache_;
};

namespace detail {

inline std::string cochar_tag(const Cocharacter& s) {
    std::string n;
    for (int x : s) n += "_" + (x < 0 ? "m" + std::to_string(-x) : std::to_string(x));
    return n;
}

/// All cocharacters with |lambda|_inf <= r in a fixed order.
inline std::vector<Cocharacter> box_points(std::size_t d, int r) {
    std::vector<Cocharacter> out;
    Cocharacter p(d, -r);
    for (;;) {
        out.push_back(p);
        std::size_t i = 0;
        while (i < d && p[i] == r) p[i++] = -r;
        if (i == d) break;
        ++p[i];
    }
    return out;
}

} // namespace detail

/// Commutative presentation of the nu-weight-zero part of the classical
/// algebra modulo  sum_{n>0} A_n A_{-n},  truncated to |lambda|_inf <= radius.
/// Variables: z_sigma (nu(sigma) = 0, sigma != 0), then the base variables
/// (gauge, flavor) and, for Laurent realizations, the chart inverse `u`.
template <class R>
Presentation balgebra_presentation(const MonopoleAlgebra<R>& alg, const GaugeTheory& theory, int radius) {
    if (radius < 1) throw InvalidArgument("radius must be positive");
    const std::size_t d = alg.gauge_rank(), m = alg.flavor_rank();
    for (const auto& g : hilbert_basis_generators(theory))
        for (int x : g)
            if (std::abs(x) > radius)
                throw RadiusTooSmall("monopole generator outside radius " + std::to_string(radius));

    std::vector<Cocharacter> zs;
    std::map<Cocharacter, std::size_t> zindex;
    const Cocharacter zero(d, 0);
    for (const auto& s : detail::box_points(d, radius))
        if (s != zero && nu_weight(theory, s) == 0) {
            zindex[s] = zs.size();
            zs.push_back(s);
        }
    const std::size_t nz = zs.size();
    const std::size_t nbase = d + m;

    Presentation p;
    for (const auto& s : zs) p.vars.push_back("z" + detail::cochar_tag(s));
    VarNames base = R::base_names(theory);
    p.vars.insert(p.vars.end(), base.begin(), base.begin() + static_cast<long>(nbase));
    if constexpr (R::laurent) {
        p.laurent_vars.assign(base.begin(), base.begin() + static_cast<long>(nbase));
        p.vars.push_back("u");
    }
    p.naux = nz;
    for (std::size_t j = 0; j < m; ++j) p.flavor_vars.push_back(nz + d + j);
    p.grading.assign(p.vars.size(), 0);

    using Poly = typename R::Poly;
    const std::size_t nring = nz + nbase;
    auto z = [&](const Cocharacter& s) -> Poly {
        if (s == zero) return Poly(nring, 1);
        return Poly::variable(nring, zindex.at(s));
    };
    auto coeff = [&](const Poly& c) { return R::classical_base(c).insert_variables(0, nz); };
    auto in_box = [radius](const Cocharacter& s) {
        return std::all_of(s.begin(), s.end(), [radius](int x) { return std::abs(x) <= radius; });
    };
    auto add = [&](const Cocharacter& a, const Cocharacter& b) {
        Cocharacter s(d);
        for (std::size_t i = 0; i < d; ++i) s[i] = a[i] + b[i];
        return s;
    };

    std::vector<Poly> rels;
    for (std::size_t i = 0; i < nz; ++i)
        for (std::size_t j = i; j < nz; ++j) {
            Cocharacter s = add(zs[i], zs[j]);
            if (!in_box(s)) continue;
            rels.push_back(z(zs[i]) * z(zs[j]) - coeff(alg.cocycle(zs[i], zs[j])) * z(s));
        }
    std::vector<Cocharacter> weight_zero = zs;
    weight_zero.push_back(zero);
    for (const auto& l : detail::box_points(d, radius)) {
        if (nu_weight(theory, l) <= 0) continue;
        for (const auto& s : weight_zero) {
            Cocharacter mu(d);
            for (std::size_t i = 0; i < d; ++i) mu[i] = s[i] - l[i];
            if (!in_box(mu)) continue;
            rels.push_back(coeff(alg.cocycle(l, mu)) * z(s));
        }
    }

    for (const auto& r : rels) p.gens.push_back(R::chart(r, nz));
    if constexpr (R::laurent) {
        MultiPoly chart = MultiPoly::variable(nring + 1, nring);
        for (std::size_t i = 0; i < nbase; ++i) chart *= MultiPoly::variable(nring + 1, nz + i);
        p.gens.push_back(chart - MultiPoly(nring + 1, 1));
    }
    p.normalize();
    return p;
}

} // namespace coulomb
