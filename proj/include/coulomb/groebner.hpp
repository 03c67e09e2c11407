#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coulomb/errors.hpp"
#include "coulomb/polynomial.hpp"

namespace coulomb {

/// Commutative presentation: ambient polynomial ring on `vars` modulo the
/// ideal generated by `gens`. Laurent ambients are charted by one extra
/// variable inverting the product of `laurent_vars`. The first `naux`
/// variables are auxiliary (eliminated before comparing with other rings).
struct Presentation {
    VarNames vars;
    VarNames laurent_vars;
    std::vector<MultiPoly> gens;
    std::vector<int> grading;
    std::size_t naux = 0;
    std::vector<std::size_t> flavor_vars;

    std::size_t nvars() const { return vars.size(); }

    /// Drop zero generators, make each monic and remove duplicates while
    /// keeping first occurrences.
    void normalize() {
        std::vector<MultiPoly> out;
        for (auto& g : gens) {
            if (g.is_zero()) continue;
            MultiPoly m = g.monic();
            if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
        }
        gens = std::move(out);
    }
};

/// Global order: grevlex with variable priority v0 > v1 > ..., optionally
/// refined into a block order that first compares the leading `block`
/// variables (grevlex) and then the rest (grevlex).
struct MonomialOrder {
    std::size_t block = 0;

    static MonomialOrder grevlex() { return {0}; }
    static MonomialOrder elimination(std::size_t block) { return {block}; }

    bool greater(const Exponents& a, const Exponents& b) const {
        if (block == 0) return grevlex_greater(a, b, 0, a.size());
        if (int c = grevlex_cmp(a, b, 0, block)) return c > 0;
        return grevlex_greater(a, b, block, a.size());
    }

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
    static int grevlex_cmp(const Exponents& a, const Exponents& b, std::size_t lo, std::size_t hi) {
        int da = 0, db = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            da += a[i];
            db += b[i];
        }
        if (da != db) return da > db ? 1 : -1;
        for (std::size_t i = hi; i-- > lo;)
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
        return 0;
    }
    static bool grevlex_greater(const Exponents& a, const Exponents& b, std::size_t lo, std::size_t hi) {
        return grevlex_cmp(a, b, lo, hi) > 0;
    }
};

namespace detail {

struct GTerm {
    Exponents e;
    Rational c;
};

/// Polynomial as a vector of terms sorted decreasingly under a MonomialOrder.
using GPoly = std::vector<GTerm>;

inline GPoly to_gpoly(const MultiPoly& p, const MonomialOrder& ord) {
    GPoly g;
    g.reserve(p.size());
    for (const auto& [e, c] : p.terms()) g.push_back({e, c});
    std::sort(g.begin(), g.end(), [&ord](const GTerm& a, const GTerm& b) { return ord.greater(a.e, b.e); });
    return g;
}

inline MultiPoly from_gpoly(const GPoly& g, std::size_t nvars) {
    MultiPoly p(nvars);
    for (const auto& t : g) p.add_term(t.e, t.c);
    return p;
}

inline void make_monic(GPoly& g) {
    if (g.empty() || g.front().c == 1) return;
    Rational inv = 1 / g.front().c;
    for (auto& t : g) t.c *= inv;
}

inline Exponents exp_sub(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Exponents exp_lcm(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline bool coprime(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) return false;
    return true;
}

/// p[from..] - c * x^m * g[gfrom..], merged in order.
inline GPoly sub_mul(const GPoly& p, std::size_t from, const Rational& c, const Exponents& m, const GPoly& g,
                     std::size_t gfrom, const MonomialOrder& ord) {
    GPoly r;
    r.reserve(p.size() - from + g.size() - gfrom);
    std::size_t i = from, j = gfrom;
    Exponents shifted;
    auto shifted_at = [&](std::size_t k) {
        shifted = add_exponents(g[k].e, m);
        return &shifted;
    };
    const Exponents* sj = j < g.size() ? shifted_at(j) : nullptr;
    while (i < p.size() || j < g.size()) {
        if (j >= g.size() || (i < p.size() && ord.greater(p[i].e, *sj))) {
            r.push_back(p[i++]);
        } else if (i >= p.size() || ord.greater(*sj, p[i].e)) {
            r.push_back({*sj, -c * g[j].c});
            ++j;
            sj = j < g.size() ? shifted_at(j) : nullptr;
        } else {
            Rational v = p[i].c - c * g[j].c;
            if (v != 0) r.push_back({p[i].e, v});
            ++i;
            ++j;
            sj = j < g.size() ? shifted_at(j) : nullptr;
        }
    }
    return r;
}

/// Full reduction of f modulo the polynomials `basis[idx]` for idx in `use`.
inline GPoly reduce(GPoly f, const std::vector<GPoly>& basis, const std::vector<std::size_t>& use,
                    const MonomialOrder& ord) {
    GPoly rem;
    std::size_t start = 0;
    while (start < f.size()) {
        const GTerm& lead = f[start];
        const GPoly* div = nullptr;
        for (auto k : use) {
            const GPoly& g = basis[k];
            if (!g.empty() && divides(g.front().e, lead.e)) {
                div = &g;
                break;
            }
        }
        if (!div) {
            rem.push_back(lead);
            ++start;
            continue;
        }
        Rational c = lead.c / div->front().c;
        Exponents m = exp_sub(lead.e, div->front().e);
        f = sub_mul(f, start + 1, c, m, *div, 1, ord);
        start = 0;
    }
    return rem;
}

} // namespace detail

struct GroebnerBasis {
    MonomialOrder order;
    std::size_t nvars = 0;
    std::vector<MultiPoly> basis;
    std::vector<detail::GPoly> sorted; // same polynomials in `order`

    bool is_unit() const { return basis.size() == 1 && basis.front().is_constant() && !basis.front().is_zero(); }
    Exponents leading_exponents(std::size_t i) const { return sorted.at(i).front().e; }
};

/// Reduced Groebner basis by Buchberger's algorithm with the Gebauer-Moeller
/// criteria and the normal selection strategy. Deterministic.
inline GroebnerBasis buchberger(const std::vector<MultiPoly>& gens, std::size_t nvars,
                                MonomialOrder ord = MonomialOrder::grevlex()) {
    using detail::GPoly;
    struct Pair {
        std::size_t i, j;
        Exponents lcm;
    };
    std::vector<GPoly> polys;
    std::vector<std::size_t> basis;
    std::vector<Pair> pairs;

    auto update = [&](std::size_t h) {
        const Exponents& lh = polys[h].front().e;
        std::vector<Pair> c, d;
        for (auto g : basis) c.push_back({h, g, detail::exp_lcm(lh, polys[g].front().e)});
        while (!c.empty()) {
            Pair p = c.front();
            c.erase(c.begin());
            bool keep = detail::coprime(lh, polys[p.j].front().e);
            if (!keep) {
                keep = true;
                for (const auto& q : c)
                    if (divides(q.lcm, p.lcm)) keep = false;
                for (const auto& q : d)
                    if (keep && divides(q.lcm, p.lcm)) keep = false;
            }
            if (keep) d.push_back(std::move(p));
        }
        std::vector<Pair> next;
        for (auto& p : pairs) {
            bool drop = divides(lh, p.lcm) && detail::exp_lcm(polys[p.i].front().e, lh) != p.lcm &&
                        detail::exp_lcm(lh, polys[p.j].front().e) != p.lcm;
            if (!drop) next.push_back(std::move(p));
        }
        for (auto& p : d)
            if (!detail::coprime(lh, polys[p.j].front().e)) next.push_back(std::move(p));
        pairs = std::move(next);
        std::vector<std::size_t> nb;
        for (auto g : basis)
            if (!divides(lh, polys[g].front().e)) nb.push_back(g);
        nb.push_back(h);
        basis = std::move(nb);
    };

    for (const auto& g : gens) {
        if (g.nvars() != nvars) throw InvalidArgument("generator over the wrong number of variables");
        GPoly p = detail::reduce(detail::to_gpoly(g, ord), polys, basis, ord);
        if (p.empty()) continue;
        detail::make_monic(p);
        polys.push_back(std::move(p));
        update(polys.size() - 1);
    }

    while (!pairs.empty()) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs.size(); ++k)
            if (ord.greater(pairs[best].lcm, pairs[k].lcm)) best = k;
        Pair p = pairs[best];
        pairs.erase(pairs.begin() + static_cast<long>(best));
        const GPoly& f = polys[p.i];
        const GPoly& g = polys[p.j];
        GPoly s;
        {
            Exponents mf = detail::exp_sub(p.lcm, f.front().e);
            Exponents mg = detail::exp_sub(p.lcm, g.front().e);
            GPoly sf;
            for (std::size_t k = 1; k < f.size(); ++k) sf.push_back({add_exponents(f[k].e, mf), f[k].c});
            s = detail::sub_mul(sf, 0, 1, mg, g, 1, ord);
        }
        GPoly h = detail::reduce(std::move(s), polys, basis, ord);
        if (h.empty()) continue;
        detail::make_monic(h);
        polys.push_back(std::move(h));
        update(polys.size() - 1);
    }

    // Interreduce: minimal basis first, then reduce every tail.
    std::vector<std::size_t> minimal;
    for (auto g : basis) {
        bool redundant = false;
        for (auto o : basis)
            if (o != g && divides(polys[o].front().e, polys[g].front().e) &&
                (polys[o].front().e != polys[g].front().e || o < g))
                redundant = true;
        if (!redundant) minimal.push_back(g);
    }
    GroebnerBasis out;
    out.order = ord;
    out.nvars = nvars;
    for (auto g : minimal) {
        std::vector<std::size_t> others;
        for (auto o : minimal)
            if (o != g) others.push_back(o);
        GPoly tail(polys[g].begin() + 1, polys[g].end());
        GPoly r = detail::reduce(std::move(tail), polys, others, ord);
        GPoly full;
        full.push_back(polys[g].front());
        full.insert(full.end(), r.begin(), r.end());
        detail::make_monic(full);
        out.sorted.push_back(std::move(full));
    }
    std::sort(out.sorted.begin(), out.sorted.end(),
              [&ord](const GPoly& a, const GPoly& b) { return ord.greater(a.front().e, b.front().e); });
    for (const auto& g : out.sorted) out.basis.push_back(detail::from_gpoly(g, nvars));
    return out;
}

inline GroebnerBasis buchberger(const Presentation& p, MonomialOrder ord = MonomialOrder::grevlex()) {
    return buchberger(p.gens, p.nvars(), ord);
}

inline MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& g) {
    std::vector<std::size_t> all(g.sorted.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return detail::from_gpoly(detail::reduce(detail::to_gpoly(f, g.order), g.sorted, all, g.order), g.nvars);
}

inline bool ideal_contains(const GroebnerBasis& g, const std::vector<MultiPoly>& gens) {
    return std::all_of(gens.begin(), gens.end(), [&g](const MultiPoly& f) { return normal_form(f, g).is_zero(); });
}

/// Ideal equality of two presentations over the same ambient ring.
inline bool ideal_equal(const Presentation& i, const Presentation& j) {
    if (i.vars != j.vars) throw InvalidArgument("ideal_equal: presentations over different ambient rings");
    return ideal_contains(buchberger(j), i.gens) && ideal_contains(buchberger(i), j.gens);
}

/// Dimension of a quotient ring over Q; `finite == false` means infinite.
struct QuotientDimension {
    bool finite = true;
    std::size_t value = 0;

    std::string str() const { return finite ? std::to_string(value) : "infinite"; }
    friend bool operator==(const QuotientDimension&, const QuotientDimension&) = default;
};

/// Count standard monomials (monomials outside the leading-term ideal).
inline QuotientDimension staircase_count(const GroebnerBasis& g) {
    const std::size_t n = g.nvars;
    std::vector<Exponents> leads;
    for (const auto& p : g.sorted) leads.push_back(p.front().e);
    for (std::size_t v = 0; v < n; ++v) {
        bool bounded = false;
        for (const auto& e : leads) {
            bool pure = e[v] > 0;
            for (std::size_t k = 0; k < n && pure; ++k)
                if (k != v && e[k] != 0) pure = false;
            bool constant = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
            if (pure || constant) bounded = true;
        }
        if (!bounded) return {false, 0};
    }
    auto in_ideal = [&leads](const Exponents& m) {
        return std::any_of(leads.begin(), leads.end(), [&m](const Exponents& l) { return divides(l, m); });
    };
    std::size_t count = 0;
    Exponents m(n, 0);
    auto rec = [&](auto&& self, std::size_t v) -> void {
        if (v == n) {
            ++count;
            return;
        }
        for (m[v] = 0; !in_ideal(m); ++m[v]) self(self, v + 1);
        m[v] = 0;
    };
    if (!in_ideal(m)) rec(rec, 0);
    return {true, count};
}

/// Number of standard monomials of the presentation, optionally after
/// specializing its flavor variables to the given values.
inline QuotientDimension quotient_dimension(const Presentation& p,
                                            const std::optional<std::vector<Rational>>& specialize = std::nullopt) {
    std::vector<MultiPoly> gens = p.gens;
    if (specialize) {
        if (specialize->size() != p.flavor_vars.size())
            throw InvalidArgument("quotient_dimension: one value per flavor variable required");
        for (std::size_t k = 0; k < p.flavor_vars.size(); ++k)
            gens.push_back(MultiPoly::variable(p.nvars(), p.flavor_vars[k]) - MultiPoly(p.nvars(), (*specialize)[k]));
    }
    return staircase_count(buchberger(gens, p.nvars()));
}

/// Eliminate the auxiliary block: returns the contraction of the ideal to the
/// remaining variables. Throws EliminationFailure when some auxiliary
/// variable is not congruent to a polynomial in the remaining variables.
inline Presentation eliminate(const Presentation& p) {
    if (p.naux == 0) return p;
    GroebnerBasis g = buchberger(p, MonomialOrder::elimination(p.naux));
    auto aux_free = [&p](const MultiPoly& f) {
        for (const auto& [e, c] : f.terms())
            for (std::size_t i = 0; i < p.naux; ++i)
                if (e[i] != 0) return false;
        return true;
    };
    if (!g.is_unit()) {
        for (std::size_t i = 0; i < p.naux; ++i) {
            MultiPoly nf = normal_form(MultiPoly::variable(p.nvars(), i), g);
            if (!aux_free(nf))
                throw EliminationFailure("auxiliary variable " + p.vars[i] +
                                         " is not expressible in the ambient variables; residual " +
                                         to_string(nf, p.vars));
        }
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = p.naux; i < p.nvars(); ++i) keep.push_back(i);
    Presentation out;
    out.vars.assign(p.vars.begin() + static_cast<long>(p.naux), p.vars.end());
    out.laurent_vars = p.laurent_vars;
    if (!p.grading.empty()) out.grading.assign(p.grading.begin() + static_cast<long>(p.naux), p.grading.end());
    for (auto f : p.flavor_vars) out.flavor_vars.push_back(f - p.naux);
    for (const auto& f : g.basis)
        if (aux_free(f)) out.gens.push_back(f.restrict_variables(keep));
    out.normalize();
    return out;
}

} // namespace coulomb
