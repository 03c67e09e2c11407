#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coulomb/errors.hpp"
#include "coulomb/rational.hpp"

namespace coulomb {

/// Exponent vector of a monomial. Polynomial exponents are non-negative;
/// Laurent exponents may be negative.
using Exponents = std::vector<int>;

/// Ordered variable names of a polynomial ring, used for printing and parsing.
using VarNames = std::vector<std::string>;

inline int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Graded reverse lexicographic order; variable 0 has the highest priority.
/// Used as a "greater" comparator so that maps iterate from the leading term.
struct GrevlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const {
        const int da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

inline Exponents add_exponents(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

/// Sparse multivariate polynomial with exact rational coefficients.
/// `Laurent = true` admits negative exponents (all variables are units).
template <bool Laurent>
class BasicPoly {
public:
    using TermMap = std::map<Exponents, Rational, GrevlexGreater>;

    BasicPoly() = default;
    explicit BasicPoly(std::size_t nvars) : nvars_(nvars) {}
    BasicPoly(std::size_t nvars, const Rational& c) : nvars_(nvars) {
        if (c != 0) terms_.emplace(Exponents(nvars, 0), c);
    }

    static BasicPoly monomial(Exponents e, const Rational& c = 1) {
        BasicPoly p(e.size());
        if constexpr (!Laurent) {
            for (int x : e)
                if (x < 0) throw InvalidArgument("negative exponent in polynomial monomial");
        }
        if (c != 0) p.terms_.emplace(std::move(e), c);
        return p;
    }

    static BasicPoly variable(std::size_t nvars, std::size_t index, int power = 1) {
        Exponents e(nvars, 0);
        e.at(index) = power;
        return monomial(std::move(e));
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational constant_term() const { return coefficient(Exponents(nvars_, 0)); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents(nvars_, 0));
    }

    const Exponents& leading_exponents() const { return terms_.begin()->first; }
    const Rational& leading_coefficient() const { return terms_.begin()->second; }

    /// Total degree of the leading term (0 for the zero polynomial).
    int degree() const { return terms_.empty() ? 0 : total_degree(terms_.begin()->first); }

    int degree_in(std::size_t var) const {
        int d = 0;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (first || e[var] > d) d = e[var];
            first = false;
        }
        return d;
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Adds a*b*x^e without building the product as a temporary polynomial.
    void add_product(const Exponents& e, const Rational& a, const Rational& b) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, a * b);
            return;
        }
        thread_local Rational prod;
        mpq_mul(prod.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
        it->second += prod;
        if (it->second == 0) terms_.erase(it);
    }

    BasicPoly& operator+=(const BasicPoly& o) {
        adopt(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    BasicPoly& operator-=(const BasicPoly& o) {
        adopt(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    BasicPoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [e, c] : terms_) c *= s;
        }
        return *this;
    }

    friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
    friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
    friend BasicPoly operator-(BasicPoly a) {
        for (auto& [e, c] : a.terms_) c = -c;
        return a;
    }
    friend BasicPoly operator*(BasicPoly a, const Rational& s) { return a *= s; }
    friend BasicPoly operator*(const Rational& s, BasicPoly a) { return a *= s; }

    friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
        a.check_compatible(b);
        BasicPoly r(std::max(a.nvars_, b.nvars_));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(add_exponents(ea, eb), ca * cb);
        return r;
    }
    BasicPoly& operator*=(const BasicPoly& o) { return *this = *this * o; }

    friend bool operator==(const BasicPoly& a, const BasicPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    BasicPoly pow(unsigned n) const {
        BasicPoly result(nvars_, 1), base = *this;
        while (n) {
            if (n & 1U) result *= base;
            n >>= 1U;
            if (n) base *= base;
        }
        return result;
    }

    /// Componentwise minimum of exponents over all terms (zero vector for 0).
    Exponents min_exponents() const {
        Exponents m(nvars_, 0);
        bool first = true;
        for (const auto& [e, c] : terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
            first = false;
        }
        return m;
    }

    /// Multiply by the monomial x^shift (exponents may be negative only for
    /// Laurent polynomials).
    BasicPoly shift_exponents(const Exponents& shift) const {
        BasicPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponents ne = add_exponents(e, shift);
            if constexpr (!Laurent) {
                for (int x : ne)
                    if (x < 0) throw InvalidArgument("monomial shift leaves the polynomial ring");
            }
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    /// Insert `count` fresh variables at position `at` (all with exponent 0).
    BasicPoly insert_variables(std::size_t at, std::size_t count) const {
        BasicPoly r(nvars_ + count);
        for (const auto& [e, c] : terms_) {
            Exponents ne(e.begin(), e.begin() + static_cast<long>(at));
            ne.insert(ne.end(), count, 0);
            ne.insert(ne.end(), e.begin() + static_cast<long>(at), e.end());
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    /// Keep only the listed variables, in the listed order. Throws if a
    /// dropped variable occurs in some term.
    BasicPoly restrict_variables(const std::vector<std::size_t>& keep) const {
        BasicPoly r(keep.size());
        std::vector<bool> kept(nvars_, false);
        for (auto k : keep) kept.at(k) = true;
        for (const auto& [e, c] : terms_) {
            for (std::size_t i = 0; i < nvars_; ++i)
                if (!kept[i] && e[i] != 0) throw InvalidArgument("restrict_variables: dropped variable occurs");
            Exponents ne(keep.size());
            for (std::size_t i = 0; i < keep.size(); ++i) ne[i] = e[keep[i]];
            r.add_term(ne, c);
        }
        return r;
    }

    /// Substitute a rational value for variable `var`; the variable stays in
    /// the ring with exponent 0.
    BasicPoly specialize(std::size_t var, const Rational& value) const {
        BasicPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponents ne = e;
            ne[var] = 0;
            Rational v = c;
            int k = e[var];
            if (k != 0) {
                if (value == 0) {
                    if (k < 0) throw InvalidArgument("specializing a unit variable to zero");
                    continue;
                }
                Rational pw = 1;
                for (int i = 0; i < std::abs(k); ++i) pw *= value;
                if (k > 0) v *= pw; else v /= pw;
            }
            r.add_term(ne, v);
        }
        return r;
    }

    /// Multiply by the inverse of the leading coefficient.
    BasicPoly monic() const {
        if (is_zero()) return *this;
        Rational inv = 1 / leading_coefficient();
        return *this * inv;
    }

private:
    void adopt(const BasicPoly& o) {
        check_compatible(o);
        if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
    }

    void check_compatible(const BasicPoly& o) const {
        if (nvars_ != o.nvars_ && !(o.terms_.empty() && o.nvars_ == 0) && !(terms_.empty() && nvars_ == 0))
            throw InvalidArgument("polynomials over different variable sets");
    }

    template <bool>
    friend class BasicPoly;

    std::size_t nvars_ = 0;
    TermMap terms_;
};

using MultiPoly = BasicPoly<false>;
using LaurentPoly = BasicPoly<true>;

enum class PolyOp { add, mul, exact_div };

/// Exact quotient a / b in the polynomial ring. Throws DivisionNotExact when
/// the remainder of multivariate division is nonzero.
inline MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) throw InvalidArgument("division by the zero polynomial");
    MultiPoly rem = a, quot(a.nvars());
    const Exponents& lb = b.leading_exponents();
    const Rational& cb = b.leading_coefficient();
    while (!rem.is_zero()) {
        const Exponents& lr = rem.leading_exponents();
        if (!divides(lb, lr)) throw DivisionNotExact("divisor does not divide dividend (nonzero remainder)");
        Exponents qe(lr.size());
        for (std::size_t i = 0; i < lr.size(); ++i) qe[i] = lr[i] - lb[i];
        MultiPoly t = MultiPoly::monomial(qe, rem.leading_coefficient() / cb);
        quot += t;
        rem -= t * b;
    }
    return quot;
}

/// Exact quotient in the Laurent ring: both sides are moved into the
/// polynomial subring by monomial units, divided there, and shifted back.
inline LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw InvalidArgument("division by the zero Laurent polynomial");
    const std::size_t n = a.nvars();
    Exponents ma = a.min_exponents(), mb = b.min_exponents();
    auto to_poly = [n](const LaurentPoly& p, const Exponents& m) {
        MultiPoly r(n);
        for (const auto& [e, c] : p.terms()) {
            Exponents ne(n);
            for (std::size_t i = 0; i < n; ++i) ne[i] = e[i] - m[i];
            r.add_term(ne, c);
        }
        return r;
    };
    MultiPoly q = exact_div(to_poly(a, ma), to_poly(b, mb));
    LaurentPoly r(n);
    for (const auto& [e, c] : q.terms()) {
        Exponents ne(n);
        for (std::size_t i = 0; i < n; ++i) ne[i] = e[i] + ma[i] - mb[i];
        r.add_term(ne, c);
    }
    return r;
}

inline MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op) {
    switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::mul: return a * b;
    case PolyOp::exact_div: return exact_div(a, b);
    }
    throw InvalidArgument("unknown polynomial operation");
}

inline LaurentPoly laurent_arith(const LaurentPoly& a, const LaurentPoly& b, PolyOp op) {
    switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::mul: return a * b;
    case PolyOp::exact_div: return exact_div(a, b);
    }
    throw InvalidArgument("unknown Laurent operation");
}

/// Substitute polynomial images for every variable (ring homomorphism).
inline MultiPoly substitute(const MultiPoly& p, const std::vector<MultiPoly>& images) {
    if (images.size() != p.nvars()) throw InvalidArgument("substitute: wrong number of images");
    const std::size_t target = images.empty() ? 0 : images.front().nvars();
    std::vector<std::vector<MultiPoly>> powers(images.size());
    auto power = [&](std::size_t v, int k) -> const MultiPoly& {
        auto& cache = powers[v];
        if (cache.empty()) cache.emplace_back(target, 1);
        while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * images[v]);
        return cache[static_cast<std::size_t>(k)];
    };
    MultiPoly r(target);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly t(target, c);
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v]) t *= power(v, e[v]);
        r += t;
    }
    return r;
}

/// Polynomial viewed as a Laurent polynomial over the same variables.
inline LaurentPoly to_laurent(const MultiPoly& p) {
    LaurentPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c);
    return r;
}

/// Clear denominators by the monomial unit that makes every exponent
/// non-negative with a zero minimum in each variable.
inline MultiPoly clear_monomial_units(const LaurentPoly& p) {
    Exponents m = p.min_exponents();
    MultiPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        Exponents ne(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) ne[i] = e[i] - m[i];
        r.add_term(ne, c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Text format: terms joined by " + " / " - ", factors by "*", powers by "^".

template <bool Laurent>
std::string to_string(const BasicPoly<Laurent>& p, const VarNames& names) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        Rational mag = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += i < names.size() ? names[i] : "v" + std::to_string(i);
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += mono;
        } else {
            out += to_string(mag) + "*" + mono;
        }
    }
    return out;
}

namespace detail {

template <bool Laurent>
class PolyParser {
public:
    PolyParser(std::string_view text, const VarNames& names) : s_(text), names_(names) {}

    BasicPoly<Laurent> parse() {
        auto p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    using P = BasicPoly<Laurent>;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("polynomial parse error at " + std::to_string(pos_) + ": " + msg + " in '" +
                         std::string(s_) + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char ch) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }
    Integer integer() {
        skip();
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (b == pos_) fail("expected integer");
        return Integer(std::string(s_.substr(b, pos_ - b)), 10);
    }
    P expr() {
        P acc = term();
        for (;;) {
            if (eat('+')) {
                acc += term();
            } else if (eat('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }
    P term() {
        P acc = unary();
        for (;;) {
            if (eat('*')) {
                acc *= unary();
            } else if (eat('/')) {
                Integer d = integer();
                if (d == 0) fail("division by zero");
                acc *= Rational(Integer(1), d);
            } else {
                return acc;
            }
        }
    }
    P unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    P power() {
        P base = atom();
        if (!eat('^')) return base;
        bool neg = eat('-');
        Integer k = integer();
        if (!k.fits_sint_p()) fail("exponent too large");
        long n = k.get_si();
        if (!neg) return base.pow(static_cast<unsigned>(n));
        if constexpr (!Laurent) {
            fail("negative exponent outside a Laurent ring");
        } else {
            if (base.size() != 1) fail("negative power of a non-monomial");
            const auto& [e, c] = *base.terms().begin();
            Exponents ne(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) ne[i] = -e[i] * static_cast<int>(n);
            Rational inv = 1;
            for (long i = 0; i < n; ++i) inv /= c;
            return P::monomial(ne, inv);
        }
    }
    P atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char ch = s_[pos_];
        if (ch == '(') {
            ++pos_;
            P inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            Integer n = integer();
            return P(names_.size(), Rational(n));
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t b = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string id(s_.substr(b, pos_ - b));
            auto it = std::find(names_.begin(), names_.end(), id);
            if (it == names_.end()) fail("unknown variable '" + id + "'");
            return P::variable(names_.size(), static_cast<std::size_t>(it - names_.begin()));
        }
        fail(std::string("unexpected character '") + ch + "'");
    }

    std::string_view s_;
    const VarNames& names_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline MultiPoly parse_poly(std::string_view text, const VarNames& names) {
    return detail::PolyParser<false>(text, names).parse();
}

inline LaurentPoly parse_laurent(std::string_view text, const VarNames& names) {
    return detail::PolyParser<true>(text, names).parse();
}

} // namespace coulomb
