#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coulomb/coulomb_hom.hpp"
#include "coulomb/coulomb_k.hpp"
#include "coulomb/jet.hpp"

namespace coulomb {

/// Element of the completed homological algebra: sum of Jet * r_lambda.
class CompletedElement {
public:
    using TermMap = std::map<Cocharacter, Jet>;

    CompletedElement(std::size_t nvars, int order) : nvars_(nvars), order_(order) {}

    std::size_t nvars() const { return nvars_; }
    int order() const { return order_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Cocharacter& lambda, const Jet& j) {
        if (j.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(lambda, j);
        if (!inserted) {
            it->second += j;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    CompletedElement& operator+=(const CompletedElement& o) {
        for (const auto& [l, j] : o.terms_) add_term(l, j);
        return *this;
    }
    CompletedElement& operator-=(const CompletedElement& o) {
        for (const auto& [l, j] : o.terms_) add_term(l, -j);
        return *this;
    }
    friend CompletedElement operator+(CompletedElement a, const CompletedElement& b) { return a += b; }
    friend CompletedElement operator-(CompletedElement a, const CompletedElement& b) { return a -= b; }
    friend bool operator==(const CompletedElement& a, const CompletedElement& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

private:
    std::size_t nvars_;
    int order_;
    TermMap terms_;
};

/// Completed algebra: the homological product rules with jet coefficients.
class CompletedAlgebra {
public:
    CompletedAlgebra(const GaugeTheory& theory, int order)
        : hom_(hom_algebra(theory)), order_(order), todd_cache_(std::make_shared<ToddCache>()) {}

    const HomAlgebra& hom() const { return hom_; }
    int order() const { return order_; }
    std::size_t nvars() const { return hom_.nvars(); }

    /// s_lambda on jets (x_k -> x_k + lambda_k hbar is degree preserving).
    Jet shift(const Cocharacter& lambda, const Jet& j) const {
        if (std::all_of(lambda.begin(), lambda.end(), [](int x) { return x == 0; })) return j;
        return Jet(hom_.shift(lambda, j.poly()), j.order());
    }

    CompletedElement multiply(const CompletedElement& a, const CompletedElement& b) const {
        CompletedElement r(nvars(), order_);
        for (const auto& [l, f] : a.terms())
            for (const auto& [m, g] : b.terms()) {
                Cocharacter s(l.size());
                for (std::size_t i = 0; i < l.size(); ++i) s[i] = l[i] + m[i];
                r.add_term(s, f * shift(l, g) * hom_.cocycle(l, m));
            }
        return r;
    }

    /// Td(lambda)^{-1}: product of (1 - e^{-chi - k hbar}) / (chi + k hbar)
    /// over the Euler index set of lambda.
    Jet todd_inverse(const Cocharacter& lambda) const {
        {
            std::lock_guard<std::mutex> lock(todd_cache_->mutex);
            auto it = todd_cache_->values.find(lambda);
            if (it != todd_cache_->values.end()) return it->second;
        }
        Jet j = todd_product(euler_factor_keys(hom_.weights(), lambda), nvars(), order_);
        std::lock_guard<std::mutex> lock(todd_cache_->mutex);
        return todd_cache_->values.emplace(lambda, std::move(j)).first->second;
    }

    static Jet todd_product(const std::vector<std::pair<FactorKey, int>>& keys, std::size_t nvars, int order) {
        Jet r = Jet::constant(nvars, order, 1);
        for (const auto& [key, mult] : keys) {
            FactorKey chi = key;
            chi.back() = 0;
            Jet f = todd_inverse_factor(HomRealization::linear_form(chi), key.back(), order);
            for (int i = 0; i < mult; ++i) r *= f;
        }
        return r;
    }

private:
    struct ToddCache {
        std::mutex mutex;
        std::map<Cocharacter, Jet> values;
    };

    HomAlgebra hom_;
    int order_;
    std::shared_ptr<ToddCache> todd_cache_;
};

inline CompletedElement embed_hom(const HomElement& a, std::size_t nvars, int order) {
    CompletedElement r(nvars, order);
    for (const auto& [l, p] : a.terms()) r.add_term(l, Jet(p, order));
    return r;
}

/// Upsilon(f r^x_lambda) = ch(f) Td(lambda)^{-1} r_lambda, extended additively.
inline CompletedElement upsilon(const CompletedAlgebra& alg, const KElement& a) {
    CompletedElement r(alg.nvars(), alg.order());
    for (const auto& [l, f] : a.terms()) r.add_term(l, chern_character_jet(f, alg.order()) * alg.todd_inverse(l));
    return r;
}

/// Machine-readable outcome of an identity check.
struct CheckReport {
    std::string check;
    std::string theory;
    nlohmann::json inputs = nlohmann::json::object();
    int order = 0;
    bool pass = false;
    std::vector<std::string> residual_terms;

    nlohmann::json to_json() const {
        return {{"check", check},   {"theory", theory}, {"inputs", inputs},
                {"order", order},   {"pass", pass},     {"residual_terms", residual_terms}};
    }
};

inline std::string cochar_string(const Cocharacter& l) {
    std::string s = "(";
    for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
    return s + ")";
}

inline std::vector<std::string> residual_strings(const CompletedElement& diff, const VarNames& names,
                                                 std::size_t limit = 16) {
    std::vector<std::string> out;
    for (const auto& [l, j] : diff.terms()) {
        if (out.size() == limit) break;
        out.push_back(cochar_string(l) + ": " + to_string(j.poly(), names));
    }
    return out;
}

template <class E>
std::string element_string(const E& e, const VarNames& names) {
    if (e.is_zero()) return "0";
    std::string s;
    for (const auto& [l, p] : e.terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + to_string(p, names) + ")*r" + cochar_string(l);
    }
    return s;
}

/// Upsilon(a * b) - Upsilon(a) * Upsilon(b) in the completed algebra.
inline CheckReport verify_upsilon_homomorphism(const GaugeTheory& theory, const KAlgebra& kalg,
                                               const CompletedAlgebra& calg, const KElement& a, const KElement& b) {
    CompletedElement lhs = upsilon(calg, kalg.multiply(a, b));
    CompletedElement rhs = calg.multiply(upsilon(calg, a), upsilon(calg, b));
    CompletedElement diff = lhs - rhs;
    CheckReport r;
    r.check = "upsilon_homomorphism";
    r.theory = theory.name();
    r.inputs = {{"a", element_string(a, theory.k_names())},
                {"b", element_string(b, theory.k_names())},
                {"convention", kalg.realization().convention == EulerConvention::koszul ? "koszul"
                                                                                        : "product-of-weights"}};
    r.order = calg.order();
    r.pass = diff.is_zero();
    r.residual_terms = residual_strings(diff, theory.hom_names());
    return r;
}

/// ch(E(lambda)) = Td(lambda)^{-1} e(lambda) to the algebra's order.
inline CheckReport verify_td_identity(const GaugeTheory& theory, const CompletedAlgebra& calg, const KAlgebra& kalg,
                                      const Cocharacter& lambda) {
    Jet lhs = chern_character_jet(kalg.euler(lambda), calg.order());
    Jet rhs = calg.todd_inverse(lambda) * calg.hom().euler(lambda);
    CheckReport r;
    r.check = "td_identity";
    r.theory = theory.name();
    r.inputs = {{"lambda", lambda}};
    r.order = calg.order();
    r.pass = lhs == rhs;
    if (!r.pass) r.residual_terms.push_back(to_string((lhs - rhs).poly(), theory.hom_names()));
    return r;
}

/// Jet prefactor of Upsilon on a dressed minuscule monopole: the Todd
/// product over all torus weights of N and k in [<lambda,chi>, -1].
inline Jet minuscule_upsilon_prefactor(const GaugeTheory& theory, const Cocharacter& lambda, int order) {
    require_minuscule(theory.block_dims(), lambda);
    return CompletedAlgebra::todd_product(euler_factor_keys(theory.weights(WeightMode::torus), lambda),
                                          theory.ring_vars(), order);
}

} // namespace coulomb
