#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coulomb/coulomb_hom.hpp"
#include "coulomb/coulomb_k.hpp"
#include "coulomb/fixed_points.hpp"
#include "coulomb/groebner.hpp"
#include "coulomb/linalg.hpp"

namespace coulomb {

namespace detail {

inline void require_constrained_gauge(const GaugeTheory& t) {
    const auto ws = t.weights();
    for (std::size_t i = 0; i < t.gauge_rank(); ++i) {
        bool seen = false;
        for (const auto& w : ws)
            if (w.gauge[i] != 0) seen = true;
        if (!seen)
            throw UnconstrainedGauge("gauge coordinate " + std::to_string(i + 1) + " appears in no matter weight");
    }
}

/// Minimal subsets S of the matter weights such that nu is not in the span
/// of the gauge parts of the weights outside S.
inline std::vector<std::vector<std::size_t>> unstable_subsets(const GaugeTheory& t) {
    const auto ws = t.weights();
    const std::size_t n = ws.size();
    std::vector<std::vector<std::size_t>> found;
    for (std::size_t k = 0; k <= n; ++k) {
        for (const auto& s : linalg::subsets(n, k)) {
            bool superset = false;
            for (const auto& f : found)
                if (std::includes(s.begin(), s.end(), f.begin(), f.end())) superset = true;
            if (superset) continue;
            std::vector<std::vector<int>> rest;
            for (std::size_t i = 0; i < n; ++i)
                if (!std::binary_search(s.begin(), s.end(), i)) rest.push_back(ws[i].gauge);
            if (!linalg::in_span(rest, t.nu())) found.push_back(s);
        }
    }
    return found;
}

inline std::vector<int> gauge_flavor_key(const MatterWeight& w) {
    std::vector<int> key = w.gauge;
    key.insert(key.end(), w.flavor.begin(), w.flavor.end());
    return key;
}

} // namespace detail

/// Kirwan-image presentation of equivariant cohomology of the Higgs branch:
/// Q[x, c] modulo products of the characters over each minimal unstable set.
inline Presentation higgs_cohomology_presentation(const GaugeTheory& t) {
    detail::require_constrained_gauge(t);
    const std::size_t d = t.gauge_rank(), m = t.flavor_rank(), n = d + m;
    Presentation p;
    VarNames names = t.hom_names();
    p.vars.assign(names.begin(), names.begin() + static_cast<long>(n));
    p.grading.assign(n, 0);
    for (std::size_t j = 0; j < m; ++j) p.flavor_vars.push_back(d + j);
    const auto ws = t.weights();
    for (const auto& s : detail::unstable_subsets(t)) {
        MultiPoly g(n, 1);
        for (auto i : s) {
            MultiPoly chi = HomRealization::linear_form(detail::gauge_flavor_key(ws[i]));
            for (int k = 0; k < ws[i].multiplicity; ++k) g *= chi;
        }
        p.gens.push_back(g);
    }
    p.normalize();
    return p;
}

/// Multiplicative analogue: products of (1 - f_chi^{-1}) in Q[t^{+-}, a^{+-}],
/// charted by u * prod t * prod a = 1.
inline Presentation higgs_ktheory_presentation(const GaugeTheory& t) {
    detail::require_constrained_gauge(t);
    const std::size_t d = t.gauge_rank(), m = t.flavor_rank(), n = d + m;
    Presentation p;
    VarNames names = t.k_names();
    p.vars.assign(names.begin(), names.begin() + static_cast<long>(n));
    p.laurent_vars = p.vars;
    p.vars.push_back("u");
    p.grading.assign(n + 1, 0);
    for (std::size_t j = 0; j < m; ++j) p.flavor_vars.push_back(d + j);
    const auto ws = t.weights();
    for (const auto& s : detail::unstable_subsets(t)) {
        LaurentPoly g(n, 1);
        for (auto i : s) {
            auto key = detail::gauge_flavor_key(ws[i]);
            Exponents e(n);
            for (std::size_t k = 0; k < n; ++k) e[k] = -key[k];
            LaurentPoly f = LaurentPoly(n, 1) - LaurentPoly::monomial(e);
            for (int k = 0; k < ws[i].multiplicity; ++k) g *= f;
        }
        p.gens.push_back(KRealization::chart(g, 0));
    }
    MultiPoly chart = MultiPoly::variable(n + 1, n);
    for (std::size_t i = 0; i < n; ++i) chart *= MultiPoly::variable(n + 1, i);
    p.gens.push_back(chart - MultiPoly(n + 1, 1));
    p.normalize();
    return p;
}

inline nlohmann::json presentation_json(const Presentation& p) {
    std::vector<std::string> gens;
    for (const auto& g : p.gens) gens.push_back(to_string(g, p.vars));
    return {{"vars", p.vars}, {"laurent_vars", p.laurent_vars}, {"gens", gens}, {"grading", p.grading}};
}

/// Deterministic pseudo-random flavor points (portable: no std distributions).
inline std::vector<std::vector<Rational>> sample_flavor_points(std::size_t m, std::size_t count, std::uint64_t seed,
                                                               long lo, long hi) {
    std::mt19937_64 rng(seed);
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    std::vector<std::vector<Rational>> out;
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<Rational> pt;
        for (std::size_t j = 0; j < m; ++j) pt.emplace_back(lo + static_cast<long>(rng() % span));
        out.push_back(std::move(pt));
    }
    return out;
}

inline nlohmann::json point_json(const std::vector<Rational>& pt) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& v : pt) a.push_back(to_string(v));
    return a;
}

/// One side (cohomological or K-theoretic) of a Hikita comparison.
struct HikitaSection {
    std::string side;
    std::string theory;
    int radius = 0;
    std::optional<bool> verdict; // empty: no verdict (degenerate input)
    std::string note;
    std::optional<Presentation> higgs;
    std::optional<Presentation> coulomb;
    std::vector<std::vector<Rational>> points;
    std::vector<QuotientDimension> higgs_dims;
    std::vector<QuotientDimension> coulomb_dims;
    bool ideals_equal = false;
    bool flat = false;

    bool passed() const { return verdict.value_or(true); }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["side"] = side;
        j["theory"] = theory;
        j["radius"] = radius;
        j["verdict"] = verdict ? nlohmann::json(*verdict ? "pass" : "fail") : nlohmann::json("none");
        if (!note.empty()) j["note"] = note;
        if (higgs) j["higgs"] = presentation_json(*higgs);
        if (coulomb) j["coulomb"] = presentation_json(*coulomb);
        nlohmann::json dims = nlohmann::json::array();
        for (std::size_t k = 0; k < points.size(); ++k)
            dims.push_back({{"flavor", point_json(points[k])},
                            {"higgs", higgs_dims[k].str()},
                            {"coulomb", coulomb_dims[k].str()}});
        j["dimensions"] = dims;
        j["ideals_equal"] = ideals_equal;
        j["flat"] = flat;
        return j;
    }
};

namespace detail {

template <class BuildHiggs, class BuildCoulomb>
HikitaSection hikita_check(const GaugeTheory& t, int radius, std::size_t samples, std::uint64_t seed,
                           const std::string& side, const Rational& base_value, long lo, long hi,
                           BuildHiggs&& build_higgs, BuildCoulomb&& build_coulomb) {
    HikitaSection s;
    s.side = side;
    s.theory = t.name();
    s.radius = radius;
    Presentation coulomb_full = build_coulomb(t, radius);
    try {
        s.higgs = build_higgs(t);
    } catch (const UnconstrainedGauge& e) {
        s.note = std::string("Higgs side ill-defined (") + e.what() + "); Coulomb B-algebra dimension " +
                 quotient_dimension(coulomb_full, std::vector<Rational>(t.flavor_rank(), base_value)).str();
        return s;
    }
    s.coulomb = eliminate(coulomb_full);
    s.ideals_equal = ideal_equal(*s.higgs, *s.coulomb);
    s.points.emplace_back(t.flavor_rank(), base_value);
    for (auto& p : sample_flavor_points(t.flavor_rank(), samples, seed, lo, hi)) s.points.push_back(std::move(p));
    for (const auto& pt : s.points) {
        s.higgs_dims.push_back(quotient_dimension(*s.higgs, pt));
        s.coulomb_dims.push_back(quotient_dimension(coulomb_full, pt));
    }
    s.flat = true;
    for (std::size_t k = 0; k < s.points.size(); ++k)
        if (!(s.higgs_dims[k] == s.higgs_dims[0]) || !(s.coulomb_dims[k] == s.higgs_dims[0])) s.flat = false;
    s.verdict = s.ideals_equal && s.flat;
    return s;
}

} // namespace detail

/// ker(phi_1) = ker(phi_2) in Q[x, c], plus dimensions at c = 0 and at
/// `samples` seeded random flavor points.
inline HikitaSection hikita_check_hom(const GaugeTheory& t, int radius = 3, std::size_t samples = 5,
                                      std::uint64_t seed = 1) {
    return detail::hikita_check(t, radius, samples, seed, "hom", Rational(0), -50, 50,
                                [](const GaugeTheory& x) { return higgs_cohomology_presentation(x); },
                                [](const GaugeTheory& x, int r) { return balgebra_presentation_hom(x, r); });
}

/// K-theoretic version in Q[t^{+-}, a^{+-}], dimensions at a = 1 and at
/// random nonzero flavor points.
inline HikitaSection hikita_check_k(const GaugeTheory& t, int radius = 3, std::size_t samples = 5,
                                    std::uint64_t seed = 1) {
    return detail::hikita_check(t, radius, samples, seed, "k", Rational(1), 1, 50,
                                [](const GaugeTheory& x) { return higgs_ktheory_presentation(x); },
                                [](const GaugeTheory& x, int r) { return balgebra_presentation_k(x, r); });
}

struct FiberReport {
    std::vector<Rational> point;
    QuotientDimension specialized;
    std::vector<FiberPoint> summands;
    std::vector<QuotientDimension> summand_dims;
    bool pass = false;

    nlohmann::json to_json() const {
        nlohmann::json s = nlohmann::json::array();
        std::size_t total = 0;
        for (std::size_t k = 0; k < summands.size(); ++k) {
            nlohmann::json labels = nlohmann::json::array();
            for (const auto& l : summands[k].gauge) labels.push_back(l.str());
            s.push_back({{"gauge", labels},
                         {"relevance", relevance_name(summands[k].relevance)},
                         {"dimension", summand_dims[k].str()}});
            total += summand_dims[k].value;
        }
        return {{"check", "fiber_consistency"}, {"flavor", point_json(point)}, {"specialized", specialized.str()},
                {"summands", s}, {"sum", total}, {"pass", pass}};
    }
};

/// Specialized B-algebra dimension at a rational flavor point against the
/// sum of the B-algebra dimensions of the fixed-point sub-theories.
inline FiberReport fiber_consistency(const GaugeTheory& t, const std::vector<Rational>& point, int radius = 3) {
    FiberReport r;
    r.point = point;
    r.specialized = quotient_dimension(balgebra_presentation_hom(t, radius), point);
    r.summands = fiber_decomposition(t, additive_labels(point), true);
    bool finite = r.specialized.finite;
    std::size_t total = 0;
    for (const auto& s : r.summands) {
        auto dim = quotient_dimension(balgebra_presentation_hom(s.theory, radius),
                                      std::vector<Rational>(s.theory.flavor_rank(), 0));
        finite = finite && dim.finite;
        total += dim.value;
        r.summand_dims.push_back(dim);
    }
    r.pass = finite && total == r.specialized.value;
    return r;
}

} // namespace coulomb
