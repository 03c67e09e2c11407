#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coulomb/errors.hpp"
#include "coulomb/fixed_points.hpp"
#include "coulomb/gauge_theory.hpp"
#include "coulomb/monopole.hpp"
#include "coulomb/polynomial.hpp"
#include "coulomb/rational.hpp"

namespace coulomb {

using Json = nlohmann::json;

namespace detail {

template <class T>
T json_get(const Json& j, const char* what) {
    try {
        return j.get<T>();
    } catch (const Json::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

inline std::vector<int> int_vector(const Json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + ": expected an integer array");
    return json_get<std::vector<int>>(j, what);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Theories

inline Json theory_to_json(const GaugeTheory& t) {
    Json j;
    if (!t.name().empty()) j["name"] = t.name();
    if (t.nu_is_determinant()) {
        j["nu"] = "determinant";
    } else {
        j["nu"] = t.nu();
    }
    if (t.is_quiver()) {
        const Quiver& q = t.quiver();
        j["vertices"] = q.vertices;
        Json arrows = Json::array();
        for (auto [s, d] : q.arrows) arrows.push_back({s, d});
        j["arrows"] = arrows;
        j["dims"] = q.dims;
        j["framing"] = q.framing;
        if (t.flavor() == FlavorAssignment::make_maximal(q)) {
            j["flavor"] = "maximal";
        } else {
            j["flavor"] = {{"rank", t.flavor().rank}, {"arrows", t.flavor().arrows}, {"legs", t.flavor().legs}};
        }
    } else {
        j["gauge_rank"] = t.gauge_rank();
        j["flavor_rank"] = t.flavor_rank();
        Json matter = Json::array();
        for (const auto& w : t.raw_matter()) matter.push_back({w.gauge, w.flavor, w.multiplicity});
        j["raw_matter"] = matter;
    }
    return j;
}

/// Canonical text form: sorted keys, compact.
inline std::string theory_to_string(const GaugeTheory& t) { return theory_to_json(t).dump(); }

inline GaugeTheory theory_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("theory: expected a JSON object");
    std::string name = j.contains("name") ? detail::json_get<std::string>(j["name"], "name") : std::string();
    std::optional<std::vector<int>> nu;
    if (j.contains("nu")) {
        const Json& n = j["nu"];
        if (n.is_string()) {
            if (n.get<std::string>() != "determinant") throw ParseError("nu: expected \"determinant\" or a vector");
        } else {
            nu = detail::int_vector(n, "nu");
        }
    }
    const bool has_quiver = j.contains("vertices") || j.contains("dims");
    const bool has_raw = j.contains("raw_matter") || j.contains("gauge_rank");
    if (has_quiver == has_raw) throw ParseError("theory: give either a quiver (vertices, dims, ...) or raw_matter");

    if (has_raw) {
        std::vector<MatterWeight> matter;
        if (j.contains("raw_matter")) {
            if (!j["raw_matter"].is_array()) throw ParseError("raw_matter: expected an array");
            for (const auto& e : j["raw_matter"]) {
                if (!e.is_array() || e.size() < 2 || e.size() > 3)
                    throw ParseError("raw_matter entry: expected [gauge, flavor, multiplicity]");
                MatterWeight w{detail::int_vector(e[0], "raw_matter gauge"), detail::int_vector(e[1], "raw_matter flavor"),
                               e.size() == 3 ? detail::json_get<int>(e[2], "raw_matter multiplicity") : 1};
                matter.push_back(std::move(w));
            }
        }
        std::size_t d = 0, m = 0;
        if (j.contains("gauge_rank")) {
            d = detail::json_get<std::size_t>(j["gauge_rank"], "gauge_rank");
        } else if (!matter.empty()) {
            d = matter.front().gauge.size();
        } else {
            throw ParseError("gauge_rank required when raw_matter is empty");
        }
        if (j.contains("flavor_rank")) {
            m = detail::json_get<std::size_t>(j["flavor_rank"], "flavor_rank");
        } else if (!matter.empty()) {
            m = matter.front().flavor.size();
        }
        return GaugeTheory::raw(d, m, std::move(matter), std::move(nu), std::move(name));
    }

    Quiver q;
    if (!j.contains("dims")) throw ParseError("quiver theory requires dims");
    q.dims = detail::int_vector(j["dims"], "dims");
    if (!j.contains("vertices")) {
        for (std::size_t i = 0; i < q.dims.size(); ++i) q.vertices.push_back(std::to_string(i + 1));
    } else if (j["vertices"].is_number_integer()) {
        const int n = j["vertices"].get<int>();
        for (int i = 0; i < n; ++i) q.vertices.push_back(std::to_string(i + 1));
    } else {
        q.vertices = detail::json_get<std::vector<std::string>>(j["vertices"], "vertices");
    }
    q.framing = j.contains("framing") ? detail::int_vector(j["framing"], "framing") : std::vector<int>(q.dims.size(), 0);
    if (j.contains("arrows")) {
        if (!j["arrows"].is_array()) throw ParseError("arrows: expected an array of [src, dst]");
        for (const auto& a : j["arrows"]) {
            auto e = detail::int_vector(a, "arrow");
            if (e.size() != 2) throw ParseError("arrow: expected [src, dst]");
            q.arrows.emplace_back(e[0], e[1]);
        }
    }
    std::optional<FlavorAssignment> flavor;
    if (j.contains("flavor")) {
        const Json& f = j["flavor"];
        if (f.is_string()) {
            if (f.get<std::string>() != "maximal") throw ParseError("flavor: expected \"maximal\" or an object");
        } else if (f.is_object()) {
            FlavorAssignment fa;
            fa.maximal = false;
            fa.rank = detail::json_get<int>(f.at("rank"), "flavor rank");
            fa.arrows = detail::json_get<std::vector<std::vector<int>>>(f.value("arrows", Json::array()), "flavor arrows");
            fa.legs = detail::json_get<std::vector<std::vector<std::vector<int>>>>(f.value("legs", Json::array()),
                                                                                 "flavor legs");
            flavor = std::move(fa);
        } else {
            throw ParseError("flavor: expected \"maximal\" or an object");
        }
    }
    return GaugeTheory::from_quiver(std::move(q), std::move(flavor), std::move(nu), std::move(name));
}

inline GaugeTheory theory_from_string(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("theory JSON: ") + e.what());
    }
    return theory_from_json(j);
}

inline GaugeTheory load_theory(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open theory file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    GaugeTheory t = theory_from_string(ss.str());
    if (t.name().empty()) {
        std::string stem = path.substr(path.find_last_of('/') + 1);
        t.set_name(stem.substr(0, stem.find('.')));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Elements: {"l1,l2,...": "polynomial"}

inline std::string cochar_key(const Cocharacter& l) {
    std::string s;
    for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
    return s;
}

inline Cocharacter parse_cochar(const std::string& text) {
    Cocharacter l;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            l.push_back(std::stoi(part, &used));
            if (used != part.size() && part.find_first_not_of(' ', used) != std::string::npos)
                throw ParseError("bad cocharacter entry '" + part + "'");
        } catch (const std::logic_error&) {
            throw ParseError("bad cocharacter entry '" + part + "'");
        }
    }
    return l;
}

template <class Poly>
Json element_to_json(const MonopoleElement<Poly>& e, const VarNames& names) {
    Json j = Json::object();
    for (const auto& [l, p] : e.terms()) j[cochar_key(l)] = to_string(p, names);
    return j;
}

template <class Poly, class Parse>
MonopoleElement<Poly> element_from_json(const Json& j, const VarNames& names, std::size_t gauge_rank, Parse&& parse) {
    if (!j.is_object()) throw ParseError("element: expected an object {\"lambda\": \"polynomial\"}");
    MonopoleElement<Poly> e(names.size());
    for (const auto& [k, v] : j.items()) {
        Cocharacter l = parse_cochar(k);
        if (l.size() != gauge_rank) throw ParseError("element key '" + k + "' has wrong length");
        e.add_term(l, parse(detail::json_get<std::string>(v, "element coefficient"), names));
    }
    return e;
}

// ---------------------------------------------------------------------------
// Fixed-point data

inline Json label_to_json(const EigenvalueLabel& l) { return {{"torsion", to_string(l.torsion)}, {"generic", l.generic}}; }

inline EigenvalueLabel label_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("eigenvalue label: expected {torsion, generic}");
    Rational t = j.contains("torsion") ? parse_rational(detail::json_get<std::string>(j["torsion"], "torsion")) : Rational(0);
    return EigenvalueLabel::make(t, detail::int_vector(j.value("generic", Json::array()), "generic"));
}

inline Json datum_to_json(const FixedPointDatum& d) {
    Json g = Json::array(), f = Json::array();
    for (const auto& l : d.gauge) g.push_back(label_to_json(l));
    for (const auto& l : d.flavor) f.push_back(label_to_json(l));
    return {{"gauge", g}, {"flavor", f}};
}

inline FixedPointDatum datum_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("fixed-point datum: expected {gauge, flavor}");
    FixedPointDatum d;
    for (const auto& l : j.value("gauge", Json::array())) d.gauge.push_back(label_from_json(l));
    for (const auto& l : j.value("flavor", Json::array())) d.flavor.push_back(label_from_json(l));
    return d;
}

} // namespace coulomb
