#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "coulomb/coulomb_hom.hpp"
#include "coulomb/coulomb_k.hpp"
#include "coulomb/errors.hpp"
#include "coulomb/fixed_points.hpp"
#include "coulomb/gauge_theory.hpp"
#include "coulomb/groebner.hpp"
#include "coulomb/hikita.hpp"
#include "coulomb/io.hpp"
#include "coulomb/riemann_roch.hpp"
#include "coulomb/sampling.hpp"

namespace coulomb::cli {

enum ExitCode : int { kPass = 0, kCheckFailure = 1, kInputError = 2 };

struct RunConfig {
    std::string command;
    std::vector<std::string> theories;
    int order = kDefaultJetOrder;
    int radius = 3;
    std::uint64_t seed = 1;
    std::optional<std::size_t> samples; // per-command default when empty
    std::string out;
    std::string convention = "koszul";
    std::string format = "json";

    std::string algebra = "hom"; // multiply, balgebra: hom | k
    std::string a, b;            // multiply: element term maps (JSON text or file path)
    std::string datum;           // fixed-points: FixedPointDatum file
    std::vector<std::string> point; // fixed-points: additive flavor point
    std::string type;            // weight-mult
    std::vector<int> lambda, mu; // weight-mult
    std::size_t threads = 0;     // 0: COULOMB_THREADS or 1
};

struct RunResult {
    int exit_code = kPass;
    Json report;
    std::string text; // rendered report as written to --out / stdout
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c = {"validate", "multiply",      "balgebra",   "upsilon",
                                               "hikita",   "fixed-points", "weight-mult"};
    return c;
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline void flatten(const Json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object() && !j.empty()) {
        for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, rows);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", rows);
    } else {
        rows.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

} // namespace detail

/// `json`: indented JSON with sorted keys. `table`: one "path  value" row per leaf.
inline std::string render(const Json& report, const std::string& format) {
    if (format == "table") {
        std::vector<std::pair<std::string, std::string>> rows;
        detail::flatten(report, "", rows);
        std::size_t w = 0;
        for (const auto& r : rows) w = std::max(w, r.first.size());
        std::string s;
        for (const auto& [k, v] : rows) s += k + std::string(w - k.size() + 2, ' ') + v + "\n";
        return s;
    }
    return report.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Per-theory jobs

namespace detail {

struct JobResult {
    Json report;
    bool pass = true;
};

inline EulerConvention parse_convention(const std::string& c) {
    if (c == "koszul") return EulerConvention::koszul;
    if (c == "product-of-weights") return EulerConvention::product_of_weights;
    throw InvalidArgument("unknown convention '" + c + "' (expected koszul or product-of-weights)");
}

inline std::string read_text_or_file(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && arg[first] == '{') return arg;
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot open '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json parse_json_text(const std::string& text, const char* what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

inline Json weights_json(const std::vector<MatterWeight>& ws) {
    Json a = Json::array();
    for (const auto& w : ws) a.push_back({w.gauge, w.flavor, w.multiplicity});
    return a;
}

inline JobResult validate_job(const GaugeTheory& t, const RunConfig&) {
    JobResult r;
    Json j;
    j["theory"] = t.name();
    j["canonical"] = theory_to_json(t);
    j["gauge_rank"] = t.gauge_rank();
    j["flavor_rank"] = t.flavor_rank();
    j["abelian"] = t.abelian();
    j["matter_weights"] = weights_json(t.weights(WeightMode::torus));
    if (t.abelian()) {
        Json gens = Json::array();
        for (const auto& g : hilbert_basis_generators(t)) gens.push_back(g);
        j["hilbert_basis_generators"] = gens;
    }
    j["pass"] = true;
    r.report = j;
    return r;
}

inline JobResult balgebra_job(const GaugeTheory& t, const RunConfig& cfg) {
    JobResult r;
    const bool k = cfg.algebra == "k";
    Presentation p = k ? balgebra_presentation_k(t, cfg.radius) : balgebra_presentation_hom(t, cfg.radius);
    const Rational base = k ? Rational(1) : Rational(0);
    r.report = {{"theory", t.name()},
                {"algebra", k ? "k" : "hom"},
                {"radius", cfg.radius},
                {"presentation", presentation_json(p)},
                {"auxiliary_variables", p.naux},
                {"dimension", quotient_dimension(p, std::vector<Rational>(t.flavor_rank(), base)).str()},
                {"pass", true}};
    return r;
}

inline Json failure_list(const std::vector<CheckReport>& reports, std::size_t limit = 5) {
    Json a = Json::array();
    for (const auto& c : reports) {
        if (a.size() == limit) break;
        a.push_back(c.to_json());
    }
    return a;
}

inline JobResult upsilon_job(const GaugeTheory& t, const RunConfig& cfg) {
    JobResult r;
    const EulerConvention conv = parse_convention(cfg.convention);
    const KAlgebra kalg = k_algebra(t, conv);
    const CompletedAlgebra calg(t, cfg.order);
    const std::size_t n = t.ring_vars();

    auto section = [&](const std::vector<std::pair<KElement, KElement>>& pairs) {
        std::vector<CheckReport> failed;
        for (const auto& [a, b] : pairs) {
            CheckReport c = verify_upsilon_homomorphism(t, kalg, calg, a, b);
            if (!c.pass) failed.push_back(std::move(c));
        }
        r.pass = r.pass && failed.empty();
        return Json{{"count", pairs.size()}, {"failed", failed.size()}, {"failures", failure_list(failed)}};
    };

    const auto gens = hilbert_basis_generators(t);
    std::vector<std::pair<KElement, KElement>> gen_pairs;
    for (const auto& g : gens)
        for (const auto& h : gens)
            gen_pairs.emplace_back(KElement::monopole(g, LaurentPoly(n, 1)), KElement::monopole(h, LaurentPoly(n, 1)));

    Sampler s(cfg.seed);
    std::vector<std::pair<KElement, KElement>> random_pairs;
    for (std::size_t i = 0; i < cfg.samples.value_or(100); ++i) {
        KElement a = s.k_element(t);
        KElement b = s.k_element(t);
        random_pairs.emplace_back(std::move(a), std::move(b));
    }

    Json j;
    j["theory"] = t.name();
    j["convention"] = cfg.convention;
    j["order"] = cfg.order;
    j["generator_pairs"] = section(gen_pairs);
    j["random_pairs"] = section(random_pairs);

    // Td identity on the box |lambda|_inf <= 3; it involves only e(lambda), E(lambda).
    const KAlgebra koszul = k_algebra(t, EulerConvention::koszul);
    std::vector<CheckReport> td_failed;
    std::size_t td_count = 0;
    for (const auto& l : ::coulomb::detail::box_points(t.gauge_rank(), 3)) {
        ++td_count;
        CheckReport c = verify_td_identity(t, calg, koszul, l);
        if (!c.pass) td_failed.push_back(std::move(c));
    }
    r.pass = r.pass && td_failed.empty();
    j["td_identity"] = {{"count", td_count}, {"failed", td_failed.size()}, {"failures", failure_list(td_failed)}};
    j["pass"] = r.pass;
    r.report = j;
    return r;
}

inline JobResult hikita_job(const GaugeTheory& t, const RunConfig& cfg) {
    JobResult r;
    const std::size_t samples = cfg.samples.value_or(5);
    HikitaSection hom = hikita_check_hom(t, cfg.radius, samples, cfg.seed);
    HikitaSection k = hikita_check_k(t, cfg.radius, samples, cfg.seed);
    Json j;
    j["theory"] = t.name();
    j["hom"] = hom.to_json();
    j["k"] = k.to_json();
    bool pass = hom.passed() && k.passed();

    // Remark: the hom and K fixed-point algebras have the same dimension.
    if (!hom.higgs_dims.empty() && !k.higgs_dims.empty()) {
        const bool agree = hom.coulomb_dims.front() == k.coulomb_dims.front();
        j["hom_k_dimension_agree"] = agree;
        pass = pass && agree;
    }

    Json fibers = Json::array();
    if (hom.verdict) {
        for (std::size_t i = 1; i < hom.points.size(); ++i) {
            FiberReport f = fiber_consistency(t, hom.points[i], cfg.radius);
            pass = pass && f.pass;
            fibers.push_back(f.to_json());
        }
    }
    j["fiber_consistency"] = fibers;
    j["pass"] = pass;
    r.pass = pass;
    r.report = j;
    return r;
}

inline Json fiber_point_json(const FiberPoint& p) {
    Json labels = Json::array();
    for (const auto& l : p.gauge) labels.push_back(label_to_json(l));
    return {{"gauge", labels}, {"relevance", relevance_name(p.relevance)}, {"theory", theory_to_json(p.theory)}};
}

inline JobResult fixed_points_job(const GaugeTheory& t, const RunConfig& cfg) {
    JobResult r;
    Json j;
    j["theory"] = t.name();
    if (!cfg.datum.empty()) {
        FixedPointDatum d = datum_from_json(parse_json_text(read_text_or_file(cfg.datum), "fixed-point datum"));
        FixedMatter fm = fixed_matter(t, d);
        Json blocks = Json::array();
        for (const auto& vertex : centralizer_blocks(t, d)) {
            Json b = Json::array();
            for (const auto& [label, mult] : vertex) b.push_back({{"label", label_to_json(label)}, {"multiplicity", mult}});
            blocks.push_back(b);
        }
        j["datum"] = datum_to_json(d);
        j["centralizer_blocks"] = blocks;
        j["fixed_theory"] = theory_to_json(fm.theory);
        j["fixed_matter_weights"] = weights_json(fm.theory.weights(WeightMode::torus));
    } else {
        std::vector<Rational> point;
        if (!cfg.point.empty()) {
            for (const auto& s : cfg.point) point.push_back(parse_rational(s));
            if (point.size() != t.flavor_rank()) throw InvalidArgument("--point must have one entry per flavor coordinate");
        } else {
            point = sample_flavor_points(t.flavor_rank(), 1, cfg.seed, -50, 50).front();
        }
        Json pts = Json::array();
        std::size_t relevant = 0;
        for (const auto& p : fiber_decomposition(t, additive_labels(point), true)) {
            if (p.relevance == Relevance::relevant) ++relevant;
            pts.push_back(fiber_point_json(p));
        }
        j["flavor"] = point_json(point);
        j["points"] = pts;
        j["relevant_count"] = relevant;
    }
    j["pass"] = true;
    r.report = j;
    return r;
}

using Job = std::function<JobResult(const GaugeTheory&, const RunConfig&)>;

inline std::size_t thread_count(const RunConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("COULOMB_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
        throw InvalidArgument("COULOMB_THREADS must be a positive integer");
    }
    return 1;
}

/// Runs `job` on every theory, in parallel when configured; results keep the
/// input order and the first error (in input order) is rethrown.
inline std::vector<JobResult> run_jobs(const std::vector<GaugeTheory>& theories, const RunConfig& cfg, const Job& job) {
    std::vector<JobResult> results(theories.size());
    std::vector<std::exception_ptr> errors(theories.size());
    auto work = [&](std::size_t i) {
        try {
            results[i] = job(theories[i], cfg);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    const std::size_t nthreads = std::min(thread_count(cfg), theories.size());
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < theories.size(); ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < nthreads; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < theories.size(); i += nthreads) work(i);
            });
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

inline Json config_json(const RunConfig& cfg) {
    Json j = {{"order", cfg.order}, {"radius", cfg.radius}, {"seed", cfg.seed}, {"convention", cfg.convention}};
    if (cfg.samples) j["samples"] = *cfg.samples;
    return j;
}

inline Json run_checked(const RunConfig& cfg, bool& pass) {
    Json report;
    report["command"] = cfg.command;
    report["config"] = config_json(cfg);

    if (cfg.command == "weight-mult") {
        if (cfg.type.empty()) throw InvalidArgument("weight-mult requires --type");
        const long m = weight_multiplicity_of_weight(cfg.type, cfg.lambda, cfg.mu);
        report["type"] = cfg.type;
        report["lambda"] = cfg.lambda;
        report["mu"] = cfg.mu;
        report["multiplicity"] = m;
        report["pass"] = true;
        pass = true;
        return report;
    }

    if (cfg.theories.empty()) throw InvalidArgument(cfg.command + " requires at least one --theory");
    std::vector<GaugeTheory> theories;
    for (const auto& path : cfg.theories) theories.push_back(load_theory(path));

    if (cfg.command == "multiply") {
        if (theories.size() != 1) throw InvalidArgument("multiply takes exactly one --theory");
        if (cfg.a.empty() || cfg.b.empty()) throw InvalidArgument("multiply requires --a and --b");
        const GaugeTheory& t = theories.front();
        const Json ja = parse_json_text(read_text_or_file(cfg.a), "--a");
        const Json jb = parse_json_text(read_text_or_file(cfg.b), "--b");
        report["theory"] = t.name();
        report["algebra"] = cfg.algebra;
        if (cfg.algebra == "hom") {
            const HomAlgebra alg = hom_algebra(t);
            auto a = element_from_json<MultiPoly>(ja, t.hom_names(), t.gauge_rank(), parse_poly);
            auto b = element_from_json<MultiPoly>(jb, t.hom_names(), t.gauge_rank(), parse_poly);
            report["a"] = element_to_json(a, t.hom_names());
            report["b"] = element_to_json(b, t.hom_names());
            report["product"] = element_to_json(alg.multiply(a, b), t.hom_names());
        } else if (cfg.algebra == "k") {
            const KAlgebra alg = k_algebra(t, parse_convention(cfg.convention));
            auto a = element_from_json<LaurentPoly>(ja, t.k_names(), t.gauge_rank(), parse_laurent);
            auto b = element_from_json<LaurentPoly>(jb, t.k_names(), t.gauge_rank(), parse_laurent);
            report["a"] = element_to_json(a, t.k_names());
            report["b"] = element_to_json(b, t.k_names());
            report["product"] = element_to_json(alg.multiply(a, b), t.k_names());
        } else {
            throw InvalidArgument("--algebra must be hom or k");
        }
        report["pass"] = true;
        pass = true;
        return report;
    }

    Job job;
    if (cfg.command == "validate") {
        job = validate_job;
    } else if (cfg.command == "balgebra") {
        if (cfg.algebra != "hom" && cfg.algebra != "k") throw InvalidArgument("--algebra must be hom or k");
        job = balgebra_job;
    } else if (cfg.command == "upsilon") {
        parse_convention(cfg.convention);
        job = upsilon_job;
    } else if (cfg.command == "hikita") {
        job = hikita_job;
    } else if (cfg.command == "fixed-points") {
        job = fixed_points_job;
    } else {
        throw InvalidArgument("unknown command '" + cfg.command + "'");
    }
    Json results = Json::array();
    pass = true;
    for (auto& r : run_jobs(theories, cfg, job)) {
        pass = pass && r.pass;
        results.push_back(std::move(r.report));
    }
    report["results"] = results;
    report["pass"] = pass;
    return report;
}

} // namespace detail

/// Executes one command. Library errors become an `error` report with exit
/// code 2; failed checks give exit code 1.
inline RunResult run(const RunConfig& cfg) {
    RunResult res;
    try {
        if (cfg.format != "json" && cfg.format != "table") throw InvalidArgument("--format must be json or table");
        bool pass = false;
        res.report = detail::run_checked(cfg, pass);
        res.exit_code = pass ? kPass : kCheckFailure;
    } catch (const Error& e) {
        res.report = {{"command", cfg.command}, {"error", {{"code", e.code()}, {"message", e.what()}}}, {"pass", false}};
        res.exit_code = kInputError;
    } catch (const std::exception& e) {
        res.report = {{"command", cfg.command}, {"error", {{"code", "InternalError"}, {"message", e.what()}}},
                      {"pass", false}};
        res.exit_code = kInputError;
    }
    res.text = render(res.report, cfg.format == "table" ? "table" : "json");
    if (!cfg.out.empty()) {
        std::ofstream out(cfg.out, std::ios::binary);
        if (!out) {
            res.report = {{"command", cfg.command},
                          {"error", {{"code", "ParseError"}, {"message", "cannot write '" + cfg.out + "'"}}},
                          {"pass", false}};
            res.exit_code = kInputError;
            res.text = render(res.report, "json");
        } else {
            out << res.text;
        }
    }
    return res;
}

} // namespace coulomb::cli
