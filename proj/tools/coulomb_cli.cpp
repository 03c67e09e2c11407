// coulomb: command-line front end. See README.md for the command list.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coulomb/cli.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    if (s.empty()) return out;
    for (int x : coulomb::parse_cochar(s)) out.push_back(x);
    return out;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!s.empty()) out.push_back(cur);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    using coulomb::cli::RunConfig;
    CLI::App app{"Exact Coulomb branch algebras, B-algebras and Hikita checks"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::size_t samples = 0;
    std::string lambda, mu, point;

    for (const auto& name : coulomb::cli::commands()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--out", cfg.out, "write the report to this file");
        sub->add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
        sub->add_option("--seed", cfg.seed, "seed for every randomized input");
        sub->add_option("--threads", cfg.threads, "worker threads (default: COULOMB_THREADS or 1)");
        if (name == "weight-mult") {
            sub->add_option("--type", cfg.type, "A1..A8, D3..D8, E6, E7, E8")->required();
            sub->add_option("--lambda", lambda, "highest weight, comma separated")->required();
            sub->add_option("--mu", mu, "weight, comma separated (fundamental-weight coordinates)")->required();
            continue;
        }
        sub->add_option("--theory", cfg.theories, "theory JSON file (repeatable)")->required();
        sub->add_option("--radius", cfg.radius, "box radius for B-algebra generators");
        sub->add_option("--order", cfg.order, "jet truncation order");
        sub->add_option("--samples", samples, "random samples (flavor points or element pairs)");
        sub->add_option("--convention", cfg.convention, "koszul or product-of-weights")
            ->check(CLI::IsMember({"koszul", "product-of-weights"}));
        if (name == "multiply" || name == "balgebra")
            sub->add_option("--algebra", cfg.algebra, "hom or k")->check(CLI::IsMember({"hom", "k"}));
        if (name == "multiply") {
            sub->add_option("--a", cfg.a, "left factor: JSON term map or file")->required();
            sub->add_option("--b", cfg.b, "right factor: JSON term map or file")->required();
        }
        if (name == "fixed-points") {
            sub->add_option("--datum", cfg.datum, "FixedPointDatum JSON file");
            sub->add_option("--point", point, "additive flavor point, comma separated rationals");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : coulomb::cli::kInputError;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (samples > 0) cfg.samples = samples;
    try {
        cfg.lambda = parse_int_list(lambda);
        cfg.mu = parse_int_list(mu);
    } catch (const coulomb::Error& e) {
        std::cerr << e.what() << "\n";
        return coulomb::cli::kInputError;
    }
    cfg.point = split_commas(point);

    const auto result = coulomb::cli::run(cfg);
    if (cfg.out.empty()) {
        std::cout << result.text;
    } else if (result.exit_code == coulomb::cli::kInputError) {
        std::cerr << result.text;
    }
    return result.exit_code;
}
