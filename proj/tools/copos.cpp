// copos: command-line front end for copositivity checks and cone-preserver
// decomposition.
//
//   copos check <path|->      [--mode exact|float] [--json]
//   copos decompose <path|->  [--mode exact|float] [--budget N] [--seed S] [--json]
//   copos generate <kind> <n> [--seed S] [--t T] [--json]
//   copos selftest <lo..hi>   [--seed S] [--samples N] [--json]

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <copos/commands.hpp>

namespace {

template <typename Fn>
int with_input(const std::string& path, Fn&& fn) {
    if (path == "-") return fn(std::cin);
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        return copos::cli::exit_code::failure;
    }
    return fn(in);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact copositivity checks and copositive-cone preserver decomposition"};
    app.require_subcommand(1);

    std::string path;
    std::string mode;

    copos::cli::check_options check_opt;
    auto* check = app.add_subcommand("check", "classify a symmetric matrix: interior, boundary or outside the cone");
    check->add_option("path", path, "matrix document (text or JSON), '-' for stdin")->required();
    check->add_option("--mode", mode, "exact (default) or float")->check(CLI::IsMember({"exact", "float"}));
    check->add_flag("--json", check_opt.json, "JSON report");

    copos::cli::decompose_options dec_opt;
    auto* decompose = app.add_subcommand("decompose", "decide whether an operator preserves the copositive cone");
    decompose->add_option("path", path, "operator document (JSON), '-' for stdin")->required();
    decompose->add_option("--mode", mode, "exact (default) or float")->check(CLI::IsMember({"exact", "float"}));
    decompose->add_option("--budget", dec_opt.budget, "random counterexample candidates to try")
        ->capture_default_str();
    decompose->add_option("--seed", dec_opt.seed, "seed for the random candidates")->capture_default_str();
    decompose->add_flag("--json", dec_opt.json, "JSON report");

    copos::cli::generate_options gen_opt;
    std::size_t t = 0;
    auto* generate = app.add_subcommand("generate", "emit a random test instance document");
    generate->add_option("kind", gen_opt.kind, "copositive | boundary | At | monomial-op")->required();
    generate->add_option("n", gen_opt.n, "dimension")->required();
    generate->add_option("--seed", gen_opt.seed, "generator seed")->capture_default_str();
    auto* t_opt = generate->add_option("--t", t, "zero diagonal position for kind At (1-based)");
    generate->add_flag("--json", gen_opt.json, "emit a JSON matrix document");

    copos::cli::selftest_options self_opt;
    auto* selftest = app.add_subcommand("selftest", "run the claim suite for a range of dimensions");
    selftest->add_option("range", self_opt.range, "dimension range, e.g. 1..4 or 5")->required();
    selftest->add_option("--seed", self_opt.seed, "seed")->capture_default_str();
    selftest->add_option("--samples", self_opt.samples, "random congruences per dimension")->capture_default_str();
    selftest->add_flag("--json", self_opt.json, "JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : copos::cli::exit_code::failure;
    }

    if (!mode.empty()) {
        check_opt.mode = mode;
        dec_opt.mode = mode;
    }

    if (check->parsed()) {
        return with_input(path, [&](std::istream& in) { return copos::cli::run_check(in, std::cout, std::cerr, check_opt); });
    }
    if (decompose->parsed()) {
        return with_input(path, [&](std::istream& in) { return copos::cli::run_decompose(in, std::cout, std::cerr, dec_opt); });
    }
    if (generate->parsed()) {
        if (t_opt->count() > 0) gen_opt.t = t;
        return copos::cli::run_generate(std::cout, std::cerr, gen_opt);
    }
    return copos::cli::run_selftest(std::cout, std::cerr, self_opt);
}
