#pragma once

// Command implementations behind the `copos` executable. Each command reads
// from and writes to the given streams and returns the process exit code.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <variant>

#include "copositivity.hpp"
#include "documents.hpp"
#include "preserver.hpp"
#include "symspace.hpp"

namespace copos::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int refuted = 1;  // outside the cone / not a preserver, with witness
inline constexpr int failure = 2;  // I/O, parse or validation error
inline constexpr int no_witness = 3;
}  // namespace exit_code

struct check_options {
    std::optional<std::string> mode;
    bool json = false;
};

struct decompose_options {
    std::optional<std::string> mode;
    bool json = false;
    std::size_t budget = 500;
    std::uint64_t seed = 0;
};

struct generate_options {
    std::string kind;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::optional<std::size_t> t;  // 1-based
    bool json = false;
};

struct selftest_options {
    std::string range;
    std::uint64_t seed = 0;
    std::size_t samples = 25;
    bool json = false;
};

namespace detail {

inline io::mode resolve_mode(const std::optional<std::string>& flag, const std::optional<io::mode>& declared) {
    if (flag) return io::parse_mode(*flag);
    return declared.value_or(io::mode::exact);
}

inline std::string format_support(const support_set& s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(s[k] + 1);
    }
    return out + "}";
}

inline io::json support_json(const support_set& s) {
    io::json arr = io::json::array();
    for (auto i : s) arr.push_back(i + 1);
    return arr;
}

template <Scalar T>
int check_matrix(const sym_matrix<T>& a, std::ostream& out, bool json) {
    const simplex_minimum<T> m = simplex_minimize(a);
    const cone_status<T> status = boundary_status(a);
    const std::string name = status_name(status);
    if (json) {
        io::json j{{"status", name},
                   {"mode", scalar_traits<T>::mode_name},
                   {"min", io::detail::scalar_json(m.value)},
                   {"minimizer", io::vector_json(m.minimizer)},
                   {"support", support_json(m.support)},
                   {"multiplier", io::detail::scalar_json(m.multiplier)}};
        if (const auto* o = std::get_if<cone_outside<T>>(&status)) j["witness"] = io::vector_json(o->witness);
        if (const auto* b = std::get_if<cone_boundary<T>>(&status)) {
            j["ray"] = {{"support", support_json(b->ray.support)},
                        {"representative", io::vector_json(b->ray.representative)}};
        }
        out << j.dump(2) << '\n';
    } else if (const auto* o = std::get_if<cone_outside<T>>(&status)) {
        out << "outside, witness " << format_vector(o->witness) << '\n';
        out << "min " << to_string(m.value) << '\n';
    } else if (const auto* b = std::get_if<cone_boundary<T>>(&status)) {
        out << "boundary, min " << to_string(m.value) << '\n';
        out << "ray support " << format_support(b->ray.support) << " representative "
            << format_vector(b->ray.representative) << '\n';
    } else {
        out << "interior, min " << to_string(m.value) << '\n';
        out << "minimizer " << format_vector(m.minimizer) << " support " << format_support(m.support) << '\n';
    }
    return std::holds_alternative<cone_outside<T>>(status) ? exit_code::refuted : exit_code::ok;
}

inline std::string alpha_text(const std::vector<std::string>& alpha) {
    std::string out;
    for (std::size_t k = 0; k < alpha.size(); ++k) out += (k ? " " : "") + alpha[k];
    return out;
}

template <Scalar T>
int decompose_operator(const lin_op<T>& op, const decompose_options& opt, std::ostream& out) {
    const verdict<T> v = certify_preserver(op, opt.budget, opt.seed);
    if (const auto* p = std::get_if<verdict_preserver<T>>(&v)) {
        const auto& d = p->congruence;
        if (opt.json) {
            io::json pi = io::json::array();
            for (auto x : d.pi) pi.push_back(x + 1);
            out << io::json{{"verdict", "preserver"},
                            {"pi", pi},
                            {"cycles", cycle_notation(d.pi)},
                            {"alpha", io::vector_json(d.alpha)}}
                       .dump(2)
                << '\n';
        } else {
            out << "preserver, pi=" << cycle_notation(d.pi) << ", alpha=" << format_vector(d.alpha) << '\n';
        }
        return exit_code::ok;
    }
    if (const auto* np = std::get_if<verdict_not_preserver<T>>(&v)) {
        if (opt.json) {
            out << io::json{{"verdict", "not_preserver"},
                            {"reason", describe(np->structure)},
                            {"direction", direction_name(np->dir)},
                            {"counterexample", io::matrix_json(np->counterexample)},
                            {"image", io::matrix_json(np->image)}}
                       .dump(2)
                << '\n';
        } else {
            out << "not preserver, " << describe(np->structure) << '\n';
            out << "counterexample " << format_matrix(np->counterexample) << '\n';
            out << "direction " << direction_name(np->dir) << '\n';
            out << "image " << format_matrix(np->image) << " is not copositive\n";
        }
        return exit_code::refuted;
    }
    const auto& nw = std::get<verdict_no_witness<T>>(v);
    if (opt.json) {
        out << io::json{{"verdict", "not_monomial_no_witness"},
                        {"reason", describe(nw.structure)},
                        {"budget_spent", nw.budget_spent}}
                   .dump(2)
            << '\n';
    } else {
        out << "not preserver (no witness within budget " << nw.budget_spent << "), " << describe(nw.structure)
            << '\n';
    }
    return exit_code::no_witness;
}

inline std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
    auto number = [&](const std::string& s) -> std::size_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw io::document_error("invalid n-range '" + text + "'");
        }
        return static_cast<std::size_t>(std::stoul(s));
    };
    const auto dots = text.find("..");
    std::size_t lo, hi;
    if (dots == std::string::npos) {
        lo = hi = number(text);
    } else {
        lo = number(text.substr(0, dots));
        hi = number(text.substr(dots + 2));
    }
    if (lo < 1 || hi < lo || hi > default_dimension_cap) {
        throw io::document_error("n-range '" + text + "' must satisfy 1 <= lo <= hi <= " +
                                 std::to_string(default_dimension_cap));
    }
    return {lo, hi};
}

}  // namespace detail

inline int run_check(std::istream& in, std::ostream& out, std::ostream& err, const check_options& opt) {
    try {
        const io::matrix_document doc = io::read_matrix_document(in);
        if (detail::resolve_mode(opt.mode, doc.declared_mode) == io::mode::exact) {
            return detail::check_matrix(io::to_matrix<rational>(doc), out, opt.json);
        }
        return detail::check_matrix(io::to_matrix<double>(doc), out, opt.json);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::failure;
    }
}

inline int run_decompose(std::istream& in, std::ostream& out, std::ostream& err, const decompose_options& opt) {
    try {
        const io::operator_document doc = io::read_operator_document(in);
        if (detail::resolve_mode(opt.mode, doc.declared_mode) == io::mode::exact) {
            return detail::decompose_operator(io::to_operator<rational>(doc), opt, out);
        }
        return detail::decompose_operator(io::to_operator<double>(doc), opt, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::failure;
    }
}

inline int run_generate(std::ostream& out, std::ostream& err, const generate_options& opt) {
    try {
        if (opt.n < 1 || opt.n > default_dimension_cap) {
            throw io::document_error("n must be in 1.." + std::to_string(default_dimension_cap));
        }
        auto emit = [&](const sym_matrix<rational>& a, io::json extra = {}) {
            if (opt.json) {
                io::json j = io::matrix_json(a);
                if (extra.is_object()) j.update(extra);
                out << j.dump() << '\n';
            } else {
                out << io::matrix_text(a);
            }
        };
        if (opt.kind == "copositive") {
            emit(random_copositive(opt.n, opt.seed));
        } else if (opt.kind == "boundary") {
            const auto b = random_boundary(opt.n, opt.seed);
            emit(b.matrix, io::json{{"xi", io::vector_json(b.xi)}});
        } else if (opt.kind == "At") {
            if (!opt.t) throw io::document_error("kind At requires --t");
            if (*opt.t < 1 || *opt.t > opt.n) throw io::document_error("--t must be in 1..n");
            emit(sample_A_t(opt.n, *opt.t - 1, opt.seed, 1).front());
        } else if (opt.kind == "monomial-op") {
            out << io::operator_json(monomial_operator(random_monomial<rational>(opt.n, opt.seed))).dump() << '\n';
        } else {
            throw io::document_error("unknown kind '" + opt.kind + "' (copositive, boundary, At, monomial-op)");
        }
        return exit_code::ok;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::failure;
    }
}

inline int run_selftest(std::ostream& out, std::ostream& err, const selftest_options& opt) {
    std::pair<std::size_t, std::size_t> range;
    try {
        range = detail::parse_range(opt.range);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::failure;
    }
    bool all = true;
    io::json reports = io::json::array();
    if (!opt.json) out << "n   claim                 result  checks  statement\n";
    for (std::size_t n = range.first; n <= range.second; ++n) {
        const claim_report report = claim_suite(n, opt.seed, opt.samples);
        all = all && report.all_passed();
        for (const auto& c : report.claims) {
            if (opt.json) {
                reports.push_back({{"n", n},
                                   {"claim", c.id},
                                   {"statement", c.statement},
                                   {"passed", c.passed},
                                   {"checks", c.checks},
                                   {"first_failure", c.first_failure}});
                continue;
            }
            std::string row = std::to_string(n);
            row.resize(4, ' ');
            std::string id = c.id;
            id.resize(22, ' ');
            std::string result = c.passed ? "pass" : "FAIL";
            result.resize(8, ' ');
            std::string checks = std::to_string(c.checks);
            checks.resize(8, ' ');
            out << row << id << result << checks << c.statement << '\n';
            if (!c.passed) out << "    first failure: " << c.first_failure << '\n';
        }
    }
    if (opt.json) out << reports.dump(2) << '\n';
    return all ? exit_code::ok : exit_code::refuted;
}

}  // namespace copos::cli
