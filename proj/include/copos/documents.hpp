#pragma once

// Matrix and operator documents.
//
// Matrix documents come as plain text (first token n, then n rows of n
// entries) or JSON {"n", "mode", "entries"} with row-major entries. Operator
// documents are JSON only: {"n", "basis", "coeffs"} with the N x N coefficient
// matrix row-major. Exact scalars are written as strings "p/q" in lowest terms
// (or "p" for integers); float scalars as JSON numbers.

#include <cctype>
#include <cstddef>
#include <istream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "copositivity.hpp"
#include "scalar.hpp"
#include "symspace.hpp"

namespace copos::io {

using json = nlohmann::json;

inline constexpr const char* basis_tag = "diag-then-offdiag-lex";

class document_error : public error {
public:
    using error::error;
};

enum class mode { exact, floating };

inline mode parse_mode(const std::string& s) {
    if (s == "exact") return mode::exact;
    if (s == "float") return mode::floating;
    throw document_error("unknown mode '" + s + "' (expected exact or float)");
}

inline const char* mode_name(mode m) { return m == mode::exact ? "exact" : "float"; }

/// Entries are kept as text until the arithmetic mode is known.
struct matrix_document {
    std::size_t n = 0;
    std::optional<mode> declared_mode;
    std::vector<std::string> entries;
};

struct operator_document {
    std::size_t n = 0;
    std::optional<mode> declared_mode;
    std::vector<std::string> coeffs;
};

namespace detail {

inline std::string read_all(std::istream& in) {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline bool looks_like_json(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{';
    }
    return false;
}

inline std::size_t read_dimension(const json& doc) {
    if (!doc.contains("n") || !doc["n"].is_number_integer()) throw document_error("field 'n' must be an integer");
    const auto n = doc["n"].get<long long>();
    if (n < 1 || n > static_cast<long long>(default_dimension_cap)) {
        throw document_error("n = " + std::to_string(n) + " outside 1.." + std::to_string(default_dimension_cap));
    }
    return static_cast<std::size_t>(n);
}

inline std::optional<mode> read_mode(const json& doc) {
    if (!doc.contains("mode")) return std::nullopt;
    if (!doc["mode"].is_string()) throw document_error("field 'mode' must be a string");
    return parse_mode(doc["mode"].get<std::string>());
}

inline std::string scalar_token(const json& v, const std::optional<mode>& m) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return v.dump();
    if (v.is_number_float()) {
        if (m != mode::floating) {
            throw document_error("non-integer JSON number " + v.dump() + " in exact document; encode it as \"p/q\"");
        }
        return v.dump();
    }
    throw document_error("entry " + v.dump() + " is not a number or rational string");
}

inline std::vector<std::string> read_scalars(const json& doc, const char* field, std::size_t count,
                                             const std::optional<mode>& m) {
    if (!doc.contains(field) || !doc[field].is_array()) {
        throw document_error(std::string("field '") + field + "' must be an array");
    }
    const json& arr = doc[field];
    if (arr.size() != count) {
        throw document_error(std::string("field '") + field + "' has " + std::to_string(arr.size()) +
                             " entries, expected " + std::to_string(count));
    }
    std::vector<std::string> out;
    out.reserve(count);
    for (const auto& v : arr) out.push_back(scalar_token(v, m));
    return out;
}

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw document_error(std::string("invalid JSON: ") + e.what());
    }
}

template <Scalar T>
json scalar_json(const T& v) {
    if constexpr (scalar_traits<T>::exact) {
        return v.get_str();
    } else {
        return v;
    }
}

}  // namespace detail

inline matrix_document parse_matrix_document(const std::string& text) {
    matrix_document doc;
    if (detail::looks_like_json(text)) {
        const json j = detail::parse_json(text);
        if (!j.is_object()) throw document_error("matrix document must be a JSON object");
        doc.n = detail::read_dimension(j);
        doc.declared_mode = detail::read_mode(j);
        doc.entries = detail::read_scalars(j, "entries", doc.n * doc.n, doc.declared_mode);
        return doc;
    }
    std::istringstream in(text);
    std::string tok;
    if (!(in >> tok)) throw document_error("empty matrix document");
    long long n = 0;
    try {
        std::size_t used = 0;
        n = std::stoll(tok, &used);
        if (used != tok.size()) throw document_error("");
    } catch (const std::exception&) {
        throw document_error("first token '" + tok + "' is not a dimension");
    }
    if (n < 1 || n > static_cast<long long>(default_dimension_cap)) {
        throw document_error("n = " + std::to_string(n) + " outside 1.." + std::to_string(default_dimension_cap));
    }
    doc.n = static_cast<std::size_t>(n);
    while (in >> tok) doc.entries.push_back(tok);
    if (doc.entries.size() != doc.n * doc.n) {
        throw document_error("expected " + std::to_string(doc.n * doc.n) + " entries, got " +
                             std::to_string(doc.entries.size()));
    }
    return doc;
}

inline matrix_document read_matrix_document(std::istream& in) { return parse_matrix_document(detail::read_all(in)); }

inline operator_document parse_operator_document(const std::string& text) {
    if (!detail::looks_like_json(text)) throw document_error("operator documents must be JSON objects");
    const json j = detail::parse_json(text);
    operator_document doc;
    doc.n = detail::read_dimension(j);
    if (!j.contains("basis") || !j["basis"].is_string() || j["basis"].get<std::string>() != basis_tag) {
        throw document_error(std::string("field 'basis' must be \"") + basis_tag + "\"");
    }
    doc.declared_mode = detail::read_mode(j);
    const std::size_t big_n = basis_size(doc.n);
    doc.coeffs = detail::read_scalars(j, "coeffs", big_n * big_n, doc.declared_mode);
    return doc;
}

inline operator_document read_operator_document(std::istream& in) {
    return parse_operator_document(detail::read_all(in));
}

template <Scalar T>
sym_matrix<T> to_matrix(const matrix_document& doc) {
    std::vector<T> entries;
    entries.reserve(doc.entries.size());
    for (const auto& e : doc.entries) entries.push_back(parse_scalar<T>(e));
    return sym_matrix<T>::from_row_major(doc.n, entries);
}

template <Scalar T>
lin_op<T> to_operator(const operator_document& doc) {
    const std::size_t big_n = basis_size(doc.n);
    dense_matrix<T> c(big_n, big_n);
    for (std::size_t r = 0; r < big_n; ++r)
        for (std::size_t k = 0; k < big_n; ++k) c(r, k) = parse_scalar<T>(doc.coeffs[r * big_n + k]);
    return lin_op<T>(doc.n, std::move(c));
}

template <Scalar T>
json matrix_json(const sym_matrix<T>& a) {
    json entries = json::array();
    for (const auto& v : a.row_major()) entries.push_back(detail::scalar_json(v));
    return json{{"n", a.size()}, {"mode", scalar_traits<T>::mode_name}, {"entries", std::move(entries)}};
}

template <Scalar T>
json vector_json(const std::vector<T>& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(detail::scalar_json(x));
    return arr;
}

template <Scalar T>
json operator_json(const lin_op<T>& op) {
    const std::size_t big_n = op.basis_dimension();
    json coeffs = json::array();
    for (std::size_t r = 0; r < big_n; ++r)
        for (std::size_t k = 0; k < big_n; ++k) coeffs.push_back(detail::scalar_json(op.coeffs()(r, k)));
    return json{{"n", op.size()},
                {"basis", basis_tag},
                {"mode", scalar_traits<T>::mode_name},
                {"coeffs", std::move(coeffs)}};
}

/// Plain-text matrix: n on the first line, then one row per line.
template <Scalar T>
std::string matrix_text(const sym_matrix<T>& a) {
    std::string out = std::to_string(a.size()) + "\n";
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (j) out += ' ';
            out += to_string(a(i, j));
        }
        out += '\n';
    }
    return out;
}

}  // namespace copos::io
