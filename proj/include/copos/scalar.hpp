#pragma once

// Scalar policies for the two arithmetic modes.
//
// Exact mode uses GMP rationals (mpq_class) and every comparison is an exact
// equality or sign test. Float mode uses double and every equality/sign test
// goes through a single tolerance, default_tolerance.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace copos {

using rational = mpq_class;

inline constexpr double default_tolerance = 1e-9;

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class dimension_error : public error {
public:
    using error::error;
};

class parse_error : public error {
public:
    using error::error;
};

template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<rational> {
    static constexpr bool exact = true;
    static constexpr const char* mode_name = "exact";

    static int sign(const rational& x) { return sgn(x); }
    static bool is_zero(const rational& x) { return sgn(x) == 0; }
    static bool equal(const rational& a, const rational& b) { return a == b; }
    static bool less(const rational& a, const rational& b) { return a < b; }

    static rational from_int(long v) { return rational(v); }

    static std::string to_string(const rational& x) { return x.get_str(); }

    static double to_double(const rational& x) { return x.get_d(); }

    // Square root when x is the square of a rational.
    static std::optional<rational> sqrt(const rational& x) {
        if (sgn(x) < 0) return std::nullopt;
        const mpz_class& num = x.get_num();
        const mpz_class& den = x.get_den();
        if (mpz_perfect_square_p(num.get_mpz_t()) == 0 ||
            mpz_perfect_square_p(den.get_mpz_t()) == 0) {
            return std::nullopt;
        }
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        rational r(rn, rd);
        r.canonicalize();
        return r;
    }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static constexpr const char* mode_name = "float";
    static constexpr double tolerance = default_tolerance;

    static int sign(double x) { return x > tolerance ? 1 : (x < -tolerance ? -1 : 0); }
    static bool is_zero(double x) { return std::abs(x) <= tolerance; }
    static bool equal(double a, double b) { return std::abs(a - b) <= tolerance; }
    static bool less(double a, double b) { return a < b - tolerance; }

    static double from_int(long v) { return static_cast<double>(v); }

    static std::string to_string(double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }

    static double to_double(double x) { return x; }

    static std::optional<double> sqrt(double x) {
        if (x < -tolerance) return std::nullopt;
        return std::sqrt(std::max(x, 0.0));
    }
};

template <typename T>
concept Scalar = requires(const T& a, const T& b) {
    { scalar_traits<T>::exact } -> std::convertible_to<bool>;
    { scalar_traits<T>::sign(a) } -> std::convertible_to<int>;
    { scalar_traits<T>::equal(a, b) } -> std::convertible_to<bool>;
    { scalar_traits<T>::to_string(a) } -> std::convertible_to<std::string>;
};

template <Scalar T>
int sign(const T& x) {
    return scalar_traits<T>::sign(x);
}

template <Scalar T>
bool is_zero(const T& x) {
    return scalar_traits<T>::is_zero(x);
}

template <Scalar T>
bool is_positive(const T& x) {
    return scalar_traits<T>::sign(x) > 0;
}

template <Scalar T>
bool scalar_equal(const T& a, const T& b) {
    return scalar_traits<T>::equal(a, b);
}

template <Scalar T>
std::string to_string(const T& x) {
    return scalar_traits<T>::to_string(x);
}

namespace detail {

inline bool is_integer_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

// "123.456" or "-0.5" (no exponent) as an exact rational.
inline std::optional<rational> parse_decimal(std::string_view s) {
    const auto dot = s.find('.');
    if (dot == std::string_view::npos) return std::nullopt;
    std::string whole(s.substr(0, dot));
    std::string frac(s.substr(dot + 1));
    if (frac.empty() || !is_integer_text("0" + frac)) return std::nullopt;
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!is_integer_text(whole)) return std::nullopt;
    const bool negative = whole[0] == '-';
    if (whole[0] == '+' || whole[0] == '-') whole.erase(0, 1);
    mpz_class num(whole + frac, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    rational r(negative ? mpz_class(-num) : num, den);
    r.canonicalize();
    return r;
}

}  // namespace detail

/// Parses "p/q", an integer, or a plain decimal such as "0.25" exactly.
inline rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        if (!detail::is_integer_text(num) || !detail::is_integer_text(den)) {
            throw parse_error("malformed rational '" + std::string(text) + "'");
        }
        mpz_class d(std::string(den[0] == '+' ? den.substr(1) : den), 10);
        if (d == 0) throw parse_error("zero denominator in '" + std::string(text) + "'");
        mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
        rational r(n, d);
        r.canonicalize();
        return r;
    }
    if (detail::is_integer_text(text)) {
        return rational(mpz_class(std::string(text[0] == '+' ? text.substr(1) : text), 10));
    }
    if (auto dec = detail::parse_decimal(text)) return *dec;
    throw parse_error("malformed rational '" + std::string(text) + "'");
}

inline double parse_double(std::string_view text) {
    if (text.find('/') != std::string_view::npos) return parse_rational(text).get_d();
    std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw parse_error("malformed number '" + s + "'");
    }
    if (used != s.size()) throw parse_error("malformed number '" + s + "'");
    return v;
}

template <Scalar T>
T parse_scalar(std::string_view text) {
    if constexpr (scalar_traits<T>::exact) {
        return parse_rational(text);
    } else {
        return parse_double(text);
    }
}

template <Scalar To, Scalar From>
To convert_scalar(const From& x) {
    if constexpr (std::same_as<To, From>) {
        return x;
    } else if constexpr (std::same_as<To, double>) {
        return scalar_traits<From>::to_double(x);
    } else {
        // double -> rational is exact on the binary value
        return rational(x);
    }
}

}  // namespace copos
