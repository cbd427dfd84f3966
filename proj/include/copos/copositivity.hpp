#pragma once

// Exact copositivity via minimization of x^T a x over the standard simplex.
//
// For every nonempty support s the bordered stationarity system
//
//     [ 2 a(s|s)  1 ] [ x_s    ]   [ 0 ]
//     [ 1^T       0 ] [ lambda ] = [ 1 ]
//
// is solved; solutions with x_s > 0 are candidates and the smallest value wins.
// Singular systems are skipped. This loses nothing: a global minimizer of
// minimal support is stationary on its face, and if its bordered system had a
// null vector (d, mu) then d != 0, 1^T d = 0 and the form is constant along d,
// so moving along d until a coordinate vanishes gives a global minimizer with
// smaller support. Supports of size one always give a nonsingular system, so
// every vertex is a candidate.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dense.hpp"
#include "rng.hpp"
#include "scalar.hpp"
#include "symspace.hpp"

namespace copos {

inline constexpr std::size_t default_dimension_cap = 12;

class not_copositive : public error {
public:
    using error::error;
};

class precondition_violated : public error {
public:
    using error::error;
};

using support_set = std::vector<std::size_t>;  // sorted, 0-based

template <Scalar T>
struct simplex_minimum {
    T value;
    std::vector<T> minimizer;
    support_set support;
    T multiplier;  // lambda of the bordered system; equals -2 * value
};

template <Scalar T>
struct kernel_ray {
    support_set support;
    std::vector<T> representative;  // nonnegative, sums to 1, zero exactly off support
};

template <Scalar T>
struct cone_outside {
    std::vector<T> witness;
    T value;
};

template <Scalar T>
struct cone_boundary {
    kernel_ray<T> ray;
};

template <Scalar T>
struct cone_interior {
    T value;
};

template <Scalar T>
using cone_status = std::variant<cone_outside<T>, cone_boundary<T>, cone_interior<T>>;

template <Scalar T>
std::string status_name(const cone_status<T>& s) {
    switch (s.index()) {
        case 0: return "outside";
        case 1: return "boundary";
        default: return "interior";
    }
}

template <Scalar T>
struct copositivity_result {
    bool copositive;
    std::optional<std::vector<T>> witness;

    explicit operator bool() const { return copositive; }
};

namespace detail {

inline support_set support_of_mask(std::uint64_t mask, std::size_t n) {
    support_set s;
    for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::uint64_t{1} << i)) s.push_back(i);
    return s;
}

template <Scalar T>
bool lex_less(const std::vector<T>& a, const std::vector<T>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const T& x, const T& y) { return scalar_traits<T>::less(x, y); });
}

template <Scalar T>
bool candidate_better(const simplex_minimum<T>& c, const simplex_minimum<T>& best) {
    if (scalar_traits<T>::less(c.value, best.value)) return true;
    if (!scalar_equal(c.value, best.value)) return false;
    if (c.support != best.support) return c.support < best.support;
    return lex_less(c.minimizer, best.minimizer);
}

inline void check_dimension(std::size_t n, std::size_t cap) {
    if (n == 0) throw dimension_error("matrix must be at least 1x1");
    if (n > cap || n >= 63) {
        throw dimension_error("dimension " + std::to_string(n) + " exceeds the cap of " + std::to_string(cap));
    }
}

}  // namespace detail

/// Calls fn(candidate) for every support whose bordered system is nonsingular
/// and whose solution is strictly positive on the support.
template <Scalar T, typename Fn>
void for_each_face_candidate(const sym_matrix<T>& a, Fn&& fn, std::size_t dimension_cap = default_dimension_cap) {
    const std::size_t n = a.size();
    detail::check_dimension(n, dimension_cap);
    const std::uint64_t masks = std::uint64_t{1} << n;
    for (std::uint64_t mask = 1; mask < masks; ++mask) {
        support_set support = detail::support_of_mask(mask, n);
        const std::size_t k = support.size();
        dense_matrix<T> bordered(k + 1, k + 1);
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < k; ++c) bordered(r, c) = T(2) * a(support[r], support[c]);
            bordered(r, k) = T(1);
            bordered(k, r) = T(1);
        }
        std::vector<T> rhs(k + 1, T(0));
        rhs[k] = T(1);
        auto sol = solve(bordered, rhs);
        if (!sol) continue;
        bool positive = true;
        for (std::size_t r = 0; r < k && positive; ++r) positive = is_positive((*sol)[r]);
        if (!positive) continue;

        simplex_minimum<T> cand;
        cand.minimizer.assign(n, T(0));
        for (std::size_t r = 0; r < k; ++r) cand.minimizer[support[r]] = (*sol)[r];
        cand.multiplier = (*sol)[k];
        cand.value = a.quadratic_form(cand.minimizer);
        cand.support = std::move(support);
        fn(std::move(cand));
    }
}

/// Global minimum of x^T a x over the standard simplex. Ties go to the
/// lexicographically smallest support, then the smallest minimizer.
template <Scalar T>
simplex_minimum<T> simplex_minimize(const sym_matrix<T>& a, std::size_t dimension_cap = default_dimension_cap) {
    std::optional<simplex_minimum<T>> best;
    for_each_face_candidate(
        a,
        [&](simplex_minimum<T>&& c) {
            if (!best || detail::candidate_better(c, *best)) best = std::move(c);
        },
        dimension_cap);
    // vertices always yield candidates, so best is set
    return std::move(*best);
}

template <Scalar T>
copositivity_result<T> is_copositive(const sym_matrix<T>& a) {
    auto m = simplex_minimize(a);
    if (sign(m.value) >= 0) return {true, std::nullopt};
    return {false, std::move(m.minimizer)};
}

template <Scalar T>
cone_status<T> boundary_status(const sym_matrix<T>& a) {
    auto m = simplex_minimize(a);
    const int s = sign(m.value);
    if (s < 0) return cone_outside<T>{std::move(m.minimizer), std::move(m.value)};
    if (s > 0) return cone_interior<T>{std::move(m.value)};
    return cone_boundary<T>{kernel_ray<T>{std::move(m.support), std::move(m.minimizer)}};
}

/// One zero of the form per support found by the face enumeration, sorted by
/// support. Throws not_copositive when a has a negative simplex minimum.
template <Scalar T>
std::vector<kernel_ray<T>> zero_support_rays(const sym_matrix<T>& a) {
    std::vector<kernel_ray<T>> rays;
    bool negative = false;
    for_each_face_candidate(a, [&](simplex_minimum<T>&& c) {
        const int s = sign(c.value);
        if (s < 0) negative = true;
        if (s == 0) rays.push_back({std::move(c.support), std::move(c.minimizer)});
    });
    if (negative) throw not_copositive("matrix is not copositive; its zero set is not a kernel");
    std::sort(rays.begin(), rays.end(), [](const kernel_ray<T>& x, const kernel_ray<T>& y) {
        if (x.support != y.support) return x.support < y.support;
        return detail::lex_less(x.representative, y.representative);
    });
    rays.erase(std::unique(rays.begin(), rays.end(),
                           [](const kernel_ray<T>& x, const kernel_ray<T>& y) { return x.support == y.support; }),
               rays.end());
    return rays;
}

/// a * xi for copositive a and strictly positive xi with xi^T a xi = 0. Such
/// xi is an interior local minimizer of the form, so the result must vanish.
template <Scalar T>
std::vector<T> kernel_residual(const sym_matrix<T>& a, const std::vector<T>& xi) {
    if (xi.size() != a.size()) throw dimension_error("xi has wrong length");
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (!is_positive(xi[i])) {
            throw precondition_violated("xi is not strictly positive at coordinate " + std::to_string(i + 1));
        }
    }
    const T q = a.quadratic_form(xi);
    if (!is_zero(q)) throw precondition_violated("xi^T a xi = " + to_string(q) + " is not zero");
    if (!is_copositive(a)) throw precondition_violated("a is not copositive");
    return a * xi;
}

// ---------------------------------------------------------------------------
// Instance generators (exact rationals)

/// The 5x5 Horn matrix.
inline sym_matrix<rational> horn_matrix() {
    const int h[5][5] = {{1, -1, 1, 1, -1},
                         {-1, 1, -1, 1, 1},
                         {1, -1, 1, -1, 1},
                         {1, 1, -1, 1, -1},
                         {-1, 1, 1, -1, 1}};
    sym_matrix<rational> m(5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i; j < 5; ++j) m.set(i, j, rational(h[i][j]));
    return m;
}

/// `count` matrices with a zero at (t, t) (0-based) and positive rationals
/// p/q, p and q uniform in [1, 100], everywhere else.
inline std::vector<sym_matrix<rational>> sample_A_t(std::size_t n, std::size_t t, std::uint64_t seed,
                                                    std::size_t count) {
    if (t >= n) throw dimension_error("index t out of range");
    seeded_rng rng(seed);
    std::vector<sym_matrix<rational>> out;
    out.reserve(count);
    for (std::size_t c = 0; c < count; ++c) {
        sym_matrix<rational> m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                if (i != t || j != t) m.set(i, j, rng.fraction(1, 100, 100));
        out.push_back(std::move(m));
    }
    return out;
}

/// d^{-1} (p^T p + r) d^{-1}: p is a random integer matrix with min(n, 3) rows
/// and entries in [-3, 3], r a random entrywise nonnegative integer matrix
/// (about half its entries zero, the rest in [1, 10]), d a random positive
/// integer diagonal with entries in [1, 10]. Always copositive; numerators are
/// at most 37 and denominators at most 100. For n >= 5 this misses copositive
/// matrices such as the Horn matrix.
inline sym_matrix<rational> random_copositive(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw dimension_error("matrix must be at least 1x1");
    seeded_rng rng(seed);
    const std::size_t k = std::min<std::size_t>(n, 3);
    std::vector<std::vector<long>> p(k, std::vector<long>(n));
    for (auto& row : p)
        for (auto& v : row) v = rng.uniform(-3, 3);
    std::vector<long> d(n);
    for (auto& v : d) v = rng.uniform(1, 10);
    sym_matrix<rational> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            long g = 0;
            for (const auto& row : p) g += row[i] * row[j];
            if (rng.uniform(0, 1) == 1) g += rng.uniform(1, 10);
            rational v(g, d[i] * d[j]);
            v.canonicalize();
            m.set(i, j, v);
        }
    }
    return m;
}

template <Scalar T>
struct boundary_instance {
    sym_matrix<T> matrix;
    std::vector<T> xi;  // strictly positive, xi^T matrix xi = 0
};

/// q^T q for the rows of q.
inline sym_matrix<rational> gram_matrix(const std::vector<std::vector<rational>>& rows, std::size_t n) {
    sym_matrix<rational> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            rational s(0);
            for (const auto& r : rows) s += r[i] * r[j];
            a.set(i, j, s);
        }
    }
    return a;
}

/// A positive semidefinite a with one-dimensional kernel spanned by a random
/// strictly positive integer vector xi (entries in [1, 10]), so a lies on the
/// boundary of the copositive cone. a = d^{-1} q^T q d^{-1} with d = diag(xi)
/// and q made of n - 1 random integer rows with entries in [-2, 2] summing to
/// zero, redrawn until q has rank n - 1. For n = 1, a = 0.
inline boundary_instance<rational> random_boundary(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw dimension_error("matrix must be at least 1x1");
    seeded_rng rng(seed);
    std::vector<rational> xi(n);
    for (auto& x : xi) x = rng.uniform(1, 10);

    sym_matrix<rational> g(n);
    while (n > 1) {
        std::vector<std::vector<rational>> rows;
        while (rows.size() + 1 < n) {
            std::vector<rational> r(n);
            long sum = 0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const long v = rng.uniform(-2, 2);
                r[i] = v;
                sum += v;
            }
            if (sum < -2 || sum > 2) continue;
            r[n - 1] = -sum;
            if (std::all_of(r.begin(), r.end(), [](const rational& v) { return sgn(v) == 0; })) continue;
            rows.push_back(std::move(r));
        }
        g = gram_matrix(rows, n);
        dense_matrix<rational> dg(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) dg(i, j) = g(i, j);
        if (rank(dg) + 1 == n) break;
    }
    sym_matrix<rational> a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a.set(i, j, g(i, j) / (xi[i] * xi[j]));
    return {std::move(a), std::move(xi)};
}

}  // namespace copos
