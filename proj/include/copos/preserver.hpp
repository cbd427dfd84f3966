#pragma once

// Linear preservers of the copositive cone.
//
// A bijective linear map on symmetric matrices maps the copositive cone onto
// itself exactly when it is a monomial congruence x -> m^T x m, with m a
// nonnegative monomial matrix. This header builds monomial congruences,
// decomposes arbitrary operators into (pi, alpha) form, and searches for
// explicit cone violations when the decomposition fails.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "copositivity.hpp"
#include "dense.hpp"
#include "rng.hpp"
#include "scalar.hpp"
#include "symspace.hpp"

namespace copos {

class invalid_congruence : public error {
public:
    using error::error;
};

class pipeline_inconclusive : public error {
public:
    using error::error;
};

/// x -> m^T x m where m(t, pi[t]) = c_t > 0. The scales are stored squared,
/// alpha_t = c_t^2, so that congruences with irrational c_t but a rational
/// operator stay exact.
template <Scalar T>
struct monomial_congruence {
    std::vector<std::size_t> pi;  // 0-based permutation
    std::vector<T> alpha;

    static monomial_congruence from_scales(std::vector<std::size_t> pi, const std::vector<T>& c) {
        monomial_congruence d{std::move(pi), {}};
        d.alpha.reserve(c.size());
        for (const auto& v : c) {
            if (!is_positive(v)) throw invalid_congruence("monomial scales must be strictly positive");
            d.alpha.push_back(v * v);
        }
        return d;
    }

    std::size_t size() const { return pi.size(); }

    /// c_t when alpha_t is the square of a scalar.
    std::optional<T> scale(std::size_t t) const { return scalar_traits<T>::sqrt(alpha[t]); }

    friend bool operator==(const monomial_congruence& a, const monomial_congruence& b) {
        if (a.pi != b.pi || a.alpha.size() != b.alpha.size()) return false;
        for (std::size_t t = 0; t < a.alpha.size(); ++t)
            if (!scalar_equal(a.alpha[t], b.alpha[t])) return false;
        return true;
    }
};

template <Scalar T>
void validate(const monomial_congruence<T>& d) {
    const std::size_t n = d.pi.size();
    if (n == 0) throw invalid_congruence("empty congruence");
    if (d.alpha.size() != n) throw invalid_congruence("pi and alpha have different lengths");
    std::vector<bool> seen(n, false);
    for (auto p : d.pi) {
        if (p >= n || seen[p]) throw invalid_congruence("pi is not a permutation");
        seen[p] = true;
    }
    for (const auto& a : d.alpha)
        if (!is_positive(a)) throw invalid_congruence("monomial scales must be strictly positive");
}

/// One-line cycle notation, 1-based, fixed points omitted; "id" for the identity.
inline std::string cycle_notation(const std::vector<std::size_t>& pi) {
    std::string out;
    std::vector<bool> done(pi.size(), false);
    for (std::size_t s = 0; s < pi.size(); ++s) {
        if (done[s] || pi[s] == s) continue;
        out += '(';
        std::size_t t = s;
        bool first = true;
        while (!done[t]) {
            done[t] = true;
            if (!first) out += ' ';
            out += std::to_string(t + 1);
            first = false;
            t = pi[t];
        }
        out += ')';
    }
    return out.empty() ? "id" : out;
}

/// e_tt -> alpha_t e_{pi(t)pi(t)}, e_ij + e_ji -> c_i c_j (e_{pi(i)pi(j)} + e_{pi(j)pi(i)}).
template <Scalar T>
lin_op<T> monomial_operator(const monomial_congruence<T>& d) {
    validate(d);
    const std::size_t n = d.size();
    const std::size_t big_n = basis_size(n);
    dense_matrix<T> coeffs(big_n, big_n);
    for (std::size_t k = 0; k < big_n; ++k) {
        const auto b = basis_index(n, k);
        const std::size_t target = basis_position(n, d.pi[b.i], d.pi[b.j]);
        if (b.diagonal) {
            coeffs(target, k) = d.alpha[b.i];
        } else {
            const auto gamma = scalar_traits<T>::sqrt(T(d.alpha[b.i] * d.alpha[b.j]));
            if (!gamma) {
                throw invalid_congruence("alpha_" + std::to_string(b.i + 1) + " * alpha_" + std::to_string(b.j + 1) +
                                         " is not a square; the operator is not rational");
            }
            coeffs(target, k) = *gamma;
        }
    }
    return lin_op<T>(n, std::move(coeffs));
}

/// x -> s^T x s for any square s.
template <Scalar T>
lin_op<T> congruence_operator(const dense_matrix<T>& s) {
    if (s.rows() != s.cols() || s.rows() == 0) throw dimension_error("congruence matrix must be square");
    const std::size_t n = s.rows();
    std::vector<sym_matrix<T>> images;
    images.reserve(basis_size(n));
    for (std::size_t k = 0; k < basis_size(n); ++k) images.push_back(basis_element<T>(n, k).congruence(s));
    return op_from_basis_images(n, images);
}

template <Scalar T>
monomial_congruence<T> random_monomial(std::size_t n, std::uint64_t seed) {
    seeded_rng rng(seed);
    auto pi = rng.permutation(n);
    std::vector<T> c;
    for (std::size_t t = 0; t < n; ++t) c.push_back(convert_scalar<T>(rng.fraction(1, 10, 10)));
    return monomial_congruence<T>::from_scales(std::move(pi), c);
}

// ---------------------------------------------------------------------------
// Decomposition

enum class rejection {
    not_bijective,
    diag_image_bad,
    diag_scale_nonpositive,
    pi_not_injective,
    off_diag_image_bad,
    off_diag_scale_mismatch,
};

inline const char* rejection_name(rejection r) {
    switch (r) {
        case rejection::not_bijective: return "not bijective";
        case rejection::diag_image_bad: return "diagonal image not a single diagonal unit";
        case rejection::diag_scale_nonpositive: return "diagonal scale not positive";
        case rejection::pi_not_injective: return "permutation not injective";
        case rejection::off_diag_image_bad: return "off-diagonal image misplaced";
        case rejection::off_diag_scale_mismatch: return "off-diagonal scale mismatch";
    }
    return "unknown";
}

/// Why an operator is not a monomial congruence. `first`/`second` are the
/// 0-based indices named by the reason (t for diagonal reasons, (s, t) or
/// (i, j) for pairs). `witness` is the offending basis image; for
/// not_bijective it is a nonzero matrix in the kernel of the operator.
template <Scalar T>
struct not_monomial {
    rejection reason;
    std::size_t first = 0;
    std::size_t second = 0;
    sym_matrix<T> witness;
};

template <Scalar T>
std::string describe(const not_monomial<T>& r) {
    std::string s = rejection_name(r.reason);
    switch (r.reason) {
        case rejection::not_bijective: break;
        case rejection::diag_image_bad:
        case rejection::diag_scale_nonpositive: s += " at t=" + std::to_string(r.first + 1); break;
        default: s += " at (" + std::to_string(r.first + 1) + "," + std::to_string(r.second + 1) + ")"; break;
    }
    return s;
}

template <Scalar T>
using decomposition = std::variant<monomial_congruence<T>, not_monomial<T>>;

/// Reads (pi, alpha) off the basis images: every e_tt must map to a positive
/// multiple of a diagonal unit, t -> pi(t) must be injective, and every
/// e_ij + e_ji must map to gamma (e_{pi(i)pi(j)} + e_{pi(j)pi(i)}) with
/// gamma > 0 and gamma^2 = alpha_i alpha_j.
template <Scalar T>
decomposition<T> decompose(const lin_op<T>& op) {
    const std::size_t n = op.size();
    if (!inverse(op.coeffs())) {
        auto kernel = null_vector(op.coeffs());
        return not_monomial<T>{rejection::not_bijective, 0, 0, devectorize(n, *kernel)};
    }

    monomial_congruence<T> d;
    d.pi.assign(n, 0);
    d.alpha.assign(n, T(0));
    for (std::size_t t = 0; t < n; ++t) {
        sym_matrix<T> g = op.image(t);
        std::optional<std::size_t> hit;
        bool bad = false;
        for (std::size_t i = 0; i < n && !bad; ++i) {
            for (std::size_t j = i; j < n && !bad; ++j) {
                if (is_zero(g(i, j))) continue;
                if (i != j || hit) bad = true;
                else hit = i;
            }
        }
        if (bad || !hit) return not_monomial<T>{rejection::diag_image_bad, t, t, std::move(g)};
        if (!is_positive(g(*hit, *hit))) {
            return not_monomial<T>{rejection::diag_scale_nonpositive, t, t, std::move(g)};
        }
        d.pi[t] = *hit;
        d.alpha[t] = g(*hit, *hit);
    }

    std::vector<std::optional<std::size_t>> preimage(n);
    for (std::size_t t = 0; t < n; ++t) {
        if (preimage[d.pi[t]]) return not_monomial<T>{rejection::pi_not_injective, *preimage[d.pi[t]], t, op.image(t)};
        preimage[d.pi[t]] = t;
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::size_t k = basis_position(n, i, j);
            const std::size_t target = basis_position(n, d.pi[i], d.pi[j]);
            const std::vector<T> h = op.coeffs().column(k);
            for (std::size_t r = 0; r < h.size(); ++r) {
                if (r != target && !is_zero(h[r])) {
                    return not_monomial<T>{rejection::off_diag_image_bad, i, j, devectorize(n, h)};
                }
            }
            const T& gamma = h[target];
            if (!is_positive(gamma) || !scalar_equal(T(gamma * gamma), T(d.alpha[i] * d.alpha[j]))) {
                return not_monomial<T>{rejection::off_diag_scale_mismatch, i, j, devectorize(n, h)};
            }
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Certification

enum class direction { forward, inverse };

inline const char* direction_name(direction d) { return d == direction::forward ? "forward" : "inverse"; }

template <Scalar T>
struct verdict_preserver {
    monomial_congruence<T> congruence;
};

/// counterexample is copositive, image (under op or its inverse, per dir) is not.
template <Scalar T>
struct verdict_not_preserver {
    sym_matrix<T> counterexample;
    direction dir;
    sym_matrix<T> image;
    not_monomial<T> structure;
};

/// Not a monomial congruence, so not a preserver, but no explicit witness was
/// found within the random budget.
template <Scalar T>
struct verdict_no_witness {
    not_monomial<T> structure;
    std::size_t budget_spent;
};

template <Scalar T>
using verdict = std::variant<verdict_preserver<T>, verdict_not_preserver<T>, verdict_no_witness<T>>;

/// Fixed part of the counterexample corpus, in search order: e_tt, then
/// e_ii + e_jj - e_ij - e_ji, then e_ij + e_ji, then the all-ones matrix, then
/// the Horn matrix when n = 5.
inline std::vector<sym_matrix<rational>> fixed_counterexample_corpus(std::size_t n) {
    std::vector<sym_matrix<rational>> corpus;
    for (std::size_t t = 0; t < n; ++t) corpus.push_back(sym_matrix<rational>::unit(n, t, t));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            sym_matrix<rational> m(n);
            m.set(i, i, rational(1));
            m.set(j, j, rational(1));
            m.set(i, j, rational(-1));
            corpus.push_back(std::move(m));
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) corpus.push_back(sym_matrix<rational>::unit(n, i, j));
    corpus.push_back(sym_matrix<rational>::ones(n));
    if (n == 5) corpus.push_back(horn_matrix());
    return corpus;
}

/// k-th random corpus entry: random_copositive for even k, random_boundary for odd k.
inline sym_matrix<rational> random_corpus_entry(std::size_t n, std::uint64_t seed, std::size_t k) {
    const std::uint64_t s = derive_seed(seed, k);
    if (k % 2 == 0) return random_copositive(n, s);
    return random_boundary(n, s).matrix;
}

/// Preserver when op decomposes as a monomial congruence. Otherwise scans the
/// fixed corpus and then `budget` seeded random copositive matrices, checking
/// each under op and then under op^-1 (when it exists), and returns the first
/// cone violation found.
template <Scalar T>
verdict<T> certify_preserver(const lin_op<T>& op, std::size_t budget, std::uint64_t seed = 0) {
    auto dec = decompose(op);
    if (auto* d = std::get_if<monomial_congruence<T>>(&dec)) return verdict_preserver<T>{std::move(*d)};
    auto structure = std::get<not_monomial<T>>(std::move(dec));

    const std::size_t n = op.size();
    std::optional<lin_op<T>> inv;
    if (auto c = inverse(op.coeffs())) inv = lin_op<T>(n, std::move(*c));

    auto probe = [&](const sym_matrix<rational>& exact) -> std::optional<verdict_not_preserver<T>> {
        sym_matrix<T> a = convert_matrix<T>(exact);
        if (!is_copositive(a)) return std::nullopt;
        sym_matrix<T> fwd = op(a);
        if (!is_copositive(fwd)) return verdict_not_preserver<T>{a, direction::forward, std::move(fwd), structure};
        if (inv) {
            sym_matrix<T> back = (*inv)(a);
            if (!is_copositive(back)) return verdict_not_preserver<T>{a, direction::inverse, std::move(back), structure};
        }
        return std::nullopt;
    };

    for (const auto& a : fixed_counterexample_corpus(n))
        if (auto v = probe(a)) return std::move(*v);
    for (std::size_t k = 0; k < budget; ++k)
        if (auto v = probe(random_corpus_entry(n, seed, k))) return std::move(*v);
    return verdict_no_witness<T>{std::move(structure), budget};
}

// ---------------------------------------------------------------------------
// Sampling pipeline for pi

/// Images of `samples` matrices with a single zero diagonal entry at t share
/// one kernel ray, and that ray is a coordinate vector e_j; returns j.
template <Scalar T>
std::size_t proof_pipeline_pi(const lin_op<T>& op, std::size_t t, std::uint64_t seed, std::size_t samples) {
    const std::size_t n = op.size();
    if (!inverse(op.coeffs())) throw precondition_violated("operator is not invertible");
    if (samples == 0) throw pipeline_inconclusive("no samples drawn");

    std::optional<std::set<support_set>> common;
    for (const auto& a : sample_A_t(n, t, seed, samples)) {
        std::vector<kernel_ray<T>> rays;
        try {
            rays = zero_support_rays(op(convert_matrix<T>(a)));
        } catch (const not_copositive&) {
            throw pipeline_inconclusive("image of a sample is not copositive");
        }
        std::set<support_set> supports;
        for (auto& r : rays) supports.insert(std::move(r.support));
        if (!common) {
            common = std::move(supports);
        } else {
            std::set<support_set> kept;
            for (const auto& s : *common)
                if (supports.count(s)) kept.insert(s);
            common = std::move(kept);
        }
    }
    if (common->size() != 1 || common->begin()->size() != 1) {
        throw pipeline_inconclusive("kernel rays of the sample images do not meet in a single coordinate ray");
    }
    return common->begin()->front();
}

// ---------------------------------------------------------------------------
// Claim suite

struct claim_result {
    std::string id;
    std::string statement;
    bool passed = true;
    std::size_t checks = 0;
    std::string first_failure;
};

struct claim_report {
    std::size_t n = 0;
    std::vector<claim_result> claims;

    bool all_passed() const {
        for (const auto& c : claims)
            if (!c.passed) return false;
        return true;
    }
};

namespace detail {

class claim_recorder {
public:
    claim_recorder(std::string id, std::string statement) {
        result_.id = std::move(id);
        result_.statement = std::move(statement);
    }

    template <typename Fn>
    void check(const std::string& instance, Fn&& fn) {
        ++result_.checks;
        std::string why;
        try {
            if (fn()) return;
            why = "check failed";
        } catch (const std::exception& e) {
            why = e.what();
        }
        if (result_.passed) result_.first_failure = instance + ": " + why;
        result_.passed = false;
    }

    claim_result result() const { return result_; }

private:
    claim_result result_;
};

template <Scalar T>
std::string describe_congruence(const monomial_congruence<T>& d) {
    return "pi=" + cycle_notation(d.pi) + " alpha=" + format_vector(d.alpha);
}

inline bool on_boundary(const sym_matrix<rational>& a) {
    return std::holds_alternative<cone_boundary<rational>>(boundary_status(a));
}

}  // namespace detail

/// Checks the structural claims behind the classification on `samples`
/// random monomial congruences of size n (exact arithmetic).
inline claim_report claim_suite(std::size_t n, std::uint64_t seed, std::size_t samples) {
    if (n == 0) throw dimension_error("claim suite needs n >= 1");
    using R = rational;
    using detail::claim_recorder;
    using detail::on_boundary;

    claim_recorder bijective("bijective", "monomial congruences are bijective with a two-sided inverse");
    claim_recorder boundary("boundary-preserved", "op and op^-1 map boundary matrices to boundary matrices");
    claim_recorder zero_ray("zero-ray", "every boundary matrix has a nonzero nonnegative zero of its form");
    claim_recorder residual("kernel-residual", "a xi = 0 for a positive zero xi of a copositive a");
    claim_recorder at_boundary("At-boundary", "A^t and op(A^t) lie on the boundary");
    claim_recorder span("At-span", "op(A^t) spans a codimension-one subspace");
    claim_recorder shared("shared-kernel", "all matrices in op(A^t) share the same kernel rays");
    claim_recorder pipeline("pipeline-pi", "the shared kernel of op(A^t) is the coordinate ray e_pi(t)");
    claim_recorder normal_form("diagonal-normal-form", "op composed with the inverse congruence fixes every e_tt");
    claim_recorder identity("inverse-identity", "op composed with the inverse congruence is the identity");
    std::optional<claim_recorder> horn;
    if (n == 5) horn.emplace("horn", "the Horn matrix and its images lie on the boundary");

    const std::size_t big_n = basis_size(n);
    const sym_matrix<R> horn_m = horn_matrix();

    for (std::size_t s = 0; s < samples; ++s) {
        const auto d = random_monomial<R>(n, derive_seed(seed, 4 * s));
        const std::string tag = "sample " + std::to_string(s) + " (" + detail::describe_congruence(d) + ")";
        const lin_op<R> op = monomial_operator(d);
        std::optional<lin_op<R>> inv;

        bijective.check(tag, [&] {
            inv = invert(op);
            return compose(*inv, op) == lin_op<R>::identity(n) && compose(op, *inv) == lin_op<R>::identity(n);
        });
        if (!inv) continue;

        const auto bnd = random_boundary(n, derive_seed(seed, 4 * s + 1));
        std::vector<sym_matrix<R>> boundary_corpus{bnd.matrix};
        for (auto& a : sample_A_t(n, s % n, derive_seed(seed, 4 * s + 2), 2)) boundary_corpus.push_back(std::move(a));

        for (const auto& b : boundary_corpus) {
            const std::string inst = tag + " matrix " + format_matrix(b);
            boundary.check(inst, [&] { return on_boundary(b) && on_boundary(op(b)) && on_boundary((*inv)(b)); });
            zero_ray.check(inst, [&] {
                return !zero_support_rays(b).empty() && !zero_support_rays(op(b)).empty() &&
                       !zero_support_rays((*inv)(b)).empty();
            });
        }
        residual.check(tag + " matrix " + format_matrix(bnd.matrix) + " xi " + format_vector(bnd.xi), [&] {
            for (const auto& v : kernel_residual(bnd.matrix, bnd.xi))
                if (!is_zero(v)) return false;
            return true;
        });
        if (horn) {
            horn->check(tag, [&] { return on_boundary(horn_m) && on_boundary(op(horn_m)) && on_boundary((*inv)(horn_m)); });
        }

        const auto dec = decompose(op);
        const auto* found = std::get_if<monomial_congruence<R>>(&dec);

        for (std::size_t t = 0; t < n; ++t) {
            const std::uint64_t at_seed = derive_seed(seed, 4 * s + 3) + t;
            const auto at = sample_A_t(n, t, at_seed, 4);
            const std::string inst = tag + " t=" + std::to_string(t + 1);
            at_boundary.check(inst, [&] {
                for (const auto& a : at)
                    if (!on_boundary(a) || !on_boundary(op(a))) return false;
                return true;
            });
            shared.check(inst, [&] {
                std::optional<std::vector<support_set>> first;
                for (const auto& a : at) {
                    std::vector<support_set> sup;
                    for (const auto& r : zero_support_rays(op(a))) sup.push_back(r.support);
                    if (!first) first = sup;
                    else if (*first != sup) return false;
                }
                return true;
            });
            pipeline.check(inst, [&] { return found && proof_pipeline_pi(op, t, at_seed, 8) == found->pi[t]; });
            if (s == 0 || t == s % n) {
                span.check(inst, [&] {
                    const auto many = sample_A_t(n, t, at_seed ^ 0x5a5aULL, big_n);
                    dense_matrix<R> cols(big_n, many.size());
                    for (std::size_t k = 0; k < many.size(); ++k) {
                        const auto v = vectorize(op(many[k]));
                        for (std::size_t r = 0; r < big_n; ++r) cols(r, k) = v[r];
                    }
                    return rank(cols) == big_n - 1;
                });
            }
        }

        std::optional<lin_op<R>> psi;
        normal_form.check(tag, [&] {
            if (!found) return false;
            psi = compose(op, invert(monomial_operator(*found)));
            for (std::size_t t = 0; t < n; ++t) {
                const sym_matrix<R> g = (*psi)(sym_matrix<R>::unit(n, t, t));
                for (std::size_t i = 0; i < n; ++i) {
                    if (g(i, i) != (i == t ? R(1) : R(0))) return false;
                    for (std::size_t j = i + 1; j < n; ++j)
                        if (sgn(g(i, j)) < 0) return false;
                }
            }
            return true;
        });
        identity.check(tag, [&] { return psi && *psi == lin_op<R>::identity(n) && *found == d; });
    }

    claim_report report;
    report.n = n;
    for (auto* c : {&bijective, &boundary, &zero_ray, &residual, &at_boundary, &span, &shared, &pipeline, &normal_form,
                    &identity})
        report.claims.push_back(c->result());
    if (horn) report.claims.push_back(horn->result());
    return report;
}

}  // namespace copos
