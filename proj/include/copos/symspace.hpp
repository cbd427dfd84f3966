#pragma once

// The space of symmetric n x n matrices, its canonical basis, and linear
// operators on it.
//
// Basis order: e_11, ..., e_nn, then e_ij + e_ji for i < j in lexicographic
// (i, j) order, N = n(n+1)/2 elements in total. The coordinate of e_ij + e_ji
// is the raw entry a_ij, so congruence operators have rational coefficients.
// Indices are 0-based in this API and 1-based in all text I/O.

#include <cstddef>
#include <string>
#include <vector>

#include "dense.hpp"
#include "scalar.hpp"

namespace copos {

class asymmetric_matrix : public error {
public:
    using error::error;
};

class singular_operator : public error {
public:
    using error::error;
};

template <Scalar T>
class sym_matrix {
public:
    using value_type = T;

    sym_matrix() = default;
    explicit sym_matrix(std::size_t n) : n_(n), data_(n * n, T(0)) {}

    static sym_matrix from_rows(const std::vector<std::vector<T>>& rows) {
        const std::size_t n = rows.size();
        sym_matrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw dimension_error("row " + std::to_string(i + 1) + " has wrong length");
            for (std::size_t j = 0; j < n; ++j) m.data_[i * n + j] = rows[i][j];
        }
        m.check_symmetric();
        return m;
    }

    static sym_matrix from_row_major(std::size_t n, const std::vector<T>& entries) {
        if (entries.size() != n * n) {
            throw dimension_error("expected " + std::to_string(n * n) + " entries, got " +
                                  std::to_string(entries.size()));
        }
        sym_matrix m(n);
        m.data_ = entries;
        m.check_symmetric();
        return m;
    }

    static sym_matrix identity(std::size_t n) {
        sym_matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, T(1));
        return m;
    }

    static sym_matrix ones(std::size_t n) {
        sym_matrix m(n);
        for (auto& v : m.data_) v = T(1);
        return m;
    }

    /// e_ii for i == j, otherwise e_ij + e_ji.
    static sym_matrix unit(std::size_t n, std::size_t i, std::size_t j) {
        sym_matrix m(n);
        m.set(i, j, T(1));
        return m;
    }

    std::size_t size() const { return n_; }

    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    /// Writes both (i, j) and (j, i).
    void set(std::size_t i, std::size_t j, const T& v) {
        data_[i * n_ + j] = v;
        data_[j * n_ + i] = v;
    }

    const std::vector<T>& row_major() const { return data_; }

    T quadratic_form(const std::vector<T>& x) const {
        check_vector(x);
        T sum(0);
        for (std::size_t i = 0; i < n_; ++i) {
            if (is_zero(x[i]) && scalar_traits<T>::exact) continue;
            T row(0);
            for (std::size_t j = 0; j < n_; ++j) row += (*this)(i, j) * x[j];
            sum += x[i] * row;
        }
        return sum;
    }

    std::vector<T> operator*(const std::vector<T>& x) const {
        check_vector(x);
        std::vector<T> y(n_, T(0));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    /// s^T a s for a square s of matching size.
    sym_matrix congruence(const dense_matrix<T>& s) const {
        if (s.rows() != n_ || s.cols() != n_) throw dimension_error("congruence: size mismatch");
        dense_matrix<T> a(n_, n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) a(i, j) = (*this)(i, j);
        const dense_matrix<T> r = s.transpose() * a * s;
        sym_matrix out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j) out.set(i, j, r(i, j));
        return out;
    }

    friend sym_matrix operator+(const sym_matrix& a, const sym_matrix& b) {
        a.check_same(b);
        sym_matrix c(a.n_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] + b.data_[k];
        return c;
    }

    friend sym_matrix operator-(const sym_matrix& a, const sym_matrix& b) {
        a.check_same(b);
        sym_matrix c(a.n_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] - b.data_[k];
        return c;
    }

    friend sym_matrix operator*(const T& s, const sym_matrix& a) {
        sym_matrix c(a.n_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = s * a.data_[k];
        return c;
    }

    friend bool operator==(const sym_matrix& a, const sym_matrix& b) {
        if (a.n_ != b.n_) return false;
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            if (!scalar_equal(a.data_[k], b.data_[k])) return false;
        return true;
    }

private:
    void check_symmetric() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (!scalar_equal((*this)(i, j), (*this)(j, i))) {
                    throw asymmetric_matrix("matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + ")");
                }
    }

    void check_vector(const std::vector<T>& x) const {
        if (x.size() != n_) throw dimension_error("vector length does not match matrix size");
    }

    void check_same(const sym_matrix& b) const {
        if (n_ != b.n_) throw dimension_error("matrix sizes differ");
    }

    std::size_t n_ = 0;
    std::vector<T> data_;
};

// ---------------------------------------------------------------------------
// Canonical basis

struct sym_basis_index {
    bool diagonal = true;
    std::size_t i = 0;  // 0-based
    std::size_t j = 0;  // equals i for diagonal elements, i < j otherwise

    friend bool operator==(const sym_basis_index&, const sym_basis_index&) = default;
};

inline constexpr std::size_t basis_size(std::size_t n) { return n * (n + 1) / 2; }

/// Coordinate position of e_ii (i == j) or e_ij + e_ji (any order of i, j).
inline std::size_t basis_position(std::size_t n, std::size_t i, std::size_t j) {
    if (i >= n || j >= n) throw dimension_error("basis index out of range");
    if (i == j) return i;
    if (i > j) std::swap(i, j);
    // pairs before row i: sum_{r<i} (n-1-r)
    return n + i * (2 * n - i - 1) / 2 + (j - i - 1);
}

inline sym_basis_index basis_index(std::size_t n, std::size_t k) {
    if (k >= basis_size(n)) throw dimension_error("basis position out of range");
    if (k < n) return {true, k, k};
    std::size_t rest = k - n;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t in_row = n - 1 - i;
        if (rest < in_row) return {false, i, i + 1 + rest};
        rest -= in_row;
    }
    throw dimension_error("basis position out of range");
}

inline std::string to_string(const sym_basis_index& b) {
    if (b.diagonal) return "e" + std::to_string(b.i + 1) + std::to_string(b.i + 1);
    return "e" + std::to_string(b.i + 1) + std::to_string(b.j + 1) + "+e" + std::to_string(b.j + 1) +
           std::to_string(b.i + 1);
}

template <Scalar T>
sym_matrix<T> basis_element(std::size_t n, std::size_t k) {
    const auto b = basis_index(n, k);
    return sym_matrix<T>::unit(n, b.i, b.j);
}

template <Scalar T>
std::vector<T> vectorize(const sym_matrix<T>& a) {
    const std::size_t n = a.size();
    std::vector<T> v(basis_size(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) v[basis_position(n, i, j)] = a(i, j);
    return v;
}

template <Scalar T>
sym_matrix<T> devectorize(std::size_t n, const std::vector<T>& v) {
    if (v.size() != basis_size(n)) throw dimension_error("coordinate vector has wrong length");
    sym_matrix<T> a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a.set(i, j, v[basis_position(n, i, j)]);
    return a;
}

// ---------------------------------------------------------------------------
// Linear operators on symmetric matrices

/// A linear map on n x n symmetric matrices. Column k of coeffs() holds the
/// coordinates of the image of the k-th basis element.
template <Scalar T>
class lin_op {
public:
    lin_op() = default;

    lin_op(std::size_t n, dense_matrix<T> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
        const std::size_t big_n = basis_size(n);
        if (coeffs_.rows() != big_n || coeffs_.cols() != big_n) {
            throw dimension_error("operator on " + std::to_string(n) + "x" + std::to_string(n) +
                                  " matrices needs a " + std::to_string(big_n) + "x" + std::to_string(big_n) +
                                  " coefficient matrix");
        }
    }

    static lin_op identity(std::size_t n) { return lin_op(n, dense_matrix<T>::identity(basis_size(n))); }

    std::size_t size() const { return n_; }
    std::size_t basis_dimension() const { return basis_size(n_); }
    const dense_matrix<T>& coeffs() const { return coeffs_; }

    /// Image of the k-th basis element.
    sym_matrix<T> image(std::size_t k) const { return devectorize(n_, coeffs_.column(k)); }

    sym_matrix<T> operator()(const sym_matrix<T>& a) const {
        if (a.size() != n_) throw dimension_error("operator applied to a matrix of the wrong size");
        return devectorize(n_, coeffs_ * vectorize(a));
    }

    friend bool operator==(const lin_op& f, const lin_op& g) { return f.n_ == g.n_ && f.coeffs_ == g.coeffs_; }

private:
    std::size_t n_ = 0;
    dense_matrix<T> coeffs_;
};

template <Scalar T>
lin_op<T> op_from_basis_images(std::size_t n, const std::vector<sym_matrix<T>>& images) {
    const std::size_t big_n = basis_size(n);
    if (images.size() != big_n) {
        throw dimension_error("expected " + std::to_string(big_n) + " basis images, got " +
                              std::to_string(images.size()));
    }
    dense_matrix<T> coeffs(big_n, big_n);
    for (std::size_t k = 0; k < big_n; ++k) {
        if (images[k].size() != n) throw dimension_error("basis image " + std::to_string(k + 1) + " has wrong size");
        const auto v = vectorize(images[k]);
        for (std::size_t r = 0; r < big_n; ++r) coeffs(r, k) = v[r];
    }
    return lin_op<T>(n, std::move(coeffs));
}

template <Scalar T>
sym_matrix<T> apply(const lin_op<T>& op, const sym_matrix<T>& a) {
    return op(a);
}

/// Exact inverse; throws singular_operator when op is not bijective.
template <Scalar T>
lin_op<T> invert(const lin_op<T>& op) {
    auto inv = inverse(op.coeffs());
    if (!inv) throw singular_operator("operator is not bijective on symmetric matrices");
    return lin_op<T>(op.size(), std::move(*inv));
}

/// f after g.
template <Scalar T>
lin_op<T> compose(const lin_op<T>& f, const lin_op<T>& g) {
    if (f.size() != g.size()) throw dimension_error("compose: operators act on different sizes");
    return lin_op<T>(f.size(), f.coeffs() * g.coeffs());
}

template <Scalar T>
sym_matrix<T> scaled_unit(std::size_t n, std::size_t i, std::size_t j, const T& s) {
    sym_matrix<T> m(n);
    m.set(i, j, s);
    return m;
}

// ---------------------------------------------------------------------------
// Formatting

template <Scalar T>
std::string format_vector(const std::vector<T>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += to_string(v[i]);
    }
    return out;
}

/// Rows in brackets, e.g. [[0,1],[1,-2]].
template <Scalar T>
std::string format_matrix(const sym_matrix<T>& a) {
    std::string out = "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
        out += i ? ",[" : "[";
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (j) out += ',';
            out += to_string(a(i, j));
        }
        out += ']';
    }
    return out + "]";
}

template <Scalar To, Scalar From>
sym_matrix<To> convert_matrix(const sym_matrix<From>& a) {
    std::vector<To> entries;
    entries.reserve(a.row_major().size());
    for (const auto& v : a.row_major()) entries.push_back(convert_scalar<To>(v));
    return sym_matrix<To>::from_row_major(a.size(), entries);
}

template <Scalar To, Scalar From>
lin_op<To> convert_operator(const lin_op<From>& op) {
    const std::size_t big_n = op.basis_dimension();
    dense_matrix<To> c(big_n, big_n);
    for (std::size_t i = 0; i < big_n; ++i)
        for (std::size_t j = 0; j < big_n; ++j) c(i, j) = convert_scalar<To>(op.coeffs()(i, j));
    return lin_op<To>(op.size(), std::move(c));
}

}  // namespace copos
