#pragma once

// Small dense matrices and Gaussian elimination over a Scalar field.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace copos {

template <Scalar T>
class dense_matrix {
public:
    dense_matrix() = default;
    dense_matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    dense_matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw dimension_error("ragged initializer for dense_matrix");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static dense_matrix identity(std::size_t n) {
        dense_matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    dense_matrix transpose() const {
        dense_matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend dense_matrix operator*(const dense_matrix& a, const dense_matrix& b) {
        if (a.cols_ != b.rows_) throw dimension_error("dense_matrix product: inner dimensions differ");
        dense_matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (is_zero(aik) && scalar_traits<T>::exact) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        }
        return c;
    }

    std::vector<T> operator*(const std::vector<T>& x) const {
        if (x.size() != cols_) throw dimension_error("dense_matrix times vector: size mismatch");
        std::vector<T> y(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    friend bool operator==(const dense_matrix& a, const dense_matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            if (!scalar_equal(a.data_[k], b.data_[k])) return false;
        return true;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

namespace detail {

// Picks the pivot row for column col among rows [row, rows). Exact mode takes
// the first nonzero entry, float mode the largest magnitude above tolerance.
template <Scalar T>
std::optional<std::size_t> find_pivot(const dense_matrix<T>& m, std::size_t row, std::size_t col) {
    std::optional<std::size_t> best;
    for (std::size_t r = row; r < m.rows(); ++r) {
        if (is_zero(m(r, col))) continue;
        if constexpr (scalar_traits<T>::exact) {
            return r;
        } else {
            if (!best || std::abs(m(r, col)) > std::abs(m(*best, col))) best = r;
        }
    }
    return best;
}

template <Scalar T>
void swap_rows(dense_matrix<T>& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

// Reduced row echelon form in place; returns the pivot columns.
template <Scalar T>
std::vector<std::size_t> rref(dense_matrix<T>& m, std::size_t col_limit) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < col_limit && row < m.rows(); ++col) {
        const auto p = find_pivot(m, row, col);
        if (!p) continue;
        swap_rows(m, row, *p);
        const T inv = T(1) / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || is_zero(m(r, col))) continue;
            const T f = m(r, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace detail

/// Solves a x = b for square a; nullopt when a is singular.
template <Scalar T>
std::optional<std::vector<T>> solve(const dense_matrix<T>& a, const std::vector<T>& b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw dimension_error("solve: expected a square system");
    dense_matrix<T> aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    if (detail::rref(aug, n).size() != n) return std::nullopt;
    return aug.column(n);
}

template <Scalar T>
std::optional<dense_matrix<T>> inverse(const dense_matrix<T>& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw dimension_error("inverse: matrix is not square");
    dense_matrix<T> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = T(1);
    }
    if (detail::rref(aug, n).size() != n) return std::nullopt;
    dense_matrix<T> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

template <Scalar T>
std::size_t rank(dense_matrix<T> a) {
    return detail::rref(a, a.cols()).size();
}

/// A nonzero vector x with a x = 0, or nullopt when a has full column rank.
template <Scalar T>
std::optional<std::vector<T>> null_vector(dense_matrix<T> a) {
    const auto pivots = detail::rref(a, a.cols());
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> x(a.cols(), T(0));
        x[free] = T(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -a(r, free);
        return x;
    }
    return std::nullopt;
}

}  // namespace copos
