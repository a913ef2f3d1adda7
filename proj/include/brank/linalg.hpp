// SPDX-License-Identifier: MIT
#pragma once

#include "brank/scalar.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace brank {

/// Dense row-major matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) throw std::invalid_argument("matrix data size mismatch");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<const T> data() const { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using FMatrix = Matrix<double>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            if (is_zero(a(i, l))) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, l) * b(l, j);
        }
    return c;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
    Matrix<T> c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

/// Result of a rank-revealing elimination. The submatrix on the first
/// r pivot rows and columns is nonsingular for every r <= rank.
struct PivotedRank {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_rows;
    std::vector<std::size_t> pivot_cols;
};

/// Fraction-free (Bareiss) elimination after clearing row denominators.
PivotedRank rank_with_pivots(const QMatrix& m);
std::size_t rank(const QMatrix& m);
Rational determinant(const QMatrix& m);
QMatrix adjugate(const QMatrix& m);
/// Basis of the right kernel {x : m x = 0}, in reduced form.
std::vector<std::vector<Rational>> nullspace(const QMatrix& m);

/// Singular values above tol * max(rows, cols) * sigma_max.
std::size_t numerical_rank(const FMatrix& m, double tol = 1e-9);
std::vector<double> singular_values(const FMatrix& m);

/// Rank over the prime field of the given modulus.
std::size_t rank_mod_p(std::vector<std::uint64_t> rows_data, std::size_t rows, std::size_t cols, std::uint64_t p);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
bool is_prime(std::uint64_t n);
/// Reduces a rational into Z/p; throws if the denominator vanishes mod p.
std::uint64_t reduce_mod(const Rational& q, std::uint64_t p);

}  // namespace brank
