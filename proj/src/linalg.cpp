// SPDX-License-Identifier: MIT
#include "brank/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <numeric>

namespace brank {

namespace {

// Integer matrix with each row of `m` multiplied by the lcm of its denominators.
// Returns the product of the scale factors through `scale`.
std::vector<std::vector<Integer>> clear_denominators(const QMatrix& m, Integer* scale) {
    std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
    Integer total = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
        total *= l;
    }
    if (scale) *scale = total;
    return out;
}

struct BareissResult {
    PivotedRank pivots;
    Integer last_pivot = 1;
    int sign = 1;
};

BareissResult bareiss(std::vector<std::vector<Integer>> a, std::size_t rows, std::size_t cols) {
    BareissResult res;
    std::vector<std::size_t> row_of(rows), col_of(cols);
    std::iota(row_of.begin(), row_of.end(), 0);
    std::iota(col_of.begin(), col_of.end(), 0);
    Integer prev = 1;
    std::size_t r = 0;
    for (; r < std::min(rows, cols); ++r) {
        std::size_t pi = rows, pj = cols;
        for (std::size_t j = r; j < cols && pi == rows; ++j)
            for (std::size_t i = r; i < rows; ++i)
                if (a[i][j] != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == rows) break;
        if (pi != r) {
            std::swap(a[pi], a[r]);
            std::swap(row_of[pi], row_of[r]);
            res.sign = -res.sign;
        }
        if (pj != r) {
            for (auto& row : a) std::swap(row[pj], row[r]);
            std::swap(col_of[pj], col_of[r]);
            res.sign = -res.sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = r + 1; j < cols; ++j) {
                a[i][j] = a[r][r] * a[i][j] - a[i][r] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][r] = 0;
        }
        prev = a[r][r];
    }
    res.pivots.rank = r;
    res.pivots.pivot_rows.assign(row_of.begin(), row_of.begin() + static_cast<std::ptrdiff_t>(r));
    res.pivots.pivot_cols.assign(col_of.begin(), col_of.begin() + static_cast<std::ptrdiff_t>(r));
    res.last_pivot = prev;
    return res;
}

}  // namespace

PivotedRank rank_with_pivots(const QMatrix& m) {
    return bareiss(clear_denominators(m, nullptr), m.rows(), m.cols()).pivots;
}

std::size_t rank(const QMatrix& m) { return rank_with_pivots(m).rank; }

Rational determinant(const QMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    if (m.rows() == 0) return Rational(1);
    Integer scale;
    auto res = bareiss(clear_denominators(m, &scale), m.rows(), m.cols());
    if (res.pivots.rank < m.rows()) return Rational(0);
    Rational d(res.last_pivot * res.sign, scale);
    d.canonicalize();
    return d;
}

QMatrix adjugate(const QMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("adjugate of a non-square matrix");
    QMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // adj(i, j) is the (j, i) cofactor.
            QMatrix minor(n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            Rational d = determinant(minor);
            adj(i, j) = ((i + j) % 2 == 0) ? d : Rational(-d);
        }
    return adj;
}

std::vector<std::vector<Rational>> nullspace(const QMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j);

    std::vector<std::size_t> pivot_col_of_row;
    std::vector<bool> is_pivot(cols, false);
    std::size_t r = 0;
    for (std::size_t j = 0; j < cols && r < rows; ++j) {
        std::size_t pi = r;
        while (pi < rows && sgn(a[pi][j]) == 0) ++pi;
        if (pi == rows) continue;
        std::swap(a[pi], a[r]);
        Rational inv = 1 / a[r][j];
        for (std::size_t c = j; c < cols; ++c) a[r][c] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(a[i][j]) == 0) continue;
            Rational f = a[i][j];
            for (std::size_t c = j; c < cols; ++c)
                if (sgn(a[r][c]) != 0) a[i][c] -= f * a[r][c];
        }
        pivot_col_of_row.push_back(j);
        is_pivot[j] = true;
        ++r;
    }

    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols);
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i) v[pivot_col_of_row[i]] = -a[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<double> singular_values(const FMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return {};
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
    const auto& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

std::size_t numerical_rank(const FMatrix& m, double tol) {
    auto s = singular_values(m);
    if (s.empty() || s.front() == 0.0) return 0;
    const double threshold = tol * static_cast<double>(std::max(m.rows(), m.cols())) * s.front();
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](double x) { return x > threshold; }));
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t reduce_mod(const Rational& q, std::uint64_t p) {
    Integer pm(static_cast<unsigned long>(p));
    Integer num = q.get_num() % pm;
    if (num < 0) num += pm;
    Integer den = q.get_den() % pm;
    if (den == 0) throw std::domain_error("denominator vanishes modulo p");
    std::uint64_t n = num.get_ui(), d = den.get_ui();
    return mul_mod(n, pow_mod(d, p - 2, p), p);
}

std::size_t rank_mod_p(std::vector<std::uint64_t> a, std::size_t rows, std::size_t cols, std::uint64_t p) {
    if (a.size() != rows * cols) throw std::invalid_argument("rank_mod_p: data size mismatch");
    for (auto& x : a) x %= p;
    std::size_t r = 0;
    for (std::size_t j = 0; j < cols && r < rows; ++j) {
        std::size_t pi = r;
        while (pi < rows && a[pi * cols + j] == 0) ++pi;
        if (pi == rows) continue;
        if (pi != r)
            for (std::size_t c = j; c < cols; ++c) std::swap(a[pi * cols + c], a[r * cols + c]);
        const std::uint64_t inv = pow_mod(a[r * cols + j], p - 2, p);
        for (std::size_t c = j; c < cols; ++c) a[r * cols + c] = mul_mod(a[r * cols + c], inv, p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const std::uint64_t f = a[i * cols + j];
            if (f == 0) continue;
            for (std::size_t c = j; c < cols; ++c) {
                const std::uint64_t sub = mul_mod(f, a[r * cols + c], p);
                std::uint64_t& x = a[i * cols + c];
                x = x >= sub ? x - sub : x + p - sub;
            }
        }
        ++r;
    }
    return r;
}

}  // namespace brank
