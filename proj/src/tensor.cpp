// SPDX-License-Identifier: MIT
#include "brank/tensor.hpp"

#include "brank/random.hpp"

#include <iostream>

namespace brank {

FTensor to_float(const QTensor& t) {
    std::vector<double> e(t.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = t[i].get_d();
    if (t.order() == 0) return FTensor::scalar(e[0]);
    return FTensor(t.dims(), std::move(e));
}

double frobenius_norm(const FTensor& t) {
    double s = 0.0;
    for (double x : t.entries()) s += x * x;
    return std::sqrt(s);
}

std::size_t matrix_rank(const QTensor& m, std::optional<double> tol) {
    if (tol) std::cerr << "warning: tolerance ignored for exact rank\n";
    return rank(tensor_to_matrix(m));
}

std::size_t matrix_rank(const FTensor& m, std::optional<double> tol) {
    return numerical_rank(tensor_to_matrix(m), tol.value_or(1e-9));
}

Word index_word(std::span<const std::size_t> index, unsigned alphabet) {
    return Word::from_symbols(index, alphabet);
}

std::vector<std::vector<std::size_t>> bipartitions(std::size_t p) {
    std::vector<std::vector<std::size_t>> out;
    if (p < 2) return out;
    const std::uint64_t others = (std::uint64_t{1} << (p - 1)) - 1;
    for (std::uint64_t mask = 0; mask < others; ++mask) {
        std::vector<std::size_t> rows{0};
        for (std::size_t m = 1; m < p; ++m)
            if (mask & (std::uint64_t{1} << (m - 1))) rows.push_back(m);
        out.push_back(std::move(rows));
    }
    return out;
}

std::pair<QTensor, PureFactorization<Rational>> random_rank(const Shape& dims, std::size_t r, std::uint64_t seed,
                                                            long coeff_bound) {
    if (coeff_bound < 1) throw std::invalid_argument("random_rank: coefficient bound must be at least 1");
    if (dims.empty()) throw std::invalid_argument("random_rank: need at least one mode");
    Rng rng = make_rng(seed, StreamKind::generate);
    PureFactorization<Rational> f;
    for (std::size_t t = 0; t < r; ++t) {
        std::vector<std::vector<Rational>> term;
        for (std::size_t n : dims) {
            std::vector<Rational> v(n);
            bool nonzero = false;
            while (!nonzero) {
                for (auto& x : v) {
                    x = uniform_int(rng, -coeff_bound, coeff_bound);
                    nonzero = nonzero || sgn(x) != 0;
                }
            }
            term.push_back(std::move(v));
        }
        f.terms.push_back(std::move(term));
    }
    return {expand(dims, f), std::move(f)};
}

}  // namespace brank
