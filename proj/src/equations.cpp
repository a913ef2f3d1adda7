// SPDX-License-Identifier: MIT
#include "brank/equations.hpp"

#include <array>

namespace brank {

Rank222 rank_222_classify(const QTensor& t) {
    if (t.dims() != Shape{2, 2, 2}) throw std::invalid_argument("rank_222_classify needs a 2x2x2 tensor");
    Rank222 out;
    out.hyperdet = hyperdet_222(t);

    // The pencil x1 M1 + x2 M2 with M_k = T(., ., k).
    std::array<QMatrix, 2> m{QMatrix(2, 2), QMatrix(2, 2)};
    QMatrix stacked(2, 4);
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                m[k](i, j) = t.at({i, j, k});
                stacked(k, 2 * i + j) = m[k](i, j);
            }
    out.pencil_dim = rank(stacked);

    if (out.pencil_dim == 0) return out;
    if (out.pencil_dim == 1) {
        const QMatrix& nonzero = (rank(m[0]) > 0) ? m[0] : m[1];
        out.complex_rank = out.real_rank = static_cast<unsigned>(rank(nonzero));
        return out;
    }
    // det(x1 M1 + x2 M2) = a x1^2 + b x1 x2 + c x2^2.
    const Rational a = determinant(m[0]);
    const Rational c = determinant(m[1]);
    const Rational b = m[0](0, 0) * m[1](1, 1) + m[0](1, 1) * m[1](0, 0) - m[0](0, 1) * m[1](1, 0) - m[0](1, 0) * m[1](0, 1);
    if (sgn(a) == 0 && sgn(b) == 0 && sgn(c) == 0) {
        // Every matrix in the span is singular, so it has a basis of rank-1 matrices.
        out.complex_rank = out.real_rank = 2;
        return out;
    }
    const int disc = sgn(out.hyperdet);
    if (disc == 0) {
        // A single rank-1 direction in the span.
        out.complex_rank = out.real_rank = 3;
    } else {
        out.complex_rank = 2;
        out.real_rank = disc > 0 ? 2 : 3;
    }
    return out;
}

std::array<QMatrix, 3> strassen_slices(const QTensor& t) {
    if (t.order() != 3) throw std::invalid_argument("strassen: need a 3-mode tensor");
    const auto& d = t.dims();
    std::size_t mode = 3;
    for (std::size_t m = 3; m-- > 0;) {
        const std::size_t a = d[(m + 1) % 3], b = d[(m + 2) % 3];
        if (d[m] == 3 && a == b) {
            mode = m;
            break;
        }
    }
    if (mode == 3) throw std::invalid_argument("strassen: shape is not l x l x 3");
    std::vector<std::size_t> others;
    for (std::size_t m = 0; m < 3; ++m)
        if (m != mode) others.push_back(m);
    const std::size_t l = d[others[0]];
    std::array<QMatrix, 3> x{QMatrix(l, l), QMatrix(l, l), QMatrix(l, l)};
    std::array<std::size_t, 3> idx{};
    for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t i = 0; i < l; ++i)
            for (std::size_t j = 0; j < l; ++j) {
                idx[mode] = s;
                idx[others[0]] = i;
                idx[others[1]] = j;
                x[s](i, j) = t.at(idx);
            }
    return x;
}

StrassenValue strassen_eval(const QTensor& t) {
    const auto x = strassen_slices(t);
    const std::size_t l = x[0].rows();
    const QMatrix adj = adjugate(x[0]);
    const QMatrix commutator = x[1] * adj * x[2] - x[2] * adj * x[1];
    StrassenValue out;
    out.value = determinant(commutator);
    const Rational d = determinant(x[0]);
    if (sgn(d) == 0) {
        out.numerator_only = true;
        return out;
    }
    if (l >= 2) {
        for (std::size_t i = 0; i + 2 < l; ++i) out.value /= d;
    } else {
        out.value *= d;
    }
    return out;
}

StrassenBound strassen_bound(const QTensor& t) {
    const auto x = strassen_slices(t);
    StrassenBound out;
    const Rational d = determinant(x[0]);
    if (sgn(d) == 0) return out;
    const QMatrix adj = adjugate(x[0]);
    // adj = det * inverse, so the rank matches the inverse-based commutator.
    out.commutator_rank = rank(x[1] * adj * x[2] - x[2] * adj * x[1]);
    const std::size_t l = x[0].rows();
    out.bound = Rational(Integer(static_cast<unsigned long>(2 * l + out.commutator_rank)), Integer(2));
    out.bound->canonicalize();
    out.integer_bound = l + (out.commutator_rank + 1) / 2;
    return out;
}

}  // namespace brank
