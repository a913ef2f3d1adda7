// SPDX-License-Identifier: MIT
#pragma once

#include "brank/linalg.hpp"
#include "brank/tensor.hpp"

#include <array>
#include <cstddef>
#include <optional>

namespace brank {

/// Cayley hyperdeterminant of a 2x2x2 tensor: with slices A = T(0,.,.) and
/// B = T(1,.,.), det(x1 A + x2 B) = a x1^2 + b x1 x2 + c x2^2 and the result
/// is b^2 - 4ac.
template <class T>
T hyperdet_222(const BasicTensor<T>& t) {
    if (t.dims() != Shape{2, 2, 2}) throw std::invalid_argument("hyperdet_222 needs a 2x2x2 tensor");
    auto A = [&](std::size_t i, std::size_t j) -> const T& { return t.at({0, i, j}); };
    auto B = [&](std::size_t i, std::size_t j) -> const T& { return t.at({1, i, j}); };
    const T a = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    const T c = B(0, 0) * B(1, 1) - B(0, 1) * B(1, 0);
    const T b = A(0, 0) * B(1, 1) + A(1, 1) * B(0, 0) - A(0, 1) * B(1, 0) - A(1, 0) * B(0, 1);
    return b * b - 4 * a * c;
}

/// Rank of a 2x2x2 tensor from the pencil x1 M1 + x2 M2 of its slices along the
/// last mode, over an algebraically closed field and over the reals.
struct Rank222 {
    unsigned complex_rank = 0;
    unsigned real_rank = 0;
    std::size_t pencil_dim = 0;  // dim of span(M1, M2)
    Rational hyperdet;
};

Rank222 rank_222_classify(const QTensor& t);

/// Strassen's degree-3l invariant of an l x l x 3 tensor with slices X1, X2, X3
/// along the size-3 mode:
///   det(X2 adj(X1) X3 - X3 adj(X1) X2) / det(X1)^(l-2).
/// When det(X1) = 0 the division is skipped and `numerator_only` is set.
struct StrassenValue {
    Rational value;
    bool numerator_only = false;
};

StrassenValue strassen_eval(const QTensor& t);

/// Lower bound l + rank(X2 X1^-1 X3 - X3 X1^-1 X2) / 2 on the border rank.
/// Empty when X1 is singular.
struct StrassenBound {
    std::optional<Rational> bound;
    std::size_t commutator_rank = 0;
    /// ceil(bound), since border rank is an integer.
    std::size_t integer_bound = 0;
};

StrassenBound strassen_bound(const QTensor& t);

/// Slices X1, X2, X3 of an l x l x 3 tensor (a permutation of that shape is
/// accepted; the last size-3 mode is used).
std::array<QMatrix, 3> strassen_slices(const QTensor& t);

}  // namespace brank
