// SPDX-License-Identifier: MIT
#pragma once

#include "brank/linalg.hpp"
#include "brank/poly.hpp"
#include "brank/tensor.hpp"
#include "brank/words.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace brank {

/// Pair of word tuples naming the matrix x[w; w'] with (i, j)-entry x_{w_i + w'_j}.
struct MinorSpec {
    std::vector<Word> rows;
    std::vector<Word> cols;

    /// Throws unless words within each tuple are distinct and every row word is
    /// support-disjoint from every column word.
    void validate() const;
    [[nodiscard]] bool is_square() const { return rows.size() == cols.size(); }
    friend bool operator==(const MinorSpec&, const MinorSpec&) = default;
};

std::vector<std::vector<Word>> minor_matrix(const MinorSpec& spec);

/// Symbolic determinant of x[w; w'] (square, at most 6x6). Entries are distinct
/// variables, so all l! signed monomials survive.
SparsePoly minor_poly(const MinorSpec& spec);

/// Numeric matrix of coordinates of T at the words of minor_matrix(spec).
template <class T>
Matrix<T> minor_values(const MinorSpec& spec, const BasicTensor<T>& t) {
    spec.validate();
    Matrix<T> m(spec.rows.size(), spec.cols.size());
    for (std::size_t i = 0; i < spec.rows.size(); ++i)
        for (std::size_t j = 0; j < spec.cols.size(); ++j) m(i, j) = coord(t, spec.rows[i] + spec.cols[j]);
    return m;
}

/// Determinant of minor_values by fraction-free elimination.
Rational minor_value(const MinorSpec& spec, const QTensor& t);

/// A minor together with the flattening it lives on (0-based row modes).
struct FlatteningMinor {
    std::vector<std::size_t> row_modes;
    MinorSpec spec;
};

/// All (k+1)x(k+1) flattening minors of p-tensors over {0..n-1}: for every
/// bipartition with mode 0 on the row side, every choice of k+1 distinct row
/// words supported on the row modes and k+1 column words on the rest.
/// Deterministic order: bipartitions by bitmask, then row combinations, then
/// column combinations, both lexicographic over row-major index order.
class MinorEnumerator {
public:
    MinorEnumerator(std::size_t p, unsigned n, std::size_t k);
    std::optional<FlatteningMinor> next();

private:
    bool load_bipartition();

    std::size_t p_;
    unsigned n_;
    std::size_t size_;
    std::vector<std::vector<std::size_t>> parts_;
    std::size_t part_ = 0;
    bool started_ = false;
    std::vector<Word> row_words_, col_words_;
    std::vector<std::size_t> row_pick_, col_pick_;
};

std::vector<FlatteningMinor> enumerate_minors(std::size_t p, unsigned n, std::size_t k);
/// Words supported on the given 0-based modes, in row-major index order.
std::vector<Word> words_on_modes(std::span<const std::size_t> modes, const Shape& dims, unsigned alphabet);

}  // namespace brank
