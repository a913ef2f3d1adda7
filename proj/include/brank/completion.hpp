// SPDX-License-Identifier: MIT
#pragma once

#include "brank/minors.hpp"
#include "brank/poly.hpp"
#include "brank/tensor.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace brank {

/// Entries of an order-q tensor (all modes of size n) on the words with at
/// most one support position beyond p. `core` holds the words supported in
/// [p]; `slabs[j]` is the order-(p+1) tensor of words supported in
/// [p] ∪ {p+1+j}, its last mode indexing that position. Words supported in
/// [p] therefore appear in the core and in every slab (at last index 0).
struct BoundaryData {
    std::size_t p = 0;
    std::size_t n = 2;
    std::size_t q = 0;
    QTensor core;
    std::vector<QTensor> slabs;

    friend bool operator==(const BoundaryData&, const BoundaryData&) = default;
};

/// Rows w_1..w_k supported in I, columns w'_1..w'_k supported in J = [p] \ I.
struct Pivot {
    std::size_t p = 0;
    std::vector<Word> rows;
    std::vector<Word> cols;
    std::vector<std::size_t> row_positions;  // I, 1-based

    [[nodiscard]] std::size_t k() const { return rows.size(); }
    [[nodiscard]] std::vector<std::size_t> col_positions() const;
    [[nodiscard]] MinorSpec spec() const { return {rows, cols}; }
    /// Throws std::invalid_argument on a malformed pivot.
    void validate() const;
};

struct BoundaryViolation {
    Word word;
    /// Slab positions (p+1..q) whose value differs from the core.
    std::vector<std::size_t> positions;
};

class ZeroPivotError : public std::runtime_error {
public:
    ZeroPivotError(const std::string& what, std::optional<Word> word)
        : std::runtime_error(what), word_(std::move(word)) {}
    [[nodiscard]] const std::optional<Word>& word() const { return word_; }

private:
    std::optional<Word> word_;
};

using KnownValues = std::map<Word, Rational>;

BoundaryData extract_boundary(const QTensor& t, std::size_t p);
/// One violation per word supported in [p] on which a slab disagrees with the core.
std::vector<BoundaryViolation> validate_boundary(const BoundaryData& b);
/// The boundary values keyed by word (core values for words supported in [p]).
KnownValues boundary_values(const BoundaryData& b);

/// Split w = w_{k+1} + w'_{k+1}: w'_{k+1} is w on J ∪ {max supp w}, w_{k+1}
/// the rest.
std::pair<Word, Word> split_word(const Pivot& pivot, const Word& w);
/// The (k+1)x(k+1) minor spec extending the pivot by the split of w.
MinorSpec extended_spec(const Pivot& pivot, const Word& w);

/// Value of x_w making the extended minor vanish, from known values of all
/// other entries. Throws ZeroPivotError if the pivot minor vanishes and
/// std::logic_error if a prerequisite entry is unknown.
Rational complete_entry(const KnownValues& known, const Pivot& pivot, const Word& w);

/// Symbolic form: x_w = numerator / denominator with denominator the pivot
/// minor.
struct CompletionFormula {
    SparsePoly numerator;
    SparsePoly denominator;
};
CompletionFormula completion_formula(const Pivot& pivot, const Word& w);

/// Words with support in [q] and at least two positions beyond p, ordered by
/// the number of such positions, then max support, then n-ary key.
std::vector<Word> completion_order(std::size_t p, std::size_t q, unsigned n);

/// Fills every entry of an order-q tensor from boundary data.
QTensor complete_tensor(const BoundaryData& b, const Pivot& pivot, std::size_t k);

struct NonzeroMinor {
    FlatteningMinor minor;
    Rational value;
};

/// Nonzero (k+1)x(k+1) flattening minors, at most `limit` of them.
/// Flattenings of rank <= k are skipped without enumerating their minors.
std::vector<NonzeroMinor> verify_on_variety(const QTensor& t, std::size_t k,
                                            std::size_t limit = static_cast<std::size_t>(-1));
/// Largest |minor| over all (k+1)x(k+1) flattening minors.
double verify_on_variety(const FTensor& t, std::size_t k);

}  // namespace brank
