// SPDX-License-Identifier: MIT
#pragma once

#include "brank/scalar.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace brank {

/// Finitely supported infinite word over {0, ..., n-1}. Positions are
/// 1-based; symbol 0 is implicit everywhere outside the stored support.
class Word {
public:
    using Entry = std::pair<std::size_t, unsigned>;  // (position, nonzero symbol)

    Word() = default;
    explicit Word(unsigned alphabet) : n_(alphabet) { check_alphabet(); }
    Word(unsigned alphabet, std::vector<Entry> entries);

    /// Digit-string form with trailing zeros optional, e.g. "0012". Needs n <= 10.
    static Word from_digits(std::string_view digits, unsigned alphabet);
    /// symbols[i] is the symbol at position i + 1.
    static Word from_symbols(std::span<const std::size_t> symbols, unsigned alphabet);

    [[nodiscard]] unsigned alphabet() const { return n_; }
    [[nodiscard]] unsigned operator[](std::size_t pos) const;
    [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
    [[nodiscard]] std::vector<std::size_t> support() const;
    /// 0 for the zero word.
    [[nodiscard]] std::size_t max_support() const { return entries_.empty() ? 0 : entries_.back().first; }
    [[nodiscard]] bool is_zero() const { return entries_.empty(); }
    [[nodiscard]] Word with(std::size_t pos, unsigned symbol) const;
    /// Keeps only the positions accepted by `keep`.
    [[nodiscard]] Word restricted(const std::function<bool(std::size_t)>& keep) const;
    /// Positions after `pos`, shifted so that pos + 1 becomes 1.
    [[nodiscard]] Word tail_after(std::size_t pos) const;

    /// Trailing zeros dropped; the zero word prints as "".
    [[nodiscard]] std::string to_digits() const;

    friend bool operator==(const Word&, const Word&) = default;
    /// Order by the n-ary value sum_j w(j) n^j (then by alphabet).
    friend std::strong_ordering operator<=>(const Word& a, const Word& b);

private:
    void check_alphabet() const;

    unsigned n_ = 2;
    std::vector<Entry> entries_;
};

/// Union of two words with disjoint supports.
Word operator+(const Word& a, const Word& b);

std::vector<std::size_t> word_support(const Word& w);
/// sum_j w(j) n^j.
Integer word_order_key(const Word& w);

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

/// Prefix (pi(1), ..., pi(m)) of a strictly increasing map N -> N.
class IncMap {
public:
    IncMap() = default;
    explicit IncMap(std::vector<std::size_t> values);
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] std::size_t operator()(std::size_t j) const { return values_.at(j - 1); }
    [[nodiscard]] const std::vector<std::size_t>& values() const { return values_; }
    friend bool operator==(const IncMap&, const IncMap&) = default;

private:
    std::vector<std::size_t> values_;
};

/// Prefix (sigma(1), ..., sigma(m)) of an element of the substitution
/// monoid: finite, pairwise disjoint sets of positive integers.
class SubsElement {
public:
    using Set = std::vector<std::size_t>;  // sorted, no duplicates

    SubsElement() = default;
    explicit SubsElement(std::vector<Set> sets);
    static SubsElement identity(std::size_t length);

    [[nodiscard]] std::size_t size() const { return sets_.size(); }
    [[nodiscard]] const Set& operator()(std::size_t j) const { return sets_.at(j - 1); }
    [[nodiscard]] const std::vector<Set>& sets() const { return sets_; }
    /// All sets nonempty and max sigma(1) < max sigma(2) < ...
    [[nodiscard]] bool is_increasing() const;
    /// Largest position occurring in any set (0 if none).
    [[nodiscard]] std::size_t max_element() const;
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const SubsElement&, const SubsElement&) = default;

private:
    std::vector<Set> sets_;
};

Word inc_act(const IncMap& pi, const Word& w);
/// (sigma pi)(p) = union of sigma(q) over q in pi(p).
SubsElement subs_mul(const SubsElement& sigma, const SubsElement& pi);
Word subs_act(const SubsElement& sigma, const Word& w);

/// Greedy leftmost strictly increasing pi with w_a(j) = w_b(pi(j)) for
/// j = 1..max supp(w_a).
std::optional<IncMap> higman_embed(const Word& w_a, const Word& w_b);

/// Some sigma with all sets nonempty and increasing maxima such that
/// sigma w_a = w_b, built recursively on the tail after the last occurrence
/// of the symbol whose last occurrence comes first. Absent iff no such sigma
/// exists. The result has `length` entries (default max supp(w_a)).
std::optional<SubsElement> subs_witness(const Word& w_a, const Word& w_b, std::size_t length = 0);

/// The same construction with caller-supplied embedding pi of w_a into w_b and
/// witness gamma for the tails; the result has j_a + gamma.size() entries.
SubsElement subs_witness_from(const Word& w_a, const Word& w_b, const IncMap& pi, const SubsElement& gamma);

struct MinorWords {
    std::vector<Word> rows;
    std::vector<Word> cols;
};

/// k-tuples u, u' whose 2k-row table holds every nonzero column that starts or
/// ends with k zeros exactly once: first the columns (a; 0) ordered by the
/// n-ary value of a (first row least significant), then the columns (0; b).
MinorWords canonical_minor_words(std::size_t k, unsigned n);

/// sigma(j) = positions l where column l of the (w, w') table equals column j
/// of the (u, u') table. Maps u to w and u' to w' whenever the (w, w')
/// columns all start or end with k zeros.
SubsElement orbit_element(const MinorWords& canonical, const MinorWords& target);

}  // namespace brank
