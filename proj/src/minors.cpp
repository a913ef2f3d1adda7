// SPDX-License-Identifier: MIT
#include "brank/minors.hpp"

#include <algorithm>
#include <numeric>

namespace brank {

void MinorSpec::validate() const {
    auto distinct = [](const std::vector<Word>& ws) {
        for (std::size_t i = 0; i < ws.size(); ++i)
            for (std::size_t j = i + 1; j < ws.size(); ++j)
                if (ws[i] == ws[j]) return false;
        return true;
    };
    if (!distinct(rows) || !distinct(cols)) throw std::invalid_argument("minor spec has duplicate words");
    for (const auto& r : rows)
        for (const auto& c : cols) {
            if (r.alphabet() != c.alphabet()) throw std::invalid_argument("minor spec mixes alphabets");
            for (const auto& e : r.entries())
                if (c[e.first] != 0) throw std::invalid_argument("minor spec row and column supports overlap");
        }
}

std::vector<std::vector<Word>> minor_matrix(const MinorSpec& spec) {
    spec.validate();
    std::vector<std::vector<Word>> m(spec.rows.size());
    for (std::size_t i = 0; i < spec.rows.size(); ++i)
        for (const auto& c : spec.cols) m[i].push_back(spec.rows[i] + c);
    return m;
}

SparsePoly minor_poly(const MinorSpec& spec) {
    if (!spec.is_square()) throw std::invalid_argument("minor_poly needs a square spec");
    const std::size_t l = spec.rows.size();
    if (l > 6) throw std::invalid_argument("minor_poly supports at most 6x6 determinants");
    if (l == 0) throw std::invalid_argument("minor_poly needs a nonempty spec");
    const auto entries = minor_matrix(spec);
    SparsePoly det(spec.rows[0].alphabet());
    std::vector<std::size_t> perm(l);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < l; ++i)
            for (std::size_t j = i + 1; j < l; ++j)
                if (perm[i] > perm[j]) ++inversions;
        std::vector<Monomial::Factor> factors;
        for (std::size_t i = 0; i < l; ++i) factors.emplace_back(entries[i][perm[i]], 1);
        det.add_term(Monomial(std::move(factors)), Rational(inversions % 2 ? -1 : 1));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

Rational minor_value(const MinorSpec& spec, const QTensor& t) { return determinant(minor_values(spec, t)); }

std::vector<Word> words_on_modes(std::span<const std::size_t> modes, const Shape& dims, unsigned alphabet) {
    std::vector<Word> out;
    std::vector<std::size_t> idx(modes.size(), 0);
    while (true) {
        std::vector<Word::Entry> entries;
        for (std::size_t i = 0; i < modes.size(); ++i)
            if (idx[i] != 0) entries.emplace_back(modes[i] + 1, static_cast<unsigned>(idx[i]));
        out.emplace_back(alphabet, std::move(entries));
        std::size_t i = modes.size();
        while (i-- > 0) {
            if (++idx[i] < dims[modes[i]]) break;
            idx[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

namespace {

bool next_combination(std::vector<std::size_t>& pick, std::size_t n) {
    const std::size_t k = pick.size();
    for (std::size_t i = k; i-- > 0;) {
        if (pick[i] < n - k + i) {
            ++pick[i];
            for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

MinorEnumerator::MinorEnumerator(std::size_t p, unsigned n, std::size_t k)
    : p_(p), n_(n), size_(k + 1), parts_(bipartitions(p)) {}

bool MinorEnumerator::load_bipartition() {
    const Shape dims(p_, n_);
    while (part_ < parts_.size()) {
        const auto& rows = parts_[part_];
        std::vector<std::size_t> cols;
        for (std::size_t m = 0; m < p_; ++m)
            if (std::find(rows.begin(), rows.end(), m) == rows.end()) cols.push_back(m);
        row_words_ = words_on_modes(rows, dims, n_);
        col_words_ = words_on_modes(cols, dims, n_);
        if (row_words_.size() >= size_ && col_words_.size() >= size_) {
            row_pick_.resize(size_);
            col_pick_.resize(size_);
            std::iota(row_pick_.begin(), row_pick_.end(), 0);
            std::iota(col_pick_.begin(), col_pick_.end(), 0);
            return true;
        }
        ++part_;
    }
    return false;
}

std::optional<FlatteningMinor> MinorEnumerator::next() {
    if (started_ && part_ >= parts_.size()) return std::nullopt;
    if (!started_) {
        started_ = true;
        if (!load_bipartition()) return std::nullopt;
    } else if (!next_combination(col_pick_, col_words_.size())) {
        std::iota(col_pick_.begin(), col_pick_.end(), 0);
        if (!next_combination(row_pick_, row_words_.size())) {
            ++part_;
            if (!load_bipartition()) return std::nullopt;
        }
    }
    if (part_ >= parts_.size()) return std::nullopt;
    FlatteningMinor out;
    out.row_modes = parts_[part_];
    for (std::size_t i : row_pick_) out.spec.rows.push_back(row_words_[i]);
    for (std::size_t j : col_pick_) out.spec.cols.push_back(col_words_[j]);
    return out;
}

std::vector<FlatteningMinor> enumerate_minors(std::size_t p, unsigned n, std::size_t k) {
    std::vector<FlatteningMinor> out;
    MinorEnumerator e(p, n, k);
    while (auto m = e.next()) out.push_back(std::move(*m));
    return out;
}

}  // namespace brank
