// SPDX-License-Identifier: MIT
#include "brank/words.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace brank {

// ---------------------------------------------------------------------------
// Word
// ---------------------------------------------------------------------------

void Word::check_alphabet() const {
    if (n_ < 1) throw std::invalid_argument("word alphabet must be nonempty");
}

Word::Word(unsigned alphabet, std::vector<Entry> entries) : n_(alphabet) {
    check_alphabet();
    std::sort(entries.begin(), entries.end());
    for (const auto& [pos, sym] : entries) {
        if (pos == 0) throw std::invalid_argument("word positions are 1-based");
        if (sym >= n_) throw std::invalid_argument("word symbol out of alphabet");
        if (!entries_.empty() && entries_.back().first == pos) throw std::invalid_argument("duplicate word position");
        if (sym != 0) entries_.emplace_back(pos, sym);
    }
}

Word Word::from_digits(std::string_view digits, unsigned alphabet) {
    if (alphabet > 10) throw DataError("digit-string words need an alphabet of at most 10 symbols");
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const char c = digits[i];
        if (c < '0' || c > '9') throw DataError("malformed word '" + std::string(digits) + "'");
        const unsigned sym = static_cast<unsigned>(c - '0');
        if (sym >= alphabet) throw DataError("symbol " + std::string(1, c) + " outside alphabet of size " + std::to_string(alphabet));
        if (sym != 0) entries.emplace_back(i + 1, sym);
    }
    return Word(alphabet, std::move(entries));
}

Word Word::from_symbols(std::span<const std::size_t> symbols, unsigned alphabet) {
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < symbols.size(); ++i)
        if (symbols[i] != 0) entries.emplace_back(i + 1, static_cast<unsigned>(symbols[i]));
    return Word(alphabet, std::move(entries));
}

unsigned Word::operator[](std::size_t pos) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{pos, 0});
    return (it != entries_.end() && it->first == pos) ? it->second : 0;
}

std::vector<std::size_t> Word::support() const {
    std::vector<std::size_t> s;
    s.reserve(entries_.size());
    for (const auto& e : entries_) s.push_back(e.first);
    return s;
}

Word Word::with(std::size_t pos, unsigned symbol) const {
    if (pos == 0) throw std::invalid_argument("word positions are 1-based");
    if (symbol >= n_) throw std::invalid_argument("word symbol out of alphabet");
    Word out(n_);
    for (const auto& e : entries_)
        if (e.first != pos) out.entries_.push_back(e);
    if (symbol != 0) {
        out.entries_.emplace_back(pos, symbol);
        std::sort(out.entries_.begin(), out.entries_.end());
    }
    return out;
}

Word Word::restricted(const std::function<bool(std::size_t)>& keep) const {
    Word out(n_);
    for (const auto& e : entries_)
        if (keep(e.first)) out.entries_.push_back(e);
    return out;
}

Word Word::tail_after(std::size_t pos) const {
    Word out(n_);
    for (const auto& e : entries_)
        if (e.first > pos) out.entries_.emplace_back(e.first - pos, e.second);
    return out;
}

std::string Word::to_digits() const {
    if (n_ > 10) throw std::invalid_argument("digit-string form needs an alphabet of at most 10 symbols");
    std::string s(max_support(), '0');
    for (const auto& [pos, sym] : entries_) s[pos - 1] = static_cast<char>('0' + sym);
    return s;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
    // Compare n-ary values from the most significant (largest) position down.
    auto ia = a.entries_.rbegin(), ib = b.entries_.rbegin();
    for (; ia != a.entries_.rend() && ib != b.entries_.rend(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first <=> ib->first;
        if (ia->second != ib->second) return ia->second <=> ib->second;
    }
    if (ia != a.entries_.rend()) return std::strong_ordering::greater;
    if (ib != b.entries_.rend()) return std::strong_ordering::less;
    return a.n_ <=> b.n_;
}

Word operator+(const Word& a, const Word& b) {
    if (a.alphabet() != b.alphabet()) throw std::invalid_argument("adding words over different alphabets");
    std::vector<Word::Entry> entries = a.entries();
    for (const auto& e : b.entries()) {
        if (a[e.first] != 0) throw std::invalid_argument("adding words with overlapping supports");
        entries.push_back(e);
    }
    return Word(a.alphabet(), std::move(entries));
}

std::vector<std::size_t> word_support(const Word& w) { return w.support(); }

Integer word_order_key(const Word& w) {
    Integer key = 0;
    for (const auto& [pos, sym] : w.entries()) {
        Integer term;
        mpz_ui_pow_ui(term.get_mpz_t(), w.alphabet(), pos);
        key += term * sym;
    }
    return key;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = w.alphabet();
    for (const auto& [pos, sym] : w.entries()) h = (h * 1000003u) ^ (pos * 31u + sym);
    return h;
}

// ---------------------------------------------------------------------------
// IncMap / SubsElement
// ---------------------------------------------------------------------------

IncMap::IncMap(std::vector<std::size_t> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] == 0) throw std::invalid_argument("increasing map values are positive");
        if (i > 0 && values_[i] <= values_[i - 1]) throw std::invalid_argument("increasing map must be strictly increasing");
    }
}

SubsElement::SubsElement(std::vector<Set> sets) : sets_(std::move(sets)) {
    std::set<std::size_t> seen;
    for (auto& s : sets_) {
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("substitution set has duplicates");
        for (std::size_t x : s) {
            if (x == 0) throw std::invalid_argument("substitution sets hold positive integers");
            if (!seen.insert(x).second) throw std::invalid_argument("substitution sets must be pairwise disjoint");
        }
    }
}

SubsElement SubsElement::identity(std::size_t length) {
    std::vector<Set> sets(length);
    for (std::size_t i = 0; i < length; ++i) sets[i] = {i + 1};
    return SubsElement(std::move(sets));
}

bool SubsElement::is_increasing() const {
    std::size_t prev = 0;
    for (const auto& s : sets_) {
        if (s.empty() || s.back() <= prev) return false;
        prev = s.back();
    }
    return true;
}

std::size_t SubsElement::max_element() const {
    std::size_t m = 0;
    for (const auto& s : sets_)
        if (!s.empty()) m = std::max(m, s.back());
    return m;
}

std::string SubsElement::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        if (i) os << ',';
        os << '{';
        for (std::size_t j = 0; j < sets_[i].size(); ++j) os << (j ? "," : "") << sets_[i][j];
        os << '}';
    }
    os << ')';
    return os.str();
}

Word inc_act(const IncMap& pi, const Word& w) {
    if (w.max_support() > pi.size()) throw std::invalid_argument("inc_act: word support exceeds the map's domain");
    std::vector<Word::Entry> out;
    for (const auto& [pos, sym] : w.entries()) out.emplace_back(pi(pos), sym);
    return Word(w.alphabet(), std::move(out));
}

SubsElement subs_mul(const SubsElement& sigma, const SubsElement& pi) {
    std::vector<SubsElement::Set> out(pi.size());
    for (std::size_t p = 1; p <= pi.size(); ++p)
        for (std::size_t q : pi(p)) {
            if (q > sigma.size()) throw std::invalid_argument("subs_mul: index outside the left factor");
            const auto& s = sigma(q);
            out[p - 1].insert(out[p - 1].end(), s.begin(), s.end());
        }
    return SubsElement(std::move(out));
}

Word subs_act(const SubsElement& sigma, const Word& w) {
    if (w.max_support() > sigma.size()) throw std::invalid_argument("subs_act: word support exceeds the element's length");
    std::vector<Word::Entry> out;
    for (const auto& [q, sym] : w.entries())
        for (std::size_t p : sigma(q)) out.emplace_back(p, sym);
    return Word(w.alphabet(), std::move(out));
}

std::optional<IncMap> higman_embed(const Word& w_a, const Word& w_b) {
    std::vector<std::size_t> pi;
    std::size_t pos = 0;
    for (std::size_t j = 1; j <= w_a.max_support(); ++j) {
        const unsigned target = w_a[j];
        ++pos;
        if (target != 0) {
            while (pos <= w_b.max_support() && w_b[pos] != target) ++pos;
            if (pos > w_b.max_support()) return std::nullopt;
        } else {
            while (w_b[pos] != 0) ++pos;  // zeros are unbounded to the right
        }
        pi.push_back(pos);
    }
    return IncMap(std::move(pi));
}

namespace {

std::set<unsigned> nonzero_alphabet(const Word& w) {
    std::set<unsigned> a;
    for (const auto& e : w.entries()) a.insert(e.second);
    return a;
}

std::map<unsigned, std::size_t> last_occurrences(const Word& w) {
    std::map<unsigned, std::size_t> last;
    for (const auto& [pos, sym] : w.entries()) last[sym] = pos;
    return last;
}

// Symbol whose last occurrence is earliest, with that position.
std::pair<unsigned, std::size_t> earliest_last(const Word& w) {
    std::pair<unsigned, std::size_t> best{0, 0};
    for (const auto& [sym, pos] : last_occurrences(w))
        if (best.second == 0 || pos < best.second) best = {sym, pos};
    return best;
}

// sigma(j) for j = 1..length from the four-case formula.
std::vector<SubsElement::Set> assemble(const Word& w_a, const Word& w_b, unsigned s, std::size_t j_a, std::size_t j_b,
                                       const std::vector<std::size_t>& pi, const std::vector<SubsElement::Set>& gamma,
                                       std::size_t length) {
    if (pi.size() + 1 < j_a) throw std::invalid_argument("embedding shorter than the head of w_a");
    std::set<std::size_t> pi_head(pi.begin(), pi.begin() + static_cast<std::ptrdiff_t>(j_a - 1));
    const Word tail_a = w_a.tail_after(j_a);

    // First position of each symbol (including 0) in the tail of w_a.
    auto first_in_tail = [&](unsigned sym) {
        for (std::size_t i = 1;; ++i)
            if (tail_a[i] == sym) return i;
    };
    auto unmatched_below_jb = [&](unsigned sym) {
        SubsElement::Set out;
        for (std::size_t i = 1; i < j_b; ++i)
            if (w_b[i] == sym && !pi_head.count(i)) out.push_back(i);
        return out;
    };

    std::vector<SubsElement::Set> sigma;
    for (std::size_t j = 1; j <= length; ++j) {
        SubsElement::Set set;
        if (j < j_a) {
            set = {pi[j - 1]};
        } else if (j == j_a) {
            set = unmatched_below_jb(s);
            set.push_back(j_b);
        } else {
            const std::size_t t = j - j_a;
            if (t > gamma.size()) break;
            for (std::size_t i : gamma[t - 1]) set.push_back(j_b + i);
            if (first_in_tail(w_a[j]) == t) {
                auto extra = unmatched_below_jb(w_a[j]);
                set.insert(set.end(), extra.begin(), extra.end());
            }
        }
        std::sort(set.begin(), set.end());
        sigma.push_back(std::move(set));
    }
    return sigma;
}

std::optional<std::vector<SubsElement::Set>> witness_rec(const Word& w_a, const Word& w_b, std::size_t length) {
    const auto alphabet = nonzero_alphabet(w_a);
    if (alphabet != nonzero_alphabet(w_b)) return std::nullopt;
    if (alphabet.empty()) return SubsElement::identity(length).sets();

    const auto [s, j_a] = earliest_last(w_a);
    const auto [s_b, j_b] = earliest_last(w_b);
    // Maxima of an increasing sigma preserve the order of last occurrences.
    if (s != s_b) return std::nullopt;

    auto pi = higman_embed(w_a, w_b);
    if (!pi) return std::nullopt;

    const std::size_t tail_length = length > j_a ? length - j_a : 0;
    auto gamma = witness_rec(w_a.tail_after(j_a), w_b.tail_after(j_b), tail_length);
    if (!gamma) return std::nullopt;
    return assemble(w_a, w_b, s, j_a, j_b, pi->values(), *gamma, length);
}

}  // namespace

std::optional<SubsElement> subs_witness(const Word& w_a, const Word& w_b, std::size_t length) {
    length = std::max(length, w_a.max_support());
    auto sets = witness_rec(w_a, w_b, length);
    if (!sets) return std::nullopt;
    return SubsElement(std::move(*sets));
}

SubsElement subs_witness_from(const Word& w_a, const Word& w_b, const IncMap& pi, const SubsElement& gamma) {
    if (w_a.is_zero() || w_b.is_zero()) throw std::invalid_argument("subs_witness_from needs nonzero words");
    const auto [s, j_a] = earliest_last(w_a);
    const std::size_t j_b = last_occurrences(w_b).count(s) ? last_occurrences(w_b).at(s) : 0;
    if (j_b == 0) throw std::invalid_argument("w_b lacks the symbol whose last occurrence in w_a is earliest");
    return SubsElement(assemble(w_a, w_b, s, j_a, j_b, pi.values(), gamma.sets(), j_a + gamma.size()));
}

MinorWords canonical_minor_words(std::size_t k, unsigned n) {
    if (k < 1 || n < 2) throw std::invalid_argument("canonical_minor_words needs k >= 1 and n >= 2");
    std::size_t block = 1;
    for (std::size_t i = 0; i < k; ++i) block *= n;
    std::vector<std::vector<Word::Entry>> top(k), bottom(k);
    std::size_t column = 0;
    for (int half = 0; half < 2; ++half)
        for (std::size_t value = 1; value < block; ++value) {
            ++column;
            std::size_t v = value;
            for (std::size_t i = 0; i < k; ++i, v /= n) {
                const unsigned digit = static_cast<unsigned>(v % n);
                if (digit != 0) (half == 0 ? top : bottom)[i].emplace_back(column, digit);
            }
        }
    MinorWords out;
    for (std::size_t i = 0; i < k; ++i) {
        out.rows.emplace_back(n, top[i]);
        out.cols.emplace_back(n, bottom[i]);
    }
    return out;
}

SubsElement orbit_element(const MinorWords& canonical, const MinorWords& target) {
    const std::size_t k = canonical.rows.size();
    if (canonical.cols.size() != k || target.rows.size() != k || target.cols.size() != k)
        throw std::invalid_argument("orbit_element: tuple sizes differ");
    auto column = [k](const MinorWords& m, std::size_t pos) {
        std::vector<unsigned> c(2 * k);
        for (std::size_t i = 0; i < k; ++i) {
            c[i] = m.rows[i][pos];
            c[k + i] = m.cols[i][pos];
        }
        return c;
    };
    std::size_t width = 0, target_width = 0;
    for (std::size_t i = 0; i < k; ++i) {
        width = std::max({width, canonical.rows[i].max_support(), canonical.cols[i].max_support()});
        target_width = std::max({target_width, target.rows[i].max_support(), target.cols[i].max_support()});
    }
    std::map<std::vector<unsigned>, std::size_t> index_of;
    for (std::size_t j = 1; j <= width; ++j) index_of.emplace(column(canonical, j), j);

    const std::vector<unsigned> zero(2 * k, 0);
    std::vector<SubsElement::Set> sets(width);
    for (std::size_t l = 1; l <= target_width; ++l) {
        auto c = column(target, l);
        if (c == zero) continue;
        auto it = index_of.find(c);
        if (it == index_of.end()) throw std::invalid_argument("orbit_element: target column neither starts nor ends with zeros");
        sets[it->second - 1].push_back(l);
    }
    return SubsElement(std::move(sets));
}

}  // namespace brank
