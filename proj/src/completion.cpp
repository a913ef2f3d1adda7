// SPDX-License-Identifier: MIT
#include "brank/completion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace brank {

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

unsigned alphabet_for(const Shape& dims) {
    std::size_t n = 2;
    for (std::size_t d : dims) n = std::max(n, d);
    return static_cast<unsigned>(n);
}

std::size_t beyond(const Word& w, std::size_t p) {
    std::size_t c = 0;
    for (const auto& e : w.entries())
        if (e.first > p) ++c;
    return c;
}

const Rational& lookup(const KnownValues& known, const Word& w) {
    const auto it = known.find(w);
    if (it == known.end()) throw std::logic_error("completion: prerequisite x_" + w.to_digits() + " is not known yet");
    return it->second;
}

double det_float(FMatrix m) {
    const std::size_t n = m.rows();
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(m(r, c)) > std::fabs(m(piv, c))) piv = r;
        if (m(piv, c) == 0.0) return 0.0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

/// Calls f(row_modes, row pick, col pick, submatrix) for every (k+1)-minor of
/// every flattening accepted by `keep`; stops when f returns false.
template <class T, class Keep, class F>
void for_each_minor(const BasicTensor<T>& t, std::size_t k, Keep keep, F f) {
    if (t.order() < 2) return;
    for (const auto& rows : bipartitions(t.order())) {
        const Matrix<T> m = flatten_matrix(t, rows);
        if (m.rows() <= k || m.cols() <= k || !keep(m)) continue;
        std::vector<std::size_t> ri(k + 1), ci(k + 1);
        std::iota(ri.begin(), ri.end(), 0);
        do {
            std::iota(ci.begin(), ci.end(), 0);
            do {
                Matrix<T> sub(k + 1, k + 1);
                for (std::size_t a = 0; a <= k; ++a)
                    for (std::size_t b = 0; b <= k; ++b) sub(a, b) = m(ri[a], ci[b]);
                if (!f(rows, ri, ci, sub)) return;
            } while (next_combination(ci, m.cols()));
        } while (next_combination(ri, m.rows()));
    }
}

}  // namespace

std::vector<std::size_t> Pivot::col_positions() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 1; j <= p; ++j)
        if (!std::binary_search(row_positions.begin(), row_positions.end(), j)) out.push_back(j);
    return out;
}

void Pivot::validate() const {
    if (rows.empty() || rows.size() != cols.size()) throw std::invalid_argument("pivot needs k >= 1 row and column words");
    if (!std::is_sorted(row_positions.begin(), row_positions.end()) ||
        std::adjacent_find(row_positions.begin(), row_positions.end()) != row_positions.end())
        throw std::invalid_argument("pivot: I must be sorted without repeats");
    for (std::size_t j : row_positions)
        if (j < 1 || j > p) throw std::invalid_argument("pivot: I must lie in [p]");
    const auto in_i = [&](std::size_t j) { return std::binary_search(row_positions.begin(), row_positions.end(), j); };
    for (const Word& w : rows)
        for (const auto& e : w.entries())
            if (!in_i(e.first)) throw std::invalid_argument("pivot: row word x_" + w.to_digits() + " is not supported in I");
    for (const Word& w : cols)
        for (const auto& e : w.entries())
            if (e.first > p || in_i(e.first))
                throw std::invalid_argument("pivot: column word x_" + w.to_digits() + " is not supported in J");
    spec().validate();
}

BoundaryData extract_boundary(const QTensor& t, std::size_t p) {
    const std::size_t q = t.order();
    if (q < p || q == 0) throw std::invalid_argument("extract_boundary: tensor order must be at least p");
    const std::size_t n = t.dims()[0];
    for (std::size_t d : t.dims())
        if (d != n) throw std::invalid_argument("extract_boundary: all modes must have the same size");
    BoundaryData b;
    b.p = p;
    b.n = n;
    b.q = q;
    b.core = QTensor(Shape(p, n));
    std::vector<std::size_t> idx(q, 0);
    for (std::size_t lin = 0; lin < b.core.size(); ++lin) {
        const auto c = b.core.multi_index(lin);
        std::copy(c.begin(), c.end(), idx.begin());
        b.core[lin] = t.at(idx);
    }
    for (std::size_t pos = p + 1; pos <= q; ++pos) {
        QTensor slab(Shape(p + 1, n));
        std::fill(idx.begin(), idx.end(), 0);
        for (std::size_t lin = 0; lin < slab.size(); ++lin) {
            const auto c = slab.multi_index(lin);
            std::copy(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(p), idx.begin());
            idx[pos - 1] = c[p];
            slab[lin] = t.at(idx);
        }
        b.slabs.push_back(std::move(slab));
    }
    return b;
}

std::vector<BoundaryViolation> validate_boundary(const BoundaryData& b) {
    if (b.core.dims() != Shape(b.p, b.n)) throw std::invalid_argument("boundary core has the wrong shape");
    if (b.q < b.p || b.slabs.size() != b.q - b.p) throw std::invalid_argument("boundary needs one slab per position p+1..q");
    for (const auto& s : b.slabs)
        if (s.dims() != Shape(b.p + 1, b.n)) throw std::invalid_argument("boundary slab has the wrong shape");
    std::vector<BoundaryViolation> out;
    for (std::size_t lin = 0; lin < b.core.size(); ++lin) {
        BoundaryViolation v;
        for (std::size_t j = 0; j < b.slabs.size(); ++j)
            if (b.slabs[j][lin * b.n] != b.core[lin]) v.positions.push_back(b.p + 1 + j);
        if (v.positions.empty()) continue;
        v.word = index_word(b.core.multi_index(lin), static_cast<unsigned>(std::max<std::size_t>(2, b.n)));
        out.push_back(std::move(v));
    }
    return out;
}

KnownValues boundary_values(const BoundaryData& b) {
    const auto n = static_cast<unsigned>(std::max<std::size_t>(2, b.n));
    KnownValues known;
    for (std::size_t lin = 0; lin < b.core.size(); ++lin) known.emplace(index_word(b.core.multi_index(lin), n), b.core[lin]);
    for (std::size_t j = 0; j < b.slabs.size(); ++j) {
        const QTensor& slab = b.slabs[j];
        for (std::size_t lin = 0; lin < slab.size(); ++lin) {
            auto c = slab.multi_index(lin);
            const std::size_t sym = c.back();
            if (sym == 0) continue;
            c.pop_back();
            known.emplace(index_word(c, n).with(b.p + 1 + j, static_cast<unsigned>(sym)), slab[lin]);
        }
    }
    return known;
}

std::pair<Word, Word> split_word(const Pivot& pivot, const Word& w) {
    const std::size_t q = w.max_support();
    const auto& in_i = pivot.row_positions;
    Word prime = w.restricted([&](std::size_t j) {
        return j == q || (j <= pivot.p && !std::binary_search(in_i.begin(), in_i.end(), j));
    });
    Word rest = w.restricted([&](std::size_t j) {
        return j != q && (j > pivot.p || std::binary_search(in_i.begin(), in_i.end(), j));
    });
    return {rest, prime};
}

MinorSpec extended_spec(const Pivot& pivot, const Word& w) {
    if (beyond(w, pivot.p) < 2) throw std::invalid_argument("extended_spec: x_" + w.to_digits() + " is a boundary entry");
    auto [rest, prime] = split_word(pivot, w);
    MinorSpec spec = pivot.spec();
    spec.rows.push_back(rest);
    spec.cols.push_back(prime);
    return spec;
}

Rational complete_entry(const KnownValues& known, const Pivot& pivot, const Word& w) {
    const MinorSpec spec = extended_spec(pivot, w);
    const std::size_t k = pivot.k();
    QMatrix m(k + 1, k + 1), piv(k, k);
    for (std::size_t i = 0; i <= k; ++i)
        for (std::size_t j = 0; j <= k; ++j) {
            if (i == k && j == k) continue;
            m(i, j) = lookup(known, spec.rows[i] + spec.cols[j]);
            if (i < k && j < k) piv(i, j) = m(i, j);
        }
    const Rational d = determinant(piv);
    if (sgn(d) == 0) throw ZeroPivotError("completion: pivot minor vanishes while completing x_" + w.to_digits(), w);
    Rational x = -determinant(m) / d;
    x.canonicalize();
    return x;
}

CompletionFormula completion_formula(const Pivot& pivot, const Word& w) {
    const MinorSpec spec = extended_spec(pivot, w);
    CompletionFormula f;
    f.denominator = minor_poly(pivot.spec());
    f.numerator = SparsePoly::variable(w) * f.denominator - minor_poly(spec);
    return f;
}

std::vector<Word> completion_order(std::size_t p, std::size_t q, unsigned n) {
    std::vector<Word> out;
    QTensor shape(Shape(q, n));
    for (std::size_t lin = 0; lin < shape.size(); ++lin) {
        Word w = index_word(shape.multi_index(lin), std::max(2u, n));
        if (beyond(w, p) >= 2) out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end(), [p](const Word& a, const Word& b) {
        const std::size_t ba = beyond(a, p), bb = beyond(b, p);
        if (ba != bb) return ba < bb;
        if (a.max_support() != b.max_support()) return a.max_support() < b.max_support();
        return a < b;
    });
    return out;
}

QTensor complete_tensor(const BoundaryData& b, const Pivot& pivot, std::size_t k) {
    if (pivot.k() != k) throw std::invalid_argument("complete_tensor: pivot size differs from k");
    if (pivot.p != b.p) throw std::invalid_argument("complete_tensor: pivot and boundary disagree on p");
    pivot.validate();
    if (!validate_boundary(b).empty()) throw std::invalid_argument("complete_tensor: boundary slabs are incompatible");
    KnownValues known = boundary_values(b);
    if (sgn(minor_value(pivot.spec(), QTensor(b.core))) == 0)
        throw ZeroPivotError("completion: pivot minor vanishes on the boundary", std::nullopt);
    for (const Word& w : completion_order(b.p, b.q, static_cast<unsigned>(b.n))) known.emplace(w, complete_entry(known, pivot, w));
    QTensor out(Shape(b.q, b.n));
    const auto n = static_cast<unsigned>(std::max<std::size_t>(2, b.n));
    for (std::size_t lin = 0; lin < out.size(); ++lin) out[lin] = lookup(known, index_word(out.multi_index(lin), n));
    return out;
}

std::vector<NonzeroMinor> verify_on_variety(const QTensor& t, std::size_t k, std::size_t limit) {
    std::vector<NonzeroMinor> out;
    if (limit == 0) return out;
    const unsigned n = alphabet_for(t.dims());
    for_each_minor(
        t, k, [k](const QMatrix& m) { return rank(m) > k; },
        [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& ri, const std::vector<std::size_t>& ci,
            const QMatrix& sub) {
            Rational d = determinant(sub);
            if (sgn(d) == 0) return true;
            std::vector<std::size_t> cols;
            for (std::size_t m = 0; m < t.order(); ++m)
                if (std::find(rows.begin(), rows.end(), m) == rows.end()) cols.push_back(m);
            const auto rw = words_on_modes(rows, t.dims(), n);
            const auto cw = words_on_modes(cols, t.dims(), n);
            NonzeroMinor nz{{rows, {}}, std::move(d)};
            for (std::size_t r : ri) nz.minor.spec.rows.push_back(rw[r]);
            for (std::size_t c : ci) nz.minor.spec.cols.push_back(cw[c]);
            out.push_back(std::move(nz));
            return out.size() < limit;
        });
    return out;
}

double verify_on_variety(const FTensor& t, std::size_t k) {
    double best = 0.0;
    for_each_minor(
        t, k, [](const FMatrix&) { return true; },
        [&](const std::vector<std::size_t>&, const std::vector<std::size_t>&, const std::vector<std::size_t>&,
            const FMatrix& sub) {
            best = std::max(best, std::fabs(det_float(sub)));
            return true;
        });
    return best;
}

}  // namespace brank
