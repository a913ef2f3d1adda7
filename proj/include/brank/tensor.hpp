// SPDX-License-Identifier: MIT
#pragma once

#include "brank/linalg.hpp"
#include "brank/scalar.hpp"
#include "brank/words.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace brank {

using Shape = std::vector<std::size_t>;

/// Dense tensor in row-major order (last mode fastest). Order 0 is a scalar
/// holding one entry; it only arises from contracting every mode.
template <class T>
class BasicTensor {
public:
    BasicTensor() : entries_(1, T(0)) {}

    explicit BasicTensor(Shape dims) : dims_(std::move(dims)) {
        check_dims();
        entries_.assign(volume(dims_), T(0));
    }

    BasicTensor(Shape dims, std::vector<T> entries) : dims_(std::move(dims)), entries_(std::move(entries)) {
        check_dims();
        if (entries_.size() != volume(dims_)) throw std::invalid_argument("tensor entry count does not match its dims");
    }

    static BasicTensor scalar(T value) {
        BasicTensor t;
        t.entries_[0] = std::move(value);
        return t;
    }

    [[nodiscard]] const Shape& dims() const { return dims_; }
    [[nodiscard]] std::size_t order() const { return dims_.size(); }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] std::span<const T> entries() const { return entries_; }

    T& operator[](std::size_t linear) { return entries_[linear]; }
    const T& operator[](std::size_t linear) const { return entries_[linear]; }

    [[nodiscard]] std::size_t linear_index(std::span<const std::size_t> index) const {
        if (index.size() != dims_.size()) throw std::invalid_argument("index has wrong number of modes");
        std::size_t lin = 0;
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            if (index[i] >= dims_[i]) throw std::out_of_range("tensor index out of range");
            lin = lin * dims_[i] + index[i];
        }
        return lin;
    }

    [[nodiscard]] std::vector<std::size_t> multi_index(std::size_t linear) const {
        std::vector<std::size_t> idx(dims_.size());
        for (std::size_t i = dims_.size(); i-- > 0;) {
            idx[i] = linear % dims_[i];
            linear /= dims_[i];
        }
        return idx;
    }

    const T& at(std::span<const std::size_t> index) const { return entries_[linear_index(index)]; }
    T& at(std::span<const std::size_t> index) { return entries_[linear_index(index)]; }
    const T& at(std::initializer_list<std::size_t> index) const { return at(std::span(index.begin(), index.size())); }
    T& at(std::initializer_list<std::size_t> index) { return at(std::span(index.begin(), index.size())); }

    [[nodiscard]] bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const T& x) { return brank::is_zero(x); });
    }

    friend bool operator==(const BasicTensor&, const BasicTensor&) = default;

    static std::size_t volume(const Shape& dims) {
        std::size_t v = 1;
        for (std::size_t d : dims) v *= d;
        return v;
    }

private:
    void check_dims() const {
        for (std::size_t d : dims_)
            if (d == 0) throw std::invalid_argument("tensor dims must be positive");
    }

    Shape dims_;
    std::vector<T> entries_;
};

using QTensor = BasicTensor<Rational>;
using FTensor = BasicTensor<double>;

/// Sum of pure tensors; terms[t][j] is the mode-j vector of term t.
template <class T>
struct PureFactorization {
    std::vector<std::vector<std::vector<T>>> terms;
    [[nodiscard]] std::size_t rank() const { return terms.size(); }
};

// ---------------------------------------------------------------------------
// Elementwise helpers
// ---------------------------------------------------------------------------

template <class T>
BasicTensor<T> operator+(const BasicTensor<T>& a, const BasicTensor<T>& b) {
    if (a.dims() != b.dims()) throw std::invalid_argument("tensor sum shape mismatch");
    std::vector<T> e(a.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a[i] + b[i];
    return BasicTensor<T>(a.dims(), std::move(e));
}

template <class T>
BasicTensor<T> operator-(const BasicTensor<T>& a, const BasicTensor<T>& b) {
    if (a.dims() != b.dims()) throw std::invalid_argument("tensor difference shape mismatch");
    std::vector<T> e(a.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a[i] - b[i];
    return BasicTensor<T>(a.dims(), std::move(e));
}

template <class T>
BasicTensor<T> operator*(const T& c, const BasicTensor<T>& a) {
    std::vector<T> e(a.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = c * a[i];
    return BasicTensor<T>(a.dims(), std::move(e));
}

FTensor to_float(const QTensor& t);
double frobenius_norm(const FTensor& t);

// ---------------------------------------------------------------------------
// Core operations
// ---------------------------------------------------------------------------

/// Outer product: entry (i1..ip) = v1(i1) * ... * vp(ip).
template <class T>
BasicTensor<T> pure(const std::vector<std::vector<T>>& vectors) {
    if (vectors.empty()) throw std::invalid_argument("pure needs at least one vector");
    Shape dims;
    for (const auto& v : vectors) {
        if (v.empty()) throw std::invalid_argument("pure: empty vector");
        dims.push_back(v.size());
    }
    BasicTensor<T> t(dims);
    std::vector<std::size_t> idx(dims.size(), 0);
    for (std::size_t lin = 0; lin < t.size(); ++lin) {
        T prod = vectors[0][idx[0]];
        for (std::size_t j = 1; j < dims.size() && !is_zero(prod); ++j) prod *= vectors[j][idx[j]];
        t[lin] = prod;
        for (std::size_t j = dims.size(); j-- > 0;) {
            if (++idx[j] < dims[j]) break;
            idx[j] = 0;
        }
    }
    return t;
}

template <class T>
BasicTensor<T> expand(const Shape& dims, const PureFactorization<T>& f) {
    BasicTensor<T> t(dims);
    for (const auto& term : f.terms) t = t + pure(term);
    return t;
}

/// Matrix of shape (prod of dims in `row_modes`) x (prod of the rest). Row and
/// column indices are row-major over their modes in ascending mode order.
/// Modes are 0-based.
template <class T>
Matrix<T> flatten_matrix(const BasicTensor<T>& t, std::span<const std::size_t> row_modes) {
    const std::size_t p = t.order();
    std::vector<bool> in_rows(p, false);
    for (std::size_t m : row_modes) {
        if (m >= p) throw std::invalid_argument("flatten: mode out of range");
        if (in_rows[m]) throw std::invalid_argument("flatten: repeated mode");
        in_rows[m] = true;
    }
    if (row_modes.empty() || row_modes.size() == p) throw std::invalid_argument("flatten: modes must be a nonempty proper subset");
    std::size_t rows = 1, cols = 1;
    for (std::size_t m = 0; m < p; ++m) (in_rows[m] ? rows : cols) *= t.dims()[m];
    Matrix<T> out(rows, cols);
    std::vector<std::size_t> idx(p, 0);
    for (std::size_t lin = 0; lin < t.size(); ++lin) {
        std::size_t r = 0, c = 0;
        for (std::size_t m = 0; m < p; ++m) {
            if (in_rows[m]) r = r * t.dims()[m] + idx[m];
            else c = c * t.dims()[m] + idx[m];
        }
        out(r, c) = t[lin];
        for (std::size_t j = p; j-- > 0;) {
            if (++idx[j] < t.dims()[j]) break;
            idx[j] = 0;
        }
    }
    return out;
}

template <class T>
BasicTensor<T> matrix_to_tensor(const Matrix<T>& m) {
    return BasicTensor<T>({m.rows(), m.cols()}, std::vector<T>(m.data().begin(), m.data().end()));
}

template <class T>
Matrix<T> tensor_to_matrix(const BasicTensor<T>& t) {
    if (t.order() != 2) throw std::invalid_argument("expected a 2-mode tensor");
    return Matrix<T>(t.dims()[0], t.dims()[1], std::vector<T>(t.entries().begin(), t.entries().end()));
}

/// Flattening as a 2-mode tensor.
template <class T>
BasicTensor<T> flatten(const BasicTensor<T>& t, std::span<const std::size_t> row_modes) {
    return matrix_to_tensor(flatten_matrix(t, row_modes));
}

/// Exact rank for rationals; for floats, singular values above
/// tol * max(rows, cols) * sigma_max with tol defaulting to 1e-9.
/// A tolerance given for an exact matrix is ignored with a warning.
std::size_t matrix_rank(const QTensor& m, std::optional<double> tol = std::nullopt);
std::size_t matrix_rank(const FTensor& m, std::optional<double> tol = std::nullopt);

/// Removes mode j: entry = sum_i phi(i) * T(.., i, ..).
template <class T>
BasicTensor<T> contract(const BasicTensor<T>& t, std::size_t mode, std::span<const T> phi) {
    if (mode >= t.order()) throw std::invalid_argument("contract: mode out of range");
    const std::size_t n = t.dims()[mode];
    if (phi.size() != n) throw std::invalid_argument("contract: covector length does not match the mode");
    std::size_t outer = 1, inner = 1;
    for (std::size_t m = 0; m < mode; ++m) outer *= t.dims()[m];
    for (std::size_t m = mode + 1; m < t.order(); ++m) inner *= t.dims()[m];
    Shape dims = t.dims();
    dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(mode));
    std::vector<T> out(outer * inner, T(0));
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t i = 0; i < n; ++i) {
            if (is_zero(phi[i])) continue;
            const std::size_t base = (o * n + i) * inner;
            for (std::size_t r = 0; r < inner; ++r)
                if (!is_zero(t[base + r])) out[o * inner + r] += phi[i] * t[base + r];
        }
    if (dims.empty()) return BasicTensor<T>::scalar(std::move(out[0]));
    return BasicTensor<T>(std::move(dims), std::move(out));
}

template <class T>
BasicTensor<T> contract(const BasicTensor<T>& t, std::size_t mode, const std::vector<T>& phi) {
    return contract(t, mode, std::span<const T>(phi));
}

/// Contraction along the pure tensor of one covector per mode in `modes`.
template <class T>
BasicTensor<T> contract_pure(const BasicTensor<T>& t, std::span<const std::size_t> modes,
                             const std::vector<std::vector<T>>& covectors) {
    if (modes.size() != covectors.size()) throw std::invalid_argument("contract_pure: one covector per mode");
    std::vector<std::size_t> order(modes.size());
    std::iota(order.begin(), order.end(), 0);
    // Highest mode first so the remaining mode indices stay valid.
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return modes[a] > modes[b]; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (modes[order[i]] == modes[order[i - 1]]) throw std::invalid_argument("contract_pure: repeated mode");
    BasicTensor<T> out = t;
    for (std::size_t i : order) out = contract(out, modes[i], std::span<const T>(covectors[i]));
    return out;
}

/// Applies maps[i] (n_i columns) to mode i; an empty optional is the identity.
template <class T>
BasicTensor<T> mode_apply(const BasicTensor<T>& t, const std::vector<std::optional<Matrix<T>>>& maps) {
    if (maps.size() != t.order()) throw std::invalid_argument("mode_apply: one map per mode");
    BasicTensor<T> cur = t;
    for (std::size_t mode = 0; mode < maps.size(); ++mode) {
        if (!maps[mode]) continue;
        const Matrix<T>& a = *maps[mode];
        const std::size_t n = cur.dims()[mode];
        if (a.cols() != n) throw std::invalid_argument("mode_apply: map has wrong number of columns");
        if (a.rows() == 0) throw std::invalid_argument("mode_apply: map has no rows");
        std::size_t outer = 1, inner = 1;
        for (std::size_t m = 0; m < mode; ++m) outer *= cur.dims()[m];
        for (std::size_t m = mode + 1; m < cur.order(); ++m) inner *= cur.dims()[m];
        Shape dims = cur.dims();
        dims[mode] = a.rows();
        BasicTensor<T> next(dims);
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t r = 0; r < a.rows(); ++r)
                for (std::size_t i = 0; i < n; ++i) {
                    if (is_zero(a(r, i))) continue;
                    const std::size_t src = (o * n + i) * inner, dst = (o * a.rows() + r) * inner;
                    for (std::size_t x = 0; x < inner; ++x) next[dst + x] += a(r, i) * cur[src + x];
                }
        cur = std::move(next);
    }
    return cur;
}

/// Permutes tensor factors: source mode j moves to position perm[j], so
/// v_1 ⊗ ... ⊗ v_p maps to v_{perm^-1(1)} ⊗ ... ⊗ v_{perm^-1(p)} and the
/// result entry at (i_1, ..., i_p) is T(i_{perm(1)}, ..., i_{perm(p)}).
/// permute(a ∘ b) = permute(a) ∘ permute(b).
template <class T>
BasicTensor<T> permute_modes(const BasicTensor<T>& t, std::span<const std::size_t> perm) {
    const std::size_t p = t.order();
    if (perm.size() != p) throw std::invalid_argument("permute_modes: wrong permutation length");
    std::vector<bool> seen(p, false);
    for (std::size_t x : perm) {
        if (x >= p || seen[x]) throw std::invalid_argument("permute_modes: not a permutation");
        seen[x] = true;
    }
    Shape dims(p);
    for (std::size_t j = 0; j < p; ++j) dims[perm[j]] = t.dims()[j];
    BasicTensor<T> out(dims);
    std::vector<std::size_t> src(p, 0), dst(p);
    for (std::size_t lin = 0; lin < t.size(); ++lin) {
        for (std::size_t j = 0; j < p; ++j) dst[perm[j]] = src[j];
        out.at(dst) = t[lin];
        for (std::size_t j = p; j-- > 0;) {
            if (++src[j] < t.dims()[j]) break;
            src[j] = 0;
        }
    }
    return out;
}

/// T ⊗ e_0: appends a mode of size n whose slice 0 is T and other slices zero.
template <class T>
BasicTensor<T> embed_tau(const BasicTensor<T>& t, std::size_t n) {
    if (n == 0) throw std::invalid_argument("embed_tau: ambient size must be positive");
    Shape dims = t.dims();
    dims.push_back(n);
    BasicTensor<T> out(dims);
    for (std::size_t lin = 0; lin < t.size(); ++lin) out[lin * n] = t[lin];
    return out;
}

/// Ambient size taken from the last mode.
template <class T>
BasicTensor<T> embed_tau(const BasicTensor<T>& t) {
    if (t.order() == 0) throw std::invalid_argument("embed_tau: scalar has no ambient size");
    return embed_tau(t, t.dims().back());
}

/// Contraction of the last mode with x_0 = (1, 0, ..., 0). A 1-mode tensor
/// projects to a scalar (order-0) tensor.
template <class T>
BasicTensor<T> project_pi(const BasicTensor<T>& t) {
    if (t.order() == 0) throw std::invalid_argument("project_pi: nothing to project");
    std::vector<T> x0(t.dims().back(), T(0));
    x0[0] = T(1);
    return contract(t, t.order() - 1, std::span<const T>(x0));
}

/// Coordinate x_w of T viewed inside the infinite tensor power: the entry at
/// (w(1), ..., w(p)) when w vanishes beyond p, and 0 otherwise.
template <class T>
T coord(const BasicTensor<T>& t, const Word& w) {
    std::vector<std::size_t> idx(t.order(), 0);
    for (const auto& [pos, sym] : w.entries()) {
        if (sym >= w.alphabet()) throw std::invalid_argument("coord: symbol outside alphabet");
        if (pos > t.order()) return T(0);
        if (sym >= t.dims()[pos - 1]) throw std::invalid_argument("coord: symbol exceeds mode dimension");
        idx[pos - 1] = sym;
    }
    return t.at(idx);
}

/// Word with w(j) = index[j - 1].
Word index_word(std::span<const std::size_t> index, unsigned alphabet);

/// Bipartitions {I, J} of modes 0..p-1 with mode 0 in I and J nonempty,
/// in increasing bitmask order of I.
std::vector<std::vector<std::size_t>> bipartitions(std::size_t p);

/// Tensor that is a sum of r pure tensors with integer factor entries uniform in
/// [-bound, bound]; zero factor vectors are resampled.
std::pair<QTensor, PureFactorization<Rational>> random_rank(const Shape& dims, std::size_t r, std::uint64_t seed,
                                                            long coeff_bound = 10);

}  // namespace brank
