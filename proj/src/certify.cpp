// SPDX-License-Identifier: MIT
#include "brank/certify.hpp"

#include "brank/equations.hpp"
#include "brank/parallel.hpp"
#include "brank/random.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace brank {

namespace {

unsigned alphabet_for(const Shape& dims) {
    std::size_t n = 2;
    for (std::size_t d : dims) n = std::max(n, d);
    return static_cast<unsigned>(n);
}

/// Word carrying the row-major index `linear` over `modes`.
Word word_at(std::size_t linear, std::span<const std::size_t> modes, const Shape& dims, unsigned alphabet) {
    std::vector<Word::Entry> entries;
    for (std::size_t i = modes.size(); i-- > 0;) {
        const std::size_t d = dims[modes[i]];
        const std::size_t sym = linear % d;
        linear /= d;
        if (sym != 0) entries.emplace_back(modes[i] + 1, static_cast<unsigned>(sym));
    }
    std::reverse(entries.begin(), entries.end());
    return Word(alphabet, std::move(entries));
}

std::vector<std::size_t> complement(std::span<const std::size_t> modes, std::size_t p) {
    std::vector<std::size_t> out;
    for (std::size_t m = 0; m < p; ++m)
        if (std::find(modes.begin(), modes.end(), m) == modes.end()) out.push_back(m);
    return out;
}

/// Row modes of each "flattening" to test. Tensors with fewer than two modes
/// are viewed as a single column.
std::vector<std::vector<std::size_t>> test_partitions(std::size_t p) {
    if (p >= 2) return bipartitions(p);
    std::vector<std::size_t> all(p);
    std::iota(all.begin(), all.end(), 0);
    return {all};
}

template <class T>
Matrix<T> partition_matrix(const BasicTensor<T>& t, const std::vector<std::size_t>& rows) {
    if (t.order() >= 2) return flatten_matrix(t, rows);
    return Matrix<T>(t.size(), 1, std::vector<T>(t.entries().begin(), t.entries().end()));
}

MinorSpec spec_from_pivots(const std::vector<std::size_t>& prow, const std::vector<std::size_t>& pcol,
                           const std::vector<std::size_t>& row_modes, const Shape& dims) {
    const unsigned n = alphabet_for(dims);
    const auto col_modes = complement(row_modes, dims.size());
    MinorSpec spec;
    for (std::size_t r : prow) spec.rows.push_back(word_at(r, row_modes, dims, n));
    for (std::size_t c : pcol) spec.cols.push_back(word_at(c, col_modes, dims, n));
    return spec;
}

bool strassen_applicable(const Shape& dims, std::size_t k) {
    if (dims.size() != 3) return false;
    for (std::size_t m = 0; m < 3; ++m) {
        if (dims[m] != 3) continue;
        const std::size_t a = dims[(m + 1) % 3], b = dims[(m + 2) % 3];
        if (a == b && a >= 2 && 2 * k + 1 <= 3 * a) return true;
    }
    return false;
}

CertReport complete_test(const QTensor& t, std::size_t k) {
    CertReport report;
    report.k = k;
    if (auto ev = find_minor_violation(t, k)) {
        report.verdict = Verdict::violated;
        report.check = "flattening_minor";
        report.minor = std::move(ev);
    } else {
        report.verdict = Verdict::certified;
        report.passed = true;
    }
    return report;
}

}  // namespace

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::certified: return "certified";
        case Verdict::violated: return "violated";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::size_t flattening_rank_bound(const QTensor& t) {
    if (t.is_zero()) return 0;
    std::size_t best = 1;
    if (t.order() < 2) return best;
    for (const auto& rows : bipartitions(t.order())) best = std::max(best, rank(flatten_matrix(t, rows)));
    return best;
}

std::size_t flattening_rank_bound(const FTensor& t, double tol) {
    if (t.order() < 2) return frobenius_norm(t) > 0.0 ? 1 : 0;
    std::size_t best = 0;
    for (const auto& rows : bipartitions(t.order())) best = std::max(best, numerical_rank(flatten_matrix(t, rows), tol));
    return best;
}

std::optional<MinorEvidence> flattening_violation(const QTensor& t, const std::vector<std::size_t>& row_modes,
                                                  std::size_t k) {
    const QMatrix m = partition_matrix(t, row_modes);
    if (std::min(m.rows(), m.cols()) <= k) return std::nullopt;
    const PivotedRank pr = rank_with_pivots(m);
    if (pr.rank <= k) return std::nullopt;
    const auto cut = static_cast<std::ptrdiff_t>(k + 1);
    std::vector<std::size_t> prow(pr.pivot_rows.begin(), pr.pivot_rows.begin() + cut);
    std::vector<std::size_t> pcol(pr.pivot_cols.begin(), pr.pivot_cols.begin() + cut);
    MinorEvidence ev;
    ev.row_modes = row_modes;
    ev.spec = spec_from_pivots(prow, pcol, row_modes, t.dims());
    ev.value = minor_value(ev.spec, t);
    if (sgn(ev.value) == 0) throw std::logic_error("pivot minor vanished");
    ev.magnitude = std::fabs(to_double(ev.value));
    return ev;
}

std::optional<MinorEvidence> find_minor_violation(const QTensor& t, std::size_t k) {
    for (const auto& rows : test_partitions(t.order()))
        if (auto ev = flattening_violation(t, rows, k)) return ev;
    return std::nullopt;
}

CertReport test_rank_le_1(const QTensor& t) { return complete_test(t, 1); }

CertReport test_brank_le_2(const QTensor& t) { return complete_test(t, 2); }

CertReport direct_test(const QTensor& t, std::size_t k) {
    if (k <= 2) return complete_test(t, k);
    CertReport report;
    report.k = k;
    if (auto ev = find_minor_violation(t, k)) {
        report.verdict = Verdict::violated;
        report.check = "flattening_minor";
        report.minor = std::move(ev);
        return report;
    }
    if (strassen_applicable(t.dims(), k)) {
        const StrassenValue sv = strassen_eval(t);
        if (sgn(sv.value) != 0) {
            report.verdict = Verdict::violated;
            report.check = "strassen";
            report.strassen_value = sv.value;
            return report;
        }
    }
    report.verdict = Verdict::inconclusive;
    report.passed = true;
    return report;
}

CertReport numerical_flattening_test(const FTensor& t, std::size_t k, double threshold) {
    CertReport report;
    report.k = k;
    report.numerical = true;
    for (const auto& rows : test_partitions(t.order())) {
        const FMatrix m = partition_matrix(t, rows);
        const auto s = singular_values(m);
        const double residual = (k < s.size() && s[0] > 0.0) ? s[k] / s[0] : 0.0;
        report.residuals.push_back(residual);
        if (residual <= threshold || report.minor) continue;

        // Greedy complete pivoting picks a well-conditioned (k+1)-submatrix.
        FMatrix w = m;
        std::vector<std::size_t> prow, pcol;
        std::vector<bool> used_r(m.rows(), false), used_c(m.cols(), false);
        for (std::size_t step = 0; step <= k; ++step) {
            double best = -1.0;
            std::size_t br = 0, bc = 0;
            for (std::size_t i = 0; i < w.rows(); ++i) {
                if (used_r[i]) continue;
                for (std::size_t j = 0; j < w.cols(); ++j)
                    if (!used_c[j] && std::fabs(w(i, j)) > best) {
                        best = std::fabs(w(i, j));
                        br = i;
                        bc = j;
                    }
            }
            used_r[br] = used_c[bc] = true;
            prow.push_back(br);
            pcol.push_back(bc);
            for (std::size_t i = 0; i < w.rows(); ++i) {
                if (used_r[i] || w(br, bc) == 0.0) continue;
                const double f = w(i, bc) / w(br, bc);
                for (std::size_t j = 0; j < w.cols(); ++j) w(i, j) -= f * w(br, j);
            }
        }
        std::sort(prow.begin(), prow.end());
        std::sort(pcol.begin(), pcol.end());
        MinorEvidence ev;
        ev.row_modes = rows;
        ev.spec = spec_from_pivots(prow, pcol, rows, t.dims());
        const FMatrix sub = minor_values(ev.spec, t);
        const auto ss = singular_values(sub);
        ev.magnitude = ss.empty() ? 0.0 : ss.back();
        double det = 1.0;
        for (double x : ss) det *= x;
        ev.value = Rational(det);
        report.minor = std::move(ev);
    }
    report.verdict = report.minor ? Verdict::violated : Verdict::inconclusive;
    report.check = report.minor ? "flattening_minor" : "";
    report.passed = !report.minor;
    return report;
}

std::vector<QTensor> reduce_all_same(const QTensor& t, std::size_t n_target, std::size_t trials, std::uint64_t seed) {
    if (n_target < 2) throw std::invalid_argument("reduce_all_same: target dimension must be at least 2");
    std::vector<QTensor> out;
    out.reserve(trials);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::vector<std::optional<QMatrix>> maps;
        for (std::size_t mode = 0; mode < t.order(); ++mode) {
            Rng rng = make_rng(seed, StreamKind::reduction, {trial, mode});
            QMatrix a(n_target, t.dims()[mode]);
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = Rational(uniform_int(rng, -10, 10));
            maps.emplace_back(std::move(a));
        }
        out.push_back(mode_apply(t, maps));
    }
    return out;
}

std::size_t default_p0_raw(std::size_t k) {
    const std::size_t lg = static_cast<std::size_t>(std::bit_width(k + 1)) - 1;
    return 2 * (k + 1) * lg;
}

std::size_t default_p0(std::size_t k) { return std::max<std::size_t>(3, default_p0_raw(k)); }

std::vector<std::vector<std::size_t>> colex_subsets(std::size_t p, std::size_t size) {
    std::vector<std::vector<std::size_t>> out;
    if (size > p) return out;
    std::vector<std::size_t> s(size);
    std::iota(s.begin(), s.end(), 0);
    while (true) {
        out.push_back(s);
        // Colex successor: bump the lowest element that can move up.
        std::size_t i = 0;
        while (i < size && s[i] + 1 == (i + 1 < size ? s[i + 1] : p)) ++i;
        if (i == size) break;
        ++s[i];
        for (std::size_t j = 0; j < i; ++j) s[j] = j;
    }
    return out;
}

std::vector<std::vector<Rational>> contraction_covectors(const QTensor& t, std::span<const std::size_t> modes,
                                                         const TestConfig& config, std::size_t subset_index,
                                                         std::size_t trial) {
    Rng rng = make_rng(config.seed, StreamKind::contraction, {subset_index, trial});
    std::vector<std::vector<Rational>> out;
    for (std::size_t m : modes) {
        std::vector<long> v(t.dims()[m]);
        do {
            for (auto& x : v) x = uniform_int(rng, -config.coeff_bound, config.coeff_bound);
        } while (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; }));
        out.emplace_back(v.begin(), v.end());
    }
    return out;
}

CertReport random_contraction_test(const QTensor& t, const TestConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("trials must be at least 1");
    const std::size_t p = t.order();
    const std::size_t p0 = config.p0.value_or(default_p0(config.k));
    if (p <= p0) {
        CertReport report = direct_test(t, config.k);
        report.stats.p0 = p0;
        return report;
    }
    const auto subsets = colex_subsets(p, p - p0);
    const std::size_t tasks = subsets.size() * config.trials;
    std::atomic<std::size_t> first(tasks);
    std::vector<std::optional<CertReport>> found(tasks);
    parallel_for(tasks, config.threads, [&](std::size_t task) {
        if (task > first.load()) return;
        const std::size_t s = task / config.trials, trial = task % config.trials;
        auto cov = contraction_covectors(t, subsets[s], config, s, trial);
        CertReport inner = direct_test(contract_pure(t, std::span<const std::size_t>(subsets[s]), cov), config.k);
        if (inner.verdict != Verdict::violated) return;
        inner.contraction = ContractionEvidence{subsets[s], std::move(cov), s, trial};
        found[task] = std::move(inner);
        std::size_t cur = first.load();
        while (task < cur && !first.compare_exchange_weak(cur, task)) {
        }
    });

    CertReport report;
    const std::size_t hit = first.load();
    if (hit < tasks) report = std::move(*found[hit]);
    else {
        report.verdict = Verdict::inconclusive;
        report.passed = true;
    }
    report.k = config.k;
    report.stats = TrialStats{true, p0, subsets.size(), config.trials, hit < tasks ? hit + 1 : tasks};
    return report;
}

bool witness_reproduces(const QTensor& t, const CertReport& report) {
    if (report.verdict != Verdict::violated) return false;
    QTensor target = t;
    if (report.contraction) {
        const auto& c = *report.contraction;
        target = contract_pure(t, std::span<const std::size_t>(c.modes), c.covectors);
    }
    if (report.check == "strassen") {
        if (!report.strassen_value) return false;
        const Rational v = strassen_eval(target).value;
        return sgn(v) != 0 && v == *report.strassen_value;
    }
    if (!report.minor) return false;
    const MinorSpec& spec = report.minor->spec;
    const Rational v = spec.rows.size() <= 6 ? eval_poly(minor_poly(spec), target) : minor_value(spec, target);
    return sgn(v) != 0 && v == report.minor->value;
}

std::vector<CertReport> certify_batch(const std::vector<QTensor>& tensors, const TestConfig& config) {
    std::vector<CertReport> out(tensors.size());
    TestConfig inner = config;
    inner.threads = 1;
    parallel_for(tensors.size(), config.threads, [&](std::size_t i) {
        out[i] = config.p0 ? random_contraction_test(tensors[i], inner) : direct_test(tensors[i], config.k);
    });
    return out;
}

}  // namespace brank
