// SPDX-License-Identifier: MIT
// Acceptance run: one PASS/FAIL line per criterion.
#include "brank/certify.hpp"
#include "brank/completion.hpp"
#include "brank/equations.hpp"
#include "brank/ideal_probe.hpp"
#include "brank/io.hpp"
#include "brank/minors.hpp"
#include "brank/parallel.hpp"
#include "brank/phylo.hpp"
#include "brank/random.hpp"
#include "brank/words.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace brank;

namespace {

constexpr std::uint64_t kMaster = 20240601;

std::uint64_t seed_for(std::uint64_t criterion, std::uint64_t family, std::uint64_t i) {
    return derive_seed(kMaster, StreamKind::generate, {criterion, family, i});
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Tally {
public:
    void check(Outcome& o, bool ok, const std::string& what) {
        if (!ok && o.pass) {
            o.pass = false;
            o.detail = "first failure: " + what + "; " + o.detail;
        }
    }
};

bool run_criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = limit_s <= 0 || secs < limit_s;
    const bool pass = o.pass && in_time;
    std::string limit = limit_s > 0 ? ", limit " + std::to_string(static_cast<int>(limit_s)) + " s" : "";
    std::printf("criterion %2d %-34s %s  %s (%.1f s%s)%s\n", id, name, pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
                limit.c_str(), in_time ? "" : " over time limit");
    std::fflush(stdout);
    return pass;
}

QTensor random_entries(const Shape& dims, std::uint64_t seed, long bound) {
    Rng rng(seed);
    QTensor t(dims);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = Rational(uniform_int(rng, -bound, bound));
    return t;
}

/// Max flattening rank by plain Gauss-Jordan.
std::size_t oracle_flattening_bound(const QTensor& t) {
    if (t.order() < 2) return t.is_zero() ? 0 : 1;
    std::size_t best = 0;
    for (const auto& rows : bipartitions(t.order())) best = std::max(best, oracle::rank(flatten_matrix(t, rows)));
    return best;
}

/// T is pure iff T(i) T(a)^(p-1) = prod_m T(a with a_m := i_m) for a nonzero entry a.
bool oracle_is_pure(const QTensor& t) {
    std::size_t anchor = t.size();
    for (std::size_t i = 0; i < t.size(); ++i)
        if (sgn(t[i]) != 0) {
            anchor = i;
            break;
        }
    if (anchor == t.size()) return true;
    const auto a = t.multi_index(anchor);
    const std::size_t p = t.order();
    Rational scale = 1;
    for (std::size_t m = 1; m < p; ++m) scale *= t[anchor];
    for (std::size_t lin = 0; lin < t.size(); ++lin) {
        const auto idx = t.multi_index(lin);
        Rational prod = 1;
        for (std::size_t m = 0; m < p; ++m) {
            auto b = a;
            b[m] = idx[m];
            prod *= t.at(b);
        }
        if (t[lin] * scale != prod) return false;
    }
    return true;
}

/// sum over modes m of a x ... x b (at m) x ... x a: border rank <= 2.
QTensor tangential(const Shape& dims, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<Rational>> a(dims.size()), b(dims.size());
    for (std::size_t m = 0; m < dims.size(); ++m)
        for (std::size_t i = 0; i < dims[m]; ++i) {
            a[m].emplace_back(uniform_int(rng, -10, 10));
            b[m].emplace_back(uniform_int(rng, -10, 10));
        }
    QTensor t(dims);
    for (std::size_t m = 0; m < dims.size(); ++m) {
        auto v = a;
        v[m] = b[m];
        t = t + pure(v);
    }
    return t;
}

bool minor_evidence_checks(const QTensor& t, const CertReport& r) {
    if (!witness_reproduces(t, r)) return false;
    if (r.contraction || !r.minor) return true;
    return oracle::det(minor_values(r.minor->spec, t)) == r.minor->value;
}

// ---------------------------------------------------------------------------

Outcome criterion_1() {
    Outcome o;
    Tally tally;
    std::size_t nonzero = 0, rank2 = 0, negative = 0;
    for (std::size_t i = 0; i < 10000; ++i) {
        const QTensor t = random_entries({2, 2, 2}, seed_for(1, 0, i), 10);
        const Rank222 r = rank_222_classify(t);
        tally.check(o, r.hyperdet == oracle::cayley(t), "hyperdet differs from the expanded formula");
        if (sgn(r.hyperdet) == 0) continue;
        ++nonzero;
        rank2 += r.complex_rank == 2;
        negative += sgn(r.hyperdet) < 0;
        tally.check(o, r.complex_rank == 2, "nonzero hyperdet but complex rank " + std::to_string(r.complex_rank));
        tally.check(o, r.real_rank == (sgn(r.hyperdet) > 0 ? 2u : 3u), "real rank does not follow the hyperdet sign");
    }
    std::size_t nonneg = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
        const auto [t, f] = random_rank({2, 2, 2}, 2, seed_for(1, 1, i));
        nonneg += sgn(hyperdet_222(t)) >= 0;
    }
    tally.check(o, nonneg == 1000, "a real rank-2 construction has negative hyperdet");
    o.detail += "rank 2 on " + std::to_string(rank2) + "/" + std::to_string(nonzero) + " nonzero-hyperdet tensors (" +
                std::to_string(negative) + " negative, real rank 3); hyperdet >= 0 on " + std::to_string(nonneg) +
                "/1000 rank-2 constructions";
    return o;
}

Shape random_shape(Rng& rng) {
    Shape dims(static_cast<std::size_t>(uniform_int(rng, 2, 4)));
    for (auto& d : dims) d = static_cast<std::size_t>(uniform_int(rng, 2, 3));
    return dims;
}

Outcome criterion_2() {
    Outcome o;
    Tally tally;
    std::size_t wrong = 0, pure_count = 0, total = 0;
    for (std::size_t r : {1u, 2u})
        for (std::size_t i = 0; i < 1000; ++i) {
            Rng rng(seed_for(2, r, i));
            const Shape dims = random_shape(rng);
            const auto [t, f] = random_rank(dims, r, seed_for(2, 10 + r, i));
            const bool pure_t = oracle_is_pure(t);
            const CertReport rep = test_rank_le_1(t);
            ++total;
            pure_count += pure_t;
            const bool ok = pure_t ? rep.verdict == Verdict::certified
                                   : rep.verdict == Verdict::violated && minor_evidence_checks(t, rep);
            wrong += !ok;
        }
    tally.check(o, wrong == 0, std::to_string(wrong) + " false verdicts");
    o.detail += std::to_string(total) + " tensors, " + std::to_string(pure_count) + " pure, " + std::to_string(wrong) +
                " false verdicts";
    return o;
}

struct C3Case {
    QTensor t;
    bool expect_violation;
};

std::vector<C3Case> criterion_3_cases(const Shape& dims, std::size_t family) {
    std::vector<C3Case> out;
    for (std::size_t i = 0; i < 500; ++i) {
        QTensor t = (i % 5 == 4) ? tangential(dims, seed_for(3, family, i))
                                 : random_rank(dims, 1 + i % 2, seed_for(3, family, i)).first;
        out.push_back({std::move(t), false});
    }
    for (std::size_t i = 0; i < 500; ++i) {
        QTensor t = random_rank(dims, 3, seed_for(3, family + 1, i)).first;
        out.push_back({std::move(t), true});
    }
    return out;
}

Outcome criterion_3() {
    Outcome o;
    Tally tally;
    std::size_t certified = 0, violated = 0, degenerate = 0;
    std::size_t family = 0;
    for (const Shape& dims : {Shape{3, 3, 3}, Shape{3, 3, 3, 3}}) {
        const auto cases = criterion_3_cases(dims, family);
        family += 2;
        std::vector<QTensor> ts;
        for (const auto& c : cases) ts.push_back(c.t);
        TestConfig cfg;
        cfg.k = 2;
        cfg.threads = resolve_threads();
        const auto reports = certify_batch(ts, cfg);
        for (std::size_t i = 0; i < cases.size(); ++i) {
            const auto& r = reports[i];
            const bool generic = oracle_flattening_bound(cases[i].t) >= 3;
            if (cases[i].expect_violation && !generic) ++degenerate;
            if (!cases[i].expect_violation) {
                tally.check(o, r.verdict == Verdict::certified, "rank-<=2 construction not certified");
                certified += r.verdict == Verdict::certified;
            } else if (generic) {
                const bool ok = r.verdict == Verdict::violated && minor_evidence_checks(cases[i].t, r);
                tally.check(o, ok, "generic rank-3 construction not violated with a valid witness");
                violated += ok;
            }
        }
    }
    o.detail += "certified " + std::to_string(certified) + "/1000 rank<=2, violated " + std::to_string(violated) +
                "/" + std::to_string(1000 - degenerate) + " generic rank-3";
    return o;
}

Outcome criterion_4() {
    Outcome o;
    Tally tally;
    std::size_t zero = 0, nonzero = 0, scaled = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        const auto [t, f] = random_rank({3, 3, 3}, 4, seed_for(4, 0, i));
        zero += sgn(strassen_eval(t).value) == 0;
        const QTensor g = random_entries({3, 3, 3}, seed_for(4, 1, i), 10);
        nonzero += sgn(strassen_eval(g).value) != 0;
    }
    for (std::size_t i = 0; i < 20; ++i) {
        const QTensor g = random_entries({3, 3, 3}, seed_for(4, 2, i), 10);
        Rng rng(seed_for(4, 3, i));
        long c = 0;
        while (c == 0) c = uniform_int(rng, -5, 5);
        Rational s(c, static_cast<long>(1 + i % 3));
        s.canonicalize();
        Rational s9 = 1;
        for (int e = 0; e < 9; ++e) s9 *= s;
        scaled += strassen_eval(s * g).value == s9 * strassen_eval(g).value;
    }
    tally.check(o, zero == 100, "nonzero value on a rank-4 tensor");
    tally.check(o, nonzero == 100, "zero value on a generic tensor");
    tally.check(o, scaled == 20, "degree-9 scaling fails");
    o.detail += "zero on " + std::to_string(zero) + "/100 rank-4, nonzero on " + std::to_string(nonzero) +
                "/100 generic, t^9 scaling " + std::to_string(scaled) + "/20";
    return o;
}

/// Degree-d monomials whose symbol counts per mode equal `weight`, probed mod two primes.
std::pair<std::size_t, std::vector<std::size_t>> weight_space_nullity(const Shape& dims, std::size_t k, std::size_t d,
                                                                      const std::vector<std::vector<std::size_t>>& weight,
                                                                      std::uint64_t seed) {
    MonomialBasis full = monomial_basis(dims, d);
    MonomialBasis basis = full;
    basis.monomials.clear();
    for (const auto& m : full.monomials) {
        std::vector<std::vector<std::size_t>> counts(dims.size());
        for (std::size_t mode = 0; mode < dims.size(); ++mode) counts[mode].assign(dims[mode], 0);
        for (std::uint32_t v : m) {
            const Word& w = full.variables[v];
            for (std::size_t mode = 0; mode < dims.size(); ++mode) ++counts[mode][w[mode + 1]];
        }
        if (counts == weight) basis.monomials.push_back(m);
    }
    const std::size_t cols = basis.size();
    const auto samples = probe_samples(dims, k, cols + cols / 2, seed);
    const QMatrix m = evaluation_matrix(basis, samples);
    std::vector<std::size_t> nullities;
    for (std::uint64_t s : {seed, seed + 1}) {
        const std::uint64_t p = random_prime(s);
        std::vector<std::uint64_t> data;
        data.reserve(m.rows() * m.cols());
        for (const auto& x : m.data()) data.push_back(reduce_mod(x, p));
        nullities.push_back(cols - rank_mod_p(std::move(data), m.rows(), m.cols(), p));
    }
    return {cols, nullities};
}

Outcome criterion_5() {
    Outcome o;
    Tally tally;
    auto probe = [&](const Shape& dims, std::size_t k, std::size_t d, std::size_t expected, const std::string& label) {
        const ProbeResult r = ideal_degree_dim(dims, k, d, 1.5, seed_for(5, k, d));
        const bool agree = r.prime_nullities.size() == 2 && r.primes.size() == 2 && r.primes[0] != r.primes[1] &&
                           r.prime_nullities[0] == r.prime_nullities[1];
        tally.check(o, agree, label + ": the two primes disagree");
        tally.check(o, r.nullity == expected, label + ": nullity " + std::to_string(r.nullity));
        return std::to_string(r.nullity);
    };
    std::string a = probe({2, 2}, 1, 2, 1, "(a)");
    std::string b = probe({2, 2, 2}, 1, 2, 9, "(b)");

    const MonomialBasis basis = monomial_basis({2, 2, 2}, 2);
    const auto minors = enumerate_minors(3, 2, 1);
    QMatrix span(minors.size(), basis.size());
    for (std::size_t i = 0; i < minors.size(); ++i) {
        const SparsePoly f = minor_poly(minors[i].spec);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const auto it = f.terms().find(basis.monomial(j));
            if (it != f.terms().end()) span(i, j) = it->second;
        }
    }
    const std::size_t span_rank = oracle::rank(span);
    tally.check(o, minors.size() == 18 && span_rank == 9, "(b): minor span has rank " + std::to_string(span_rank));

    std::string c;
    for (std::size_t d : {2u, 3u, 4u}) c += (c.empty() ? "" : ",") + probe({2, 2, 2}, 2, d, 0, "(c) d=" + std::to_string(d));

    // Non-gating: the full (3,3,3) degree-4 basis has 27405 monomials; the weight
    // space with symbol counts (2,1,1) in every mode is a lower bound.
    const std::vector<std::vector<std::size_t>> w(3, {2, 1, 1});
    const auto [cols, nulls] = weight_space_nullity({3, 3, 3}, 3, 4, w, seed_for(5, 3, 4));
    o.detail += "(a) " + a + ", (b) " + b + " = rank of " + std::to_string(minors.size()) + " minors " +
                std::to_string(span_rank) + ", (c) " + c + "; stretch (3,3,3) k=3 d=4 [non-gating]: nullity >= " +
                std::to_string(nulls[0]) + "/" + std::to_string(nulls[1]) + " on a " + std::to_string(cols) +
                "-monomial weight space mod p";
    return o;
}

Pivot pivot_from_core(const QTensor& core, std::size_t k, std::size_t n) {
    const PivotedRank pr = rank_with_pivots(flatten_matrix(core, std::vector<std::size_t>{0}));
    Pivot pv;
    pv.p = 2;
    pv.row_positions = {1};
    for (std::size_t i = 0; i < std::min(k, pr.rank); ++i) {
        pv.rows.push_back(index_word(std::vector<std::size_t>{pr.pivot_rows[i]}, static_cast<unsigned>(n)));
        pv.cols.push_back(index_word(std::vector<std::size_t>{0, pr.pivot_cols[i]}, static_cast<unsigned>(n)));
    }
    return pv;
}

Outcome criterion_6() {
    Outcome o;
    Tally tally;
    std::string counts;
    for (std::size_t k : {1u, 2u}) {
        std::size_t done = 0, exact = 0, skipped = 0;
        for (std::size_t i = 0; done < 100; ++i) {
            const auto [t, f] = random_rank(Shape(5, 3), k, seed_for(6, k, i));
            const BoundaryData b = extract_boundary(t, 2);
            const Pivot pv = pivot_from_core(b.core, k, 3);
            if (pv.k() < k) {
                ++skipped;
                continue;
            }
            ++done;
            exact += complete_tensor(b, pv, k) == t;
        }
        tally.check(o, exact == 100, "k=" + std::to_string(k) + " round trip");
        counts += "k=" + std::to_string(k) + " " + std::to_string(exact) + "/100 (" + std::to_string(skipped) +
                  " draws with a vanishing core skipped), ";
    }

    Pivot pv;
    pv.p = 2;
    pv.rows = {Word::from_digits("1", 3), Word::from_digits("2", 3)};
    pv.cols = {Word::from_digits("01", 3), Word::from_digits("02", 3)};
    pv.row_positions = {1};
    const std::vector<std::pair<const char*, const char*>> expected{
        {"0012", "x_2002*x_021*x_11 - x_2002*x_011*x_12 - x_1002*x_021*x_21 + x_1002*x_011*x_22"},
        {"0021", "x_2001*x_022*x_11 - x_2001*x_012*x_12 - x_1001*x_022*x_21 + x_1001*x_012*x_22"}};
    const auto [t, f] = random_rank(Shape(4, 3), 2, seed_for(6, 9, 0));
    std::size_t formulas = 0;
    for (const auto& [word, text] : expected) {
        const CompletionFormula cf = completion_formula(pv, Word::from_digits(word, 3));
        const bool strings = cf.numerator.to_string() == text && cf.denominator.to_string() == "x_22*x_11 - x_12*x_21";
        const Rational den = eval_poly(cf.denominator, t);
        const bool value = sgn(den) != 0 && eval_poly(cf.numerator, t) / den == coord(t, Word::from_digits(word, 3));
        tally.check(o, strings, std::string("formula text for x_") + word);
        tally.check(o, value, std::string("formula value for x_") + word);
        formulas += strings && value;
    }
    o.detail += counts + "formulas " + std::to_string(formulas) + "/2";
    return o;
}

Word random_word(Rng& rng, std::size_t len, unsigned n) {
    std::vector<std::size_t> s(len);
    for (auto& x : s) x = static_cast<std::size_t>(uniform_int(rng, 0, n - 1));
    return Word::from_symbols(s, n);
}

/// Nonempty sets with increasing maxima over positions 1..range.
SubsElement random_increasing(Rng& rng, std::size_t len, std::size_t range) {
    std::vector<std::size_t> pos(range);
    std::iota(pos.begin(), pos.end(), 1);
    std::shuffle(pos.begin(), pos.end(), rng);
    std::vector<std::size_t> maxima(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(len));
    std::sort(maxima.begin(), maxima.end());
    std::vector<SubsElement::Set> sets(len);
    for (std::size_t j = 0; j < len; ++j) sets[j].push_back(maxima[j]);
    for (std::size_t i = len; i < range; ++i) {
        const std::size_t x = pos[i];
        if (uniform_int(rng, 0, 2) == 0) continue;
        std::vector<std::size_t> owners;
        for (std::size_t j = 0; j < len; ++j)
            if (maxima[j] > x) owners.push_back(j);
        if (owners.empty()) continue;
        sets[owners[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(owners.size()) - 1))]].push_back(x);
    }
    for (auto& s : sets) std::sort(s.begin(), s.end());
    return SubsElement(sets);
}

/// (k+1) distinct words on each side of a random bipartition of a random order.
MinorWords random_minor(Rng& rng, std::size_t size, unsigned n) {
    while (true) {
        const std::size_t p = static_cast<std::size_t>(uniform_int(rng, 2, 6));
        const auto parts = bipartitions(p);
        const auto& rows = parts[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(parts.size()) - 1))];
        std::vector<std::size_t> cols;
        for (std::size_t m = 0; m < p; ++m)
            if (std::find(rows.begin(), rows.end(), m) == rows.end()) cols.push_back(m);
        const Shape dims(p, n);
        auto rw = words_on_modes(rows, dims, n);
        auto cw = words_on_modes(cols, dims, n);
        if (rw.size() < size || cw.size() < size) continue;
        std::shuffle(rw.begin(), rw.end(), rng);
        std::shuffle(cw.begin(), cw.end(), rng);
        rw.resize(size);
        cw.resize(size);
        return {rw, cw};
    }
}

Outcome criterion_7() {
    Outcome o;
    Tally tally;
    const Word wa = Word::from_digits("0010212011", 3), wb = Word::from_digits("0020102012001011", 3);
    const SubsElement sigma({{1}, {2}, {5}, {6}, {7}, {9}, {3, 10}, {4, 8, 11, 12, 14}, {15}, {13, 16}, {17}, {18}});
    const bool example = subs_act(sigma, wa) == wb && oracle::act(sigma, wa) == wb;
    tally.check(o, example, "worked example");

    std::size_t returned = 0, valid = 0, planted = 0, planted_found = 0;
    for (std::size_t i = 0; i < 10000; ++i) {
        Rng rng(seed_for(7, 0, i));
        const unsigned n = static_cast<unsigned>(uniform_int(rng, 2, 3));
        const Word a = random_word(rng, static_cast<std::size_t>(uniform_int(rng, 1, 8)), n);
        Word b;
        const bool plant = i % 2 == 0 && !a.is_zero();
        if (plant) {
            const std::size_t len = a.max_support();
            b = subs_act(random_increasing(rng, len, 3 * len), a);
            ++planted;
        } else {
            b = random_word(rng, static_cast<std::size_t>(uniform_int(rng, 1, 16)), n);
        }
        const auto w = subs_witness(a, b);
        if (!w) continue;
        ++returned;
        planted_found += plant;
        const bool ok = subs_act(*w, a) == b && oracle::act(*w, a) == b && (w->is_increasing() || a.is_zero());
        valid += ok;
    }
    tally.check(o, valid == returned, "invalid witness returned");
    tally.check(o, planted_found == planted, "planted pair without a witness");

    std::vector<Word> words;
    for (std::size_t len = 0; len <= 5; ++len)
        for (std::size_t v = 0; v < (std::size_t{1} << len); ++v) {
            std::vector<std::size_t> s(len);
            for (std::size_t j = 0; j < len; ++j) s[j] = (v >> j) & 1;
            words.push_back(Word::from_symbols(s, 2));
        }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    std::size_t pairs = 0, agree = 0;
    for (const Word& a : words)
        for (const Word& b : words) {
            ++pairs;
            const auto w = subs_witness(a, b);
            agree += w.has_value() == oracle::subs_exists(a, b) && (!w || subs_act(*w, a) == b);
        }
    tally.check(o, agree == pairs, "exhaustive disagreement with the brute-force search");

    std::size_t reached = 0, tried = 0;
    for (std::size_t k : {1u, 2u})
        for (unsigned n : {2u, 3u}) {
            const MinorWords canon = canonical_minor_words(k + 1, n);
            for (std::size_t i = 0; i < 200; ++i) {
                Rng rng(seed_for(7, 10 * k + n, i));
                const MinorWords target = random_minor(rng, k + 1, n);
                ++tried;
                const SubsElement s = orbit_element(canon, target);
                bool ok = true;
                for (std::size_t j = 0; j <= k; ++j)
                    ok = ok && oracle::act(s, canon.rows[j]) == target.rows[j] &&
                         oracle::act(s, canon.cols[j]) == target.cols[j];
                reached += ok;
            }
        }
    tally.check(o, reached == tried, "minor not reached from the canonical one");
    o.detail += std::string("example ") + (example ? "exact" : "wrong") + ", witnesses valid " + std::to_string(valid) +
                "/" + std::to_string(returned) + " (planted found " + std::to_string(planted_found) + "/" +
                std::to_string(planted) + "), exhaustive " + std::to_string(agree) + "/" + std::to_string(pairs) +
                ", orbit " + std::to_string(reached) + "/" + std::to_string(tried);
    return o;
}

TestConfig criterion_8_config(std::size_t i, std::size_t threads) {
    TestConfig cfg;
    cfg.k = 2;
    cfg.p0 = 6;
    cfg.trials = 5;
    cfg.seed = seed_for(8, 100, i);
    cfg.threads = threads;
    return cfg;
}

Outcome criterion_8() {
    Outcome o;
    Tally tally;
    const std::size_t threads = resolve_threads();
    std::size_t false_violations = 0, detected = 0, generic = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        const auto [t, f] = random_rank(Shape(8, 2), 2, seed_for(8, 0, i));
        const CertReport r = random_contraction_test(t, criterion_8_config(i, threads));
        false_violations += r.verdict == Verdict::violated;
    }
    for (std::size_t i = 0; i < 100; ++i) {
        const auto [t, f] = random_rank(Shape(8, 2), 4, seed_for(8, 1, i));
        if (oracle_flattening_bound(t) <= 2) continue;
        ++generic;
        const CertReport r = random_contraction_test(t, criterion_8_config(100 + i, threads));
        detected += r.verdict == Verdict::violated && witness_reproduces(t, r);
    }
    tally.check(o, false_violations == 0, "violation on a rank-2 tensor");
    tally.check(o, generic == 100 && detected == 100, "rank-4 tensor not detected");
    o.detail += std::to_string(false_violations) + " false violations on 100 rank-2, detected " + std::to_string(detected) +
                "/" + std::to_string(generic) + " generic rank-4 (28 subsets x 5 trials)";
    return o;
}

QTensor sum_out(const QTensor& t, std::size_t mode) {
    const std::vector<Rational> ones(t.dims()[mode], Rational(1));
    return contract(t, mode, ones);
}

Outcome criterion_9() {
    Outcome o;
    Tally tally;
    std::size_t passed = 0, models = 0;
    for (const char* nwk : {"(a,b,c);", "((a,b),(c,d));"}) {
        const Tree tree = parse_newick(nwk);
        for (std::size_t k : {2u, 3u})
            for (std::size_t i = 0; i < 10; ++i) {
                const QTensor m = model_tensor(tree, random_params(tree, k, seed_for(9, k, i), i % 2 == 0));
                const PhyloReport r = check_membership(m, tree, k);
                ++models;
                const bool ok = r.passed && (k != 2 || r.verdict == Verdict::certified);
                passed += ok;
            }
    }
    tally.check(o, passed == models, "model tensor rejected");

    const Tree quartet = parse_newick("((a,b),(c,d));");
    std::size_t failed_edge = 0;
    for (std::size_t i = 0; i < 20; ++i) {
        const QTensor g = random_entries(Shape(4, i % 2 ? 3 : 2), seed_for(9, 10, i), 10);
        const PhyloReport r = check_membership(g, quartet, 2);
        failed_edge += !r.passed && !r.edges.empty() && r.edges[0].violation.has_value();
    }
    tally.check(o, failed_edge == 20, "generic tensor passed the edge check");

    std::size_t marg = 0, marg_total = 0;
    for (const char* nwk : {"(a,b,c);", "((a,b),(c,d));", "(((a,b),c),(d,e));"}) {
        const Tree tree = parse_newick(nwk);
        const ModelParams params = random_params(tree, 2, seed_for(9, 20, tree.leaf_count()), true);
        const QTensor full = model_tensor(tree, params);
        for (std::size_t leaf = 0; leaf < tree.leaf_count(); ++leaf) {
            const Reduced r = remove_leaf(tree, params, leaf);
            ++marg_total;
            marg += model_tensor(r.tree, r.params) == sum_out(full, leaf);
        }
    }
    tally.check(o, marg == marg_total, "marginalization mismatch");
    o.detail += "models pass " + std::to_string(passed) + "/" + std::to_string(models) + ", generic fail edge " +
                std::to_string(failed_edge) + "/20, marginalization exact " + std::to_string(marg) + "/" +
                std::to_string(marg_total);
    return o;
}

std::string dump_all(const std::vector<CertReport>& rs) {
    std::string s;
    for (const auto& r : rs) s += to_json(r).dump() + "\n";
    return s;
}

Outcome criterion_10() {
    Outcome o;
    Tally tally;
    std::size_t identity = 0, multiset = 0;
    for (std::size_t i = 0; i < 50; ++i) {
        Rng rng(seed_for(10, 0, i));
        const Shape dims = random_shape(rng);
        const QTensor t = random_entries(dims, seed_for(10, 1, i), 10);
        identity += project_pi(embed_tau(t, 1 + i % 4)) == t;
        std::multiset<Rational> a(t.entries().begin(), t.entries().end());
        bool all = true;
        for (const auto& rows : bipartitions(t.order())) {
            const QMatrix m = flatten_matrix(t, rows);
            all = all && std::multiset<Rational>(m.data().begin(), m.data().end()) == a;
        }
        multiset += all;
    }
    tally.check(o, identity == 50, "pi o tau is not the identity");
    tally.check(o, multiset == 50, "flattening changed the entry multiset");

    // Criterion 3 workload, first 100 cases per shape.
    std::vector<QTensor> ts;
    std::size_t family = 0;
    for (const Shape& dims : {Shape{3, 3, 3}, Shape{3, 3, 3, 3}}) {
        const auto cases = criterion_3_cases(dims, family);
        family += 2;
        for (std::size_t i = 0; i < cases.size(); i += 10) ts.push_back(cases[i].t);
    }
    TestConfig cfg;
    cfg.k = 2;
    std::string base;
    bool same3 = true;
    for (std::size_t threads : {1u, 4u, 1u}) {
        cfg.threads = threads;
        const std::string d = dump_all(certify_batch(ts, cfg));
        if (base.empty()) base = d;
        same3 = same3 && d == base;
    }
    tally.check(o, same3, "criterion 3 reports depend on threads or run");

    // Criterion 8 workload on a subset.
    bool same8 = true;
    std::size_t runs8 = 0;
    for (std::size_t i = 0; i < 10; ++i) {
        const auto [t, f] = random_rank(Shape(8, 2), i < 5 ? 4 : 2, seed_for(8, i < 5 ? 1 : 0, i));
        const std::size_t cfg_index = i < 5 ? 100 + i : i;
        const CertReport one = random_contraction_test(t, criterion_8_config(cfg_index, 1));
        const CertReport four = random_contraction_test(t, criterion_8_config(cfg_index, 4));
        const CertReport again = random_contraction_test(t, criterion_8_config(cfg_index, 1));
        same8 = same8 && one == four && one == again && to_json(one).dump() == to_json(four).dump();
        ++runs8;
    }
    tally.check(o, same8, "criterion 8 reports depend on threads or run");
    o.detail += "pi o tau " + std::to_string(identity) + "/50, multiset " + std::to_string(multiset) +
                "/50, criterion 3 reports identical across {1,4} threads: " + (same3 ? "yes" : "no") + " (" +
                std::to_string(ts.size()) + " tensors), criterion 8: " + (same8 ? "yes" : "no") + " (" +
                std::to_string(runs8) + " tensors)";
    return o;
}

}  // namespace

int main() {
    bool all = true;
    all &= run_criterion(1, "2x2x2 classifier", 10, criterion_1);
    all &= run_criterion(2, "rank <= 1 completeness", 30, criterion_2);
    all &= run_criterion(3, "border rank <= 2 completeness", 120, criterion_3);
    all &= run_criterion(4, "Strassen degree-9 invariant", 60, criterion_4);
    all &= run_criterion(5, "ideal probe", 120, criterion_5);
    all &= run_criterion(6, "completion round trip", 60, criterion_6);
    all &= run_criterion(7, "substitution monoid", 120, criterion_7);
    all &= run_criterion(8, "randomized contraction", 300, criterion_8);
    all &= run_criterion(9, "phylogenetic membership", 60, criterion_9);
    all &= run_criterion(10, "infrastructure invariants", 0, criterion_10);
    std::printf("acceptance: %s\n", all ? "all criteria pass" : "some criteria fail");
    return all ? 0 : 1;
}
