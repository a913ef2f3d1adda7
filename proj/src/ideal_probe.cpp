// SPDX-License-Identifier: MIT
#include "brank/ideal_probe.hpp"

#include "brank/linalg.hpp"
#include "brank/parallel.hpp"
#include "brank/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace brank {

namespace {

unsigned alphabet_for(const Shape& dims) {
    std::size_t n = 2;
    for (std::size_t d : dims) n = std::max(n, d);
    return static_cast<unsigned>(n);
}

/// Entry of each variable in `t`, in basis order.
std::vector<Rational> variable_values(const MonomialBasis& basis, const QTensor& t) {
    std::vector<Rational> out;
    out.reserve(basis.variables.size());
    for (const Word& w : basis.variables) out.push_back(coord(t, w));
    return out;
}

std::vector<std::uint64_t> evaluation_mod_p(const MonomialBasis& basis, const std::vector<QTensor>& samples,
                                            std::uint64_t p, std::size_t threads) {
    const std::size_t cols = basis.size();
    std::vector<std::uint64_t> out(samples.size() * cols);
    parallel_for(samples.size(), threads, [&](std::size_t s) {
        std::vector<std::uint64_t> v;
        for (const Rational& x : variable_values(basis, samples[s])) v.push_back(reduce_mod(x, p));
        for (std::size_t c = 0; c < cols; ++c) {
            std::uint64_t acc = 1;
            for (std::uint32_t var : basis.monomials[c]) acc = mul_mod(acc, v[var], p);
            out[s * cols + c] = acc;
        }
    });
    return out;
}

struct Run {
    std::size_t nullity = 0;
    std::vector<QTensor> samples;
};

}  // namespace

Monomial MonomialBasis::monomial(std::size_t i) const {
    std::vector<Monomial::Factor> factors;
    for (std::uint32_t v : monomials.at(i)) {
        if (!factors.empty() && factors.back().first == variables[v]) ++factors.back().second;
        else factors.emplace_back(variables[v], 1);
    }
    return Monomial(std::move(factors));
}

std::size_t monomial_count(const Shape& dims, std::size_t d) {
    const std::size_t n = BasicTensor<Rational>::volume(dims);
    // binom(n + d - 1, d) built incrementally; each prefix is an integer.
    unsigned __int128 c = 1;
    for (std::size_t i = 1; i <= d; ++i) {
        c = c * (n + i - 1) / i;
        if (c > std::numeric_limits<std::size_t>::max()) return std::numeric_limits<std::size_t>::max();
    }
    return static_cast<std::size_t>(c);
}

MonomialBasis monomial_basis(const Shape& dims, std::size_t d) {
    if (d < 1) throw std::invalid_argument("monomial_basis: degree must be at least 1");
    const std::size_t count = monomial_count(dims, d);
    if (count > kMonomialGuard) throw std::length_error("monomial_basis: more than 10^6 monomials");
    MonomialBasis basis;
    basis.dims = dims;
    basis.degree = d;
    const unsigned n = alphabet_for(dims);
    QTensor shape_only(dims);
    for (std::size_t lin = 0; lin < shape_only.size(); ++lin) basis.variables.push_back(index_word(shape_only.multi_index(lin), n));
    std::sort(basis.variables.begin(), basis.variables.end());
    const auto nv = static_cast<std::uint32_t>(basis.variables.size());
    basis.monomials.reserve(count);
    std::vector<std::uint32_t> cur(d, 0);
    while (true) {
        basis.monomials.push_back(cur);
        std::size_t i = d;
        while (i-- > 0 && cur[i] + 1 == nv) {
        }
        if (i == static_cast<std::size_t>(-1)) break;
        ++cur[i];
        for (std::size_t j = i + 1; j < d; ++j) cur[j] = cur[i];
    }
    return basis;
}

QMatrix evaluation_matrix(const MonomialBasis& basis, const std::vector<QTensor>& samples) {
    QMatrix m(samples.size(), basis.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto v = variable_values(basis, samples[s]);
        for (std::size_t c = 0; c < basis.size(); ++c) {
            Rational acc = 1;
            for (std::uint32_t var : basis.monomials[c]) acc *= v[var];
            m(s, c) = acc;
        }
    }
    return m;
}

std::vector<QTensor> probe_samples(const Shape& dims, std::size_t k, std::size_t count, std::uint64_t seed) {
    std::vector<QTensor> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(random_rank(dims, k, derive_seed(seed, StreamKind::probe_sample, {i})).first);
    return out;
}

std::uint64_t random_prime(std::uint64_t seed) {
    Rng rng(seed);
    std::uint64_t x = std::uniform_int_distribution<std::uint64_t>(1ULL << 31, (1ULL << 32) - 1)(rng);
    while (!is_prime(x)) x = x + 1 < (1ULL << 32) ? x + 1 : (1ULL << 31);
    return x;
}

ProbeResult ideal_degree_dim(const ProbeConfig& config) {
    if (config.oversample < 1.2) throw std::invalid_argument("oversample must be at least 1.2");
    if (config.modulus && *config.modulus != 0 && !is_prime(*config.modulus))
        throw std::invalid_argument("modulus is not prime");
    const MonomialBasis basis = monomial_basis(config.dims, config.d);
    const std::size_t m = basis.size();

    ProbeResult result;
    result.dims = config.dims;
    result.k = config.k;
    result.d = config.d;
    result.monomials = m;

    auto exact_nullity = [&](const std::vector<QTensor>& samples) {
        const QMatrix e = evaluation_matrix(basis, samples);
        if (config.want_kernel) {
            const auto ns = nullspace(e);
            for (const auto& v : ns) {
                SparsePoly f(alphabet_for(config.dims));
                for (std::size_t c = 0; c < m; ++c)
                    if (sgn(v[c]) != 0) f.add_term(basis.monomial(c), v[c]);
                result.kernel.push_back(std::move(f));
            }
            return ns.size();
        }
        return m - rank(e);
    };

    double oversample = config.oversample;
    if (config.modulus && *config.modulus == 0) {
        const auto count = static_cast<std::size_t>(std::ceil(oversample * static_cast<double>(m)));
        const auto samples = probe_samples(config.dims, config.k, count, derive_seed(config.seed, StreamKind::probe_sample, {0}));
        result.samples = count;
        result.rounds = 1;
        result.nullity = exact_nullity(samples);
        result.exact = true;
        return result;
    }

    constexpr std::size_t kMaxRounds = 6;
    for (std::size_t round = 0; round < kMaxRounds; ++round) {
        const auto count = static_cast<std::size_t>(std::ceil(oversample * static_cast<double>(m)));
        std::vector<std::uint64_t> primes;
        if (config.modulus) primes = {*config.modulus, *config.modulus};
        else {
            primes.push_back(random_prime(derive_seed(config.seed, StreamKind::probe_prime, {round, 0})));
            std::uint64_t salt = 1;
            do primes.push_back(random_prime(derive_seed(config.seed, StreamKind::probe_prime, {round, salt++})));
            while (primes[1] == primes[0]);
        }
        std::vector<Run> runs(2);
        parallel_for(2, std::min<std::size_t>(config.threads, 2), [&](std::size_t i) {
            runs[i].samples = probe_samples(config.dims, config.k, count,
                                            derive_seed(config.seed, StreamKind::probe_sample, {round, i}));
            const auto data = evaluation_mod_p(basis, runs[i].samples, primes[i], std::max<std::size_t>(1, config.threads / 2));
            runs[i].nullity = m - rank_mod_p(data, count, m, primes[i]);
        });
        result.rounds = round + 1;
        if (runs[0].nullity != runs[1].nullity) {
            oversample *= 1.5;
            continue;
        }
        result.samples = count;
        result.primes = primes;
        result.prime_nullities = {runs[0].nullity, runs[1].nullity};
        result.nullity = runs[0].nullity;
        result.modulus = primes[0];
        // The rational rank is at least the rank mod p, so a zero nullity is already exact.
        if (result.nullity == 0) {
            result.exact = true;
            result.modulus = 0;
        } else if (m <= config.exact_limit) {
            result.nullity = exact_nullity(runs[0].samples);
            result.exact = true;
            result.modulus = 0;
        }
        return result;
    }
    throw std::runtime_error("ideal probe: nullities did not stabilize across primes");
}

ProbeResult ideal_degree_dim(const Shape& dims, std::size_t k, std::size_t d, double oversample, std::uint64_t seed,
                             std::optional<std::uint64_t> modulus) {
    ProbeConfig c;
    c.dims = dims;
    c.k = k;
    c.d = d;
    c.oversample = oversample;
    c.seed = seed;
    c.modulus = modulus;
    return ideal_degree_dim(c);
}

bool membership_check(const std::function<Rational(const QTensor&)>& f, const Shape& dims, std::size_t k,
                      std::size_t samples, std::uint64_t seed) {
    for (std::size_t i = 0; i < samples; ++i) {
        const QTensor t = random_rank(dims, k, derive_seed(seed, StreamKind::membership, {i})).first;
        if (sgn(f(t)) != 0) return false;
    }
    return true;
}

bool membership_check(const SparsePoly& f, const Shape& dims, std::size_t k, std::size_t samples, std::uint64_t seed) {
    return membership_check([&](const QTensor& t) { return eval_poly(f, t); }, dims, k, samples, seed);
}

}  // namespace brank
