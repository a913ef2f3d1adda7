// SPDX-License-Identifier: MIT
#pragma once

#include "brank/poly.hpp"
#include "brank/tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace brank {

/// Degree-d monomials in the entry variables of a tensor of shape `dims`.
/// Variables are the words of all entries sorted by n-ary key; a monomial is
/// a nondecreasing list of variable indices, and monomials are listed in
/// lexicographic order of those lists.
struct MonomialBasis {
    Shape dims;
    std::size_t degree = 0;
    std::vector<Word> variables;
    std::vector<std::vector<std::uint32_t>> monomials;

    [[nodiscard]] std::size_t size() const { return monomials.size(); }
    [[nodiscard]] Monomial monomial(std::size_t i) const;
};

inline constexpr std::size_t kMonomialGuard = 1'000'000;

/// binom(N + d - 1, d), saturating at SIZE_MAX.
std::size_t monomial_count(const Shape& dims, std::size_t d);
/// Throws std::length_error beyond kMonomialGuard monomials.
MonomialBasis monomial_basis(const Shape& dims, std::size_t d);

struct ProbeConfig {
    Shape dims;
    std::size_t k = 1;
    std::size_t d = 2;
    double oversample = 1.5;
    std::uint64_t seed = 0;
    /// Empty: two random primes in [2^31, 2^32), with exact confirmation when
    /// feasible. 0: exact rationals only. Otherwise the given prime.
    std::optional<std::uint64_t> modulus;
    bool want_kernel = false;
    /// Largest monomial count for exact rational elimination.
    std::size_t exact_limit = 2000;
    std::size_t threads = 1;
};

struct ProbeResult {
    Shape dims;
    std::size_t k = 0;
    std::size_t d = 0;
    std::size_t monomials = 0;
    std::size_t samples = 0;
    std::size_t nullity = 0;
    /// 0 when the reported nullity is exact over the rationals.
    std::uint64_t modulus = 0;
    std::vector<std::uint64_t> primes;
    /// Nullity per (prime, sample seed) run of the accepted round.
    std::vector<std::size_t> prime_nullities;
    bool exact = false;
    std::size_t rounds = 0;
    std::vector<SparsePoly> kernel;
};

/// Nullity of the matrix of all degree-d monomials evaluated at random
/// integer tensors of rank <= k; for generic samples this is the dimension of
/// the degree-d part of the vanishing ideal.
ProbeResult ideal_degree_dim(const ProbeConfig& config);
ProbeResult ideal_degree_dim(const Shape& dims, std::size_t k, std::size_t d, double oversample, std::uint64_t seed,
                             std::optional<std::uint64_t> modulus = std::nullopt);

/// Evaluation matrix rows, one per sample tensor.
QMatrix evaluation_matrix(const MonomialBasis& basis, const std::vector<QTensor>& samples);
std::vector<QTensor> probe_samples(const Shape& dims, std::size_t k, std::size_t count, std::uint64_t seed);

/// Uniform start in [2^31, 2^32) followed by the next prime.
std::uint64_t random_prime(std::uint64_t seed);

/// True iff f vanishes on `samples` random integer tensors of rank <= k.
bool membership_check(const SparsePoly& f, const Shape& dims, std::size_t k, std::size_t samples, std::uint64_t seed);
bool membership_check(const std::function<Rational(const QTensor&)>& f, const Shape& dims, std::size_t k,
                      std::size_t samples, std::uint64_t seed);

}  // namespace brank
