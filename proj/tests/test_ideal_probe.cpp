// SPDX-License-Identifier: MIT
#include "brank/ideal_probe.hpp"
#include "brank/linalg.hpp"
#include "brank/minors.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace brank;

TEST(Monomials, CountAndOrder) {
    EXPECT_EQ(monomial_count({2, 2}, 2), 10u);
    EXPECT_EQ(monomial_count({2, 2, 2}, 3), 120u);
    const MonomialBasis b = monomial_basis({2, 2}, 2);
    ASSERT_EQ(b.size(), 10u);
    ASSERT_EQ(b.variables.size(), 4u);
    for (std::size_t i = 1; i < b.variables.size(); ++i) EXPECT_LT(b.variables[i - 1], b.variables[i]);
    for (std::size_t i = 1; i < b.size(); ++i) EXPECT_LT(b.monomials[i - 1], b.monomials[i]);
    for (const auto& m : b.monomials) EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
    EXPECT_EQ(b.monomial(0), Monomial({{b.variables[0], 2}}));
    EXPECT_EQ(b.monomial(0).degree(), 2u);
}

TEST(Monomials, GuardRejectsHugeBases) {
    EXPECT_GT(monomial_count({3, 3, 3, 3}, 5), kMonomialGuard);
    EXPECT_THROW(monomial_basis({3, 3, 3, 3}, 5), std::length_error);
}

TEST(Probe, EvaluationMatrixReadsMonomials) {
    const MonomialBasis b = monomial_basis({2, 2}, 2);
    const auto samples = probe_samples({2, 2}, 1, 3, 5);
    const QMatrix m = evaluation_matrix(b, samples);
    ASSERT_EQ(m.rows(), 3u);
    ASSERT_EQ(m.cols(), b.size());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        EXPECT_EQ(oracle::rank(flatten_matrix(samples[i], std::vector<std::size_t>{0})), 1u);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            SparsePoly f(2);
            f.add_term(b.monomial(j), 1);
            EXPECT_EQ(m(i, j), eval_poly(f, samples[i]));
        }
    }
}

TEST(Probe, RandomPrimesAreLargePrimes) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const std::uint64_t p = random_prime(s);
        EXPECT_GE(p, std::uint64_t{1} << 31);
        EXPECT_LT(p, std::uint64_t{1} << 32);
        EXPECT_TRUE(is_prime(p));
    }
    EXPECT_NE(random_prime(1), random_prime(2));
}

TEST(Probe, DeterminantOfTwoByTwo) {
    const ProbeResult r = ideal_degree_dim({2, 2}, 1, 2, 1.5, 1);
    EXPECT_EQ(r.nullity, 1u);
    EXPECT_EQ(r.monomials, 10u);
    EXPECT_GE(r.samples, 15u);
    EXPECT_EQ(r.primes.size(), 2u);
    EXPECT_TRUE(r.exact);
}

TEST(Probe, QuadricsOfRankOneCube) {
    const ProbeResult r = ideal_degree_dim({2, 2, 2}, 1, 2, 1.5, 3);
    EXPECT_EQ(r.nullity, 9u);
    ASSERT_EQ(r.prime_nullities.size(), 2u);
    EXPECT_EQ(r.prime_nullities[0], r.prime_nullities[1]);

    // Span of the enumerated 2x2 flattening minors, as coefficient vectors.
    const MonomialBasis b = monomial_basis({2, 2, 2}, 2);
    const auto minors = enumerate_minors(3, 2, 1);
    QMatrix span(minors.size(), b.size());
    for (std::size_t i = 0; i < minors.size(); ++i) {
        const SparsePoly f = minor_poly(minors[i].spec);
        for (std::size_t j = 0; j < b.size(); ++j) {
            auto it = f.terms().find(b.monomial(j));
            if (it != f.terms().end()) span(i, j) = it->second;
        }
    }
    EXPECT_EQ(oracle::rank(span), 9u);
}

TEST(Probe, SecantOfCubeFillsSpace) {
    for (std::size_t d : {2u, 3u}) {
        const ProbeResult r = ideal_degree_dim({2, 2, 2}, 2, d, 1.5, 4);
        EXPECT_EQ(r.nullity, 0u) << "d=" << d;
        EXPECT_TRUE(r.exact);
    }
}

TEST(Probe, ExactAndModularModesAgree) {
    ProbeConfig c;
    c.dims = {3, 3};
    c.k = 2;
    c.d = 3;
    c.seed = 6;
    c.modulus = 0;
    const ProbeResult exact = ideal_degree_dim(c);
    EXPECT_EQ(exact.nullity, 1u);
    EXPECT_EQ(exact.modulus, 0u);
    c.modulus = 2147483659ULL;
    const ProbeResult modp = ideal_degree_dim(c);
    EXPECT_EQ(modp.nullity, 1u);
    c.modulus = 2147483660ULL;
    EXPECT_THROW(ideal_degree_dim(c), std::invalid_argument);
}

TEST(Probe, KernelPolynomialsVanishOnFreshSamples) {
    ProbeConfig c;
    c.dims = {2, 3};
    c.k = 1;
    c.d = 2;
    c.seed = 8;
    c.want_kernel = true;
    const ProbeResult r = ideal_degree_dim(c);
    EXPECT_EQ(r.nullity, 3u);
    ASSERT_EQ(r.kernel.size(), r.nullity);
    for (const auto& f : r.kernel) {
        EXPECT_TRUE(f.is_homogeneous());
        EXPECT_TRUE(membership_check(f, c.dims, 1, 20, 99));
        EXPECT_FALSE(membership_check(f, c.dims, 2, 20, 99));
    }
}

TEST(Probe, ThreadCountDoesNotChangeResult) {
    ProbeConfig c;
    c.dims = {2, 2, 2};
    c.k = 1;
    c.d = 2;
    c.seed = 12;
    const ProbeResult one = ideal_degree_dim(c);
    c.threads = 4;
    const ProbeResult four = ideal_degree_dim(c);
    EXPECT_EQ(one.nullity, four.nullity);
    EXPECT_EQ(one.primes, four.primes);
    EXPECT_EQ(one.samples, four.samples);
}

TEST(Membership, CallableForm) {
    auto det22 = [](const QTensor& t) -> Rational { return t.at({0, 0}) * t.at({1, 1}) - t.at({0, 1}) * t.at({1, 0}); };
    EXPECT_TRUE(membership_check(det22, {2, 2}, 1, 10, 1));
    EXPECT_FALSE(membership_check(det22, {2, 2}, 2, 10, 1));
}
