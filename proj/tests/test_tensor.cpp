// SPDX-License-Identifier: MIT
#include "brank/tensor.hpp"
#include "brank/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace brank;

namespace {

QTensor random_tensor(const Shape& dims, std::uint64_t seed) {
    Rng rng(seed);
    QTensor t(dims);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = Rational(uniform_int(rng, -9, 9));
    return t;
}

}  // namespace

TEST(Tensor, IndexingIsRowMajor) {
    QTensor t({2, 3, 4});
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = Rational(static_cast<long>(i));
    EXPECT_EQ(t.at({1, 2, 3}), Rational(23));
    EXPECT_EQ(t.at({0, 1, 0}), Rational(4));
    EXPECT_EQ(t.multi_index(23), (std::vector<std::size_t>{1, 2, 3}));
    EXPECT_THROW(t.at({2, 0, 0}), std::out_of_range);
    EXPECT_THROW(QTensor({2, 0}), std::invalid_argument);
}

TEST(Tensor, PureTensorIsOuterProduct) {
    const QTensor t = pure<Rational>({{1, 2}, {3, 4, 5}});
    EXPECT_EQ(t.dims(), (Shape{2, 3}));
    EXPECT_EQ(t.at({1, 2}), Rational(10));
    EXPECT_EQ(matrix_rank(t), 1u);
}

TEST(Tensor, FlatteningPreservesEntryMultiset) {
    const QTensor t = random_tensor({2, 3, 2, 2}, 5);
    for (const auto& rows : bipartitions(4)) {
        const QMatrix m = flatten_matrix(t, rows);
        EXPECT_EQ(m.rows() * m.cols(), t.size());
        std::multiset<Rational> a(t.entries().begin(), t.entries().end()), b(m.data().begin(), m.data().end());
        EXPECT_EQ(a, b);
    }
}

TEST(Tensor, FlatteningEntryPlacement) {
    const QTensor t = random_tensor({2, 3, 4}, 9);
    const std::vector<std::size_t> rows{0, 2};
    const QMatrix m = flatten_matrix(t, rows);
    ASSERT_EQ(m.rows(), 8u);
    ASSERT_EQ(m.cols(), 3u);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(m(i * 4 + k, j), t.at({i, j, k}));
}

TEST(Tensor, BipartitionsCountAndConvention) {
    EXPECT_TRUE(bipartitions(1).empty());
    EXPECT_EQ(bipartitions(2).size(), 1u);
    EXPECT_EQ(bipartitions(4).size(), 7u);
    for (const auto& rows : bipartitions(5)) {
        EXPECT_EQ(rows.front(), 0u);
        EXPECT_LT(rows.size(), 5u);
    }
}

TEST(Tensor, ContractMatchesExplicitSum) {
    const QTensor t = random_tensor({3, 2, 4}, 1);
    const std::vector<Rational> phi{2, -1};
    const QTensor c = contract(t, 1, phi);
    ASSERT_EQ(c.dims(), (Shape{3, 4}));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(c.at({i, k}), 2 * t.at({i, 0, k}) - t.at({i, 1, k}));
}

TEST(Tensor, ContractPureIsOrderIndependent) {
    const QTensor t = random_tensor({2, 3, 2, 3}, 2);
    const std::vector<std::vector<Rational>> cov{{1, -2, 3}, {4, 5}};
    const std::vector<std::size_t> modes{3, 0};
    const QTensor a = contract_pure(t, std::span<const std::size_t>(modes), cov);
    const QTensor b = contract(contract(t, 3, cov[0]), 0, cov[1]);
    EXPECT_EQ(a, b);
    const std::vector<std::vector<Rational>> all{{1, 1}, {1, 0, 0}, {0, 1}, {0, 0, 1}};
    const std::vector<std::size_t> every{0, 1, 2, 3};
    const QTensor s = contract_pure(t, std::span<const std::size_t>(every), all);
    EXPECT_EQ(s.order(), 0u);
    EXPECT_EQ(s[0], t.at({0, 0, 1, 2}) + t.at({1, 0, 1, 2}));
}

TEST(Tensor, ModeApplyMatchesContraction) {
    const QTensor t = random_tensor({2, 3, 2}, 3);
    QMatrix a(1, 3, {1, 2, 3});
    std::vector<std::optional<QMatrix>> maps(3);
    maps[1] = a;
    const QTensor m = mode_apply(t, maps);
    ASSERT_EQ(m.dims(), (Shape{2, 1, 2}));
    const QTensor c = contract(t, 1, std::vector<Rational>{1, 2, 3});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(m.at({i, 0, k}), c.at({i, k}));
}

TEST(Tensor, ModeApplyPreservesRankBound) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto [t, f] = random_rank({3, 3, 3}, 2, s);
        std::vector<std::optional<QMatrix>> maps(3);
        Rng rng(s);
        for (auto& m : maps) {
            QMatrix a(2, 3);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 3; ++j) a(i, j) = Rational(uniform_int(rng, -3, 3));
            m = a;
        }
        const QTensor r = mode_apply(t, maps);
        for (const auto& rows : bipartitions(3)) EXPECT_LE(rank(flatten_matrix(r, rows)), 2u);
    }
}

TEST(Tensor, PermuteModesFactorAction) {
    const QTensor t = pure<Rational>({{1, 2}, {3, 4, 5}, {6, 7, 8, 9}});
    const std::vector<std::size_t> perm{2, 0, 1};
    const QTensor u = permute_modes(t, std::span<const std::size_t>(perm));
    // Source mode j moves to position perm[j].
    EXPECT_EQ(u.dims(), (Shape{3, 4, 2}));
    EXPECT_EQ(u, (pure<Rational>({{3, 4, 5}, {6, 7, 8, 9}, {1, 2}})));
}

TEST(Tensor, PermuteModesComposition) {
    const QTensor t = random_tensor({2, 3, 4}, 4);
    const std::vector<std::size_t> a{1, 2, 0}, b{0, 2, 1};
    // Moving by b and then by a equals moving by the composite j -> a[b[j]].
    std::vector<std::size_t> ab(3);
    for (std::size_t j = 0; j < 3; ++j) ab[j] = a[b[j]];
    const QTensor two = permute_modes(permute_modes(t, std::span<const std::size_t>(b)), std::span<const std::size_t>(a));
    EXPECT_EQ(two, permute_modes(t, std::span<const std::size_t>(ab)));
    const std::vector<std::size_t> id{0, 1, 2};
    EXPECT_EQ(permute_modes(t, std::span<const std::size_t>(id)), t);
}

TEST(Tensor, ProjectAfterEmbedIsIdentity) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const QTensor t = random_tensor({2, 3, 2}, s);
        EXPECT_EQ(project_pi(embed_tau(t, 3)), t);
        EXPECT_EQ(project_pi(embed_tau(t)), t);
    }
    const QTensor v = random_tensor({3}, 1);
    EXPECT_EQ(project_pi(v).order(), 0u);
    EXPECT_EQ(project_pi(v)[0], v[0]);
}

TEST(Tensor, CoordinatesOfWords) {
    const QTensor t = random_tensor({3, 3, 3}, 6);
    EXPECT_EQ(coord(t, Word::from_digits("102", 3)), t.at({1, 0, 2}));
    EXPECT_EQ(coord(t, Word::from_digits("", 3)), t.at({0, 0, 0}));
    EXPECT_EQ(coord(t, Word::from_digits("0001", 3)), Rational(0));
    const QTensor small = random_tensor({2, 2}, 1);
    EXPECT_THROW(coord(small, Word::from_digits("2", 3)), std::invalid_argument);
}

TEST(Tensor, RandomRankIsDeterministicAndSumsFactors) {
    const auto [t1, f1] = random_rank({2, 3, 2}, 3, 42);
    const auto [t2, f2] = random_rank({2, 3, 2}, 3, 42);
    EXPECT_EQ(t1, t2);
    EXPECT_EQ(expand(t1.dims(), f1), t1);
    EXPECT_EQ(f1.rank(), 3u);
    for (const auto& term : f1.terms)
        for (const auto& v : term) EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; }));
    EXPECT_NE(t1, random_rank({2, 3, 2}, 3, 43).first);
}

TEST(Tensor, FloatRankUsesTolerance) {
    const FTensor m({2, 2}, {1.0, 1.0, 1.0, 1.0 + 1e-13});
    EXPECT_EQ(matrix_rank(m), 1u);
    EXPECT_EQ(matrix_rank(m, 1e-16), 2u);
}
