// SPDX-License-Identifier: MIT
#include "brank/cp_als.hpp"
#include "brank/certify.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace brank;

TEST(CpAls, RecoversExactLowRankTensors) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto [t, f] = random_rank({3, 4, 3}, 2, seed);
        const FTensor ft = to_float(t);
        const CpResult r = cp_als_best(ft, 2, 500, seed, 4);
        EXPECT_LT(r.residual, 1e-6 * frobenius_norm(ft));
        ASSERT_EQ(r.model.rank(), 2u);
        const FTensor model = expand(ft.dims(), r.model);
        EXPECT_NEAR(frobenius_norm(ft - model), r.residual, 1e-9 * (1 + frobenius_norm(ft)));
    }
}

TEST(CpAls, ResidualHistoryIsNonincreasing) {
    const auto [t, f] = random_rank({3, 3, 3}, 4, 7);
    const CpResult r = cp_als(t, 2, 60, 1);
    ASSERT_FALSE(r.history.empty());
    for (std::size_t i = 1; i < r.history.size(); ++i) EXPECT_LE(r.history[i], r.history[i - 1] * (1 + 1e-9) + 1e-12);
    EXPECT_DOUBLE_EQ(r.residual, r.history.back());
}

TEST(CpAls, UnderfitLeavesResidual) {
    const auto [t, f] = random_rank({3, 3, 3}, 3, 2);
    ASSERT_EQ(test_brank_le_2(t).verdict, Verdict::violated);
    const CpResult r = cp_als_best(to_float(t), 2, 300, 3, 3);
    EXPECT_GT(r.residual, 1e-6);
}

TEST(CpAls, ZeroRankAndDeterminism) {
    const auto [t, f] = random_rank({2, 2, 2}, 1, 4);
    const FTensor ft = to_float(t);
    EXPECT_NEAR(cp_als(ft, 0, 10, 0).residual, frobenius_norm(ft), 1e-12);
    EXPECT_EQ(cp_als(ft, 2, 20, 9).residual, cp_als(ft, 2, 20, 9).residual);
    EXPECT_THROW(cp_als(FTensor::scalar(1.0), 1, 5, 0), std::invalid_argument);
}
