// SPDX-License-Identifier: MIT
#pragma once

#include "brank/tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace brank {

struct CpResult {
    PureFactorization<double> model;
    /// Frobenius distance between T and the model.
    double residual = 0.0;
    /// Residual after each sweep.
    std::vector<double> history;
};

/// Rank-r CP fit by alternating least squares. Each sweep solves the
/// least-squares problem for one factor matrix at a time, so the residual is
/// nonincreasing. r = 0 returns the zero model.
CpResult cp_als(const FTensor& t, std::size_t r, std::size_t iterations, std::uint64_t seed);
CpResult cp_als(const QTensor& t, std::size_t r, std::size_t iterations, std::uint64_t seed);

/// Best of `restarts` independent runs.
CpResult cp_als_best(const FTensor& t, std::size_t r, std::size_t iterations, std::uint64_t seed, std::size_t restarts);

}  // namespace brank
