// SPDX-License-Identifier: MIT
#pragma once

#include "brank/minors.hpp"
#include "brank/tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace brank {

/// Violation is a certificate. Certification is only issued where a complete
/// set of equations is known (k <= 2, exact field). Everything else that finds
/// no violation is `inconclusive` with `passed` set.
enum class Verdict { certified, violated, inconclusive };

std::string_view verdict_name(Verdict v);

/// A nonzero (k+1)x(k+1) flattening minor.
struct MinorEvidence {
    std::vector<std::size_t> row_modes;  // 0-based
    MinorSpec spec;
    Rational value;
    double magnitude = 0.0;  // numerical mode: smallest singular value of the submatrix
};

/// The pure contraction that exposed a violation.
struct ContractionEvidence {
    std::vector<std::size_t> modes;  // 0-based, ascending
    std::vector<std::vector<Rational>> covectors;
    std::size_t subset_index = 0;
    std::size_t trial = 0;
};

struct TrialStats {
    bool randomized = false;
    std::size_t p0 = 0;
    std::size_t subsets = 0;
    std::size_t trials_per_subset = 0;
    /// Tasks up to and including the first violation, in (subset, trial) order.
    std::size_t tasks_evaluated = 0;
};

struct CertReport {
    Verdict verdict = Verdict::inconclusive;
    std::size_t k = 0;
    bool passed = false;
    bool numerical = false;
    std::string check;  // "flattening_minor", "strassen", or empty
    std::optional<MinorEvidence> minor;
    std::optional<ContractionEvidence> contraction;
    std::optional<Rational> strassen_value;
    std::vector<double> residuals;  // numerical mode: per-bipartition sigma_{k+1} / sigma_1
    TrialStats stats;

    friend bool operator==(const CertReport&, const CertReport&) = default;
};

inline bool operator==(const MinorEvidence& a, const MinorEvidence& b) {
    return a.row_modes == b.row_modes && a.spec == b.spec && a.value == b.value && a.magnitude == b.magnitude;
}
inline bool operator==(const ContractionEvidence& a, const ContractionEvidence& b) {
    return a.modes == b.modes && a.covectors == b.covectors && a.subset_index == b.subset_index && a.trial == b.trial;
}
inline bool operator==(const TrialStats& a, const TrialStats& b) {
    return a.randomized == b.randomized && a.p0 == b.p0 && a.subsets == b.subsets &&
           a.trials_per_subset == b.trials_per_subset && a.tasks_evaluated == b.tasks_evaluated;
}

struct TestConfig {
    std::size_t k = 1;
    std::optional<std::size_t> p0;
    std::size_t trials = 5;
    std::uint64_t seed = 0;
    long coeff_bound = 10;
    double float_threshold = 1e-9;
    std::size_t threads = 1;
};

/// Max over bipartitions of the flattening rank (1 for a nonzero tensor with
/// fewer than two modes).
std::size_t flattening_rank_bound(const QTensor& t);
std::size_t flattening_rank_bound(const FTensor& t, double tol = 1e-9);

/// Nonzero (k+1)x(k+1) minor of the flattening with the given row modes, if
/// its rank exceeds k.
std::optional<MinorEvidence> flattening_violation(const QTensor& t, const std::vector<std::size_t>& row_modes,
                                                  std::size_t k);
/// First flattening (bipartition order) of rank > k, with a nonzero
/// (k+1)x(k+1) minor read off the elimination pivots.
std::optional<MinorEvidence> find_minor_violation(const QTensor& t, std::size_t k);

/// Rank <= 1 iff every 2x2 flattening minor vanishes.
CertReport test_rank_le_1(const QTensor& t);
/// Border rank <= 2 iff every 3x3 flattening minor vanishes.
CertReport test_brank_le_2(const QTensor& t);
/// k <= 2: the complete tests above. k >= 3: flattening minors, plus
/// Strassen's invariant on l x l x 3 tensors with 2k + 1 <= 3l; at best
/// inconclusive-pass.
CertReport direct_test(const QTensor& t, std::size_t k);
/// Singular-value version of the flattening test for float data; never certifies.
CertReport numerical_flattening_test(const FTensor& t, std::size_t k, double threshold = 1e-9);

/// Images of T under random integer maps V_i -> K^{n_target}, one tuple per trial.
std::vector<QTensor> reduce_all_same(const QTensor& t, std::size_t n_target, std::size_t trials, std::uint64_t seed);

/// 2(k+1) floor(log2(k+1)).
std::size_t default_p0_raw(std::size_t k);
/// max(3, default_p0_raw(k)).
std::size_t default_p0(std::size_t k);

/// Subsets of {0..p-1} of the given size in colexicographic order.
std::vector<std::vector<std::size_t>> colex_subsets(std::size_t p, std::size_t size);

/// For every (p - p0)-subset J of modes and each trial, contracts T along a
/// random pure tensor of integer covectors and runs direct_test on the
/// resulting p0-tensor. Tensors with p <= p0 are tested directly.
CertReport random_contraction_test(const QTensor& t, const TestConfig& config);

/// The covectors used for (subset_index, trial) in random_contraction_test.
std::vector<std::vector<Rational>> contraction_covectors(const QTensor& t, std::span<const std::size_t> modes,
                                                         const TestConfig& config, std::size_t subset_index,
                                                         std::size_t trial);

/// Re-evaluates a violation from scratch: contracts with the stored
/// covectors, then evaluates the stored minor symbolically (or Strassen's
/// invariant). True iff the witness reproduces a nonzero value.
bool witness_reproduces(const QTensor& t, const CertReport& report);

/// direct_test (or random_contraction_test when `config.p0` is set) over many
/// tensors using config.threads workers.
std::vector<CertReport> certify_batch(const std::vector<QTensor>& tensors, const TestConfig& config);

}  // namespace brank
