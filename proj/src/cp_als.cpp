// SPDX-License-Identifier: MIT
#include "brank/cp_als.hpp"

#include "brank/random.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace brank {

namespace {

using Eigen::MatrixXd;

PureFactorization<double> to_model(const std::vector<MatrixXd>& a) {
    PureFactorization<double> f;
    if (a.empty()) return f;
    for (Eigen::Index c = 0; c < a[0].cols(); ++c) {
        std::vector<std::vector<double>> term;
        for (const auto& m : a) term.emplace_back(m.col(c).data(), m.col(c).data() + m.rows());
        f.terms.push_back(std::move(term));
    }
    return f;
}

double model_residual(const FTensor& t, const std::vector<MatrixXd>& a) {
    const std::size_t p = t.order();
    const Eigen::Index r = a.empty() ? 0 : a[0].cols();
    std::vector<std::size_t> idx(p, 0);
    double sum = 0.0;
    Eigen::RowVectorXd prod(r);
    for (std::size_t lin = 0; lin < t.size(); ++lin) {
        prod.setOnes();
        for (std::size_t m = 0; m < p; ++m) prod.array() *= a[m].row(static_cast<Eigen::Index>(idx[m])).array();
        const double d = t[lin] - prod.sum();
        sum += d * d;
        for (std::size_t j = p; j-- > 0;) {
            if (++idx[j] < t.dims()[j]) break;
            idx[j] = 0;
        }
    }
    return std::sqrt(sum);
}

void update_mode(const FTensor& t, std::vector<MatrixXd>& a, std::size_t mode) {
    const std::size_t p = t.order();
    const Eigen::Index r = a[mode].cols();
    MatrixXd mttkrp = MatrixXd::Zero(a[mode].rows(), r);
    std::vector<std::size_t> idx(p, 0);
    Eigen::RowVectorXd prod(r);
    for (std::size_t lin = 0; lin < t.size(); ++lin) {
        if (t[lin] != 0.0) {
            prod.setConstant(t[lin]);
            for (std::size_t m = 0; m < p; ++m)
                if (m != mode) prod.array() *= a[m].row(static_cast<Eigen::Index>(idx[m])).array();
            mttkrp.row(static_cast<Eigen::Index>(idx[mode])) += prod;
        }
        for (std::size_t j = p; j-- > 0;) {
            if (++idx[j] < t.dims()[j]) break;
            idx[j] = 0;
        }
    }
    MatrixXd gram = MatrixXd::Ones(r, r);
    for (std::size_t m = 0; m < p; ++m)
        if (m != mode) gram.array() *= (a[m].transpose() * a[m]).array();
    // Minimum-norm solution of A * gram = mttkrp; gram is symmetric.
    a[mode] = gram.completeOrthogonalDecomposition().solve(mttkrp.transpose()).transpose();
}

}  // namespace

CpResult cp_als(const FTensor& t, std::size_t r, std::size_t iterations, std::uint64_t seed) {
    CpResult out;
    if (t.order() == 0) throw std::invalid_argument("cp_als needs a tensor with at least one mode");
    if (r == 0) {
        out.residual = frobenius_norm(t);
        return out;
    }
    Rng rng = make_rng(seed, StreamKind::cp_init);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<MatrixXd> a;
    for (std::size_t d : t.dims()) {
        MatrixXd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(r));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = normal(rng);
        a.push_back(std::move(m));
    }
    const double norm = frobenius_norm(t);
    out.residual = model_residual(t, a);
    for (std::size_t it = 0; it < iterations; ++it) {
        for (std::size_t mode = 0; mode < t.order(); ++mode) update_mode(t, a, mode);
        const double res = model_residual(t, a);
        out.history.push_back(res);
        out.residual = res;
        if (res <= 1e-13 * (1.0 + norm)) break;
    }
    out.model = to_model(a);
    return out;
}

CpResult cp_als(const QTensor& t, std::size_t r, std::size_t iterations, std::uint64_t seed) {
    return cp_als(to_float(t), r, iterations, seed);
}

CpResult cp_als_best(const FTensor& t, std::size_t r, std::size_t iterations, std::uint64_t seed, std::size_t restarts) {
    if (restarts == 0) throw std::invalid_argument("cp_als_best needs at least one restart");
    CpResult best;
    best.residual = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < restarts; ++i) {
        CpResult run = cp_als(t, r, iterations, derive_seed(seed, StreamKind::cp_init, {i}));
        if (run.residual < best.residual) best = std::move(run);
    }
    return best;
}

}  // namespace brank
