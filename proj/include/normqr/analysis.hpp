#pragma once
//
// Project     : normqr
// Module      : analysis
// Description : condition numbers, factorization errors and low-rank error
//               curves for the experiment harness
//

#include <cstddef>
#include <utility>
#include <vector>

#include "normqr/lu.hpp"
#include "normqr/matrix.hpp"
#include "normqr/rrqr.hpp"

namespace normqr {

/// One row of the conditioning experiments.
struct ConditionReport {
    double cond_A = 0.0;
    double cond_Q = 0.0;
    double error_1 = 0.0;         // ||A P - Q R||_1
    std::size_t m = 0;
    double spectrum_ratio = 1.0;  // sigma_min / sigma_max used to build A
};

/// kappa_1 = ||A||_1 ||A^-1||_1 with the inverse computed densely; an
/// estimator would add noise to exactly the quantity the conditioning
/// experiments monitor.
inline double cond_1(const DenseMatrix& A) {
    if (A.rows() != A.cols() || A.empty()) throw ShapeError("cond_1: square nonempty A required");
    return induced_1norm(A) * induced_1norm(inverse(A));
}

/// ||A P - Q R||_1 for a completed factorization of A.
inline double factorization_error(const DenseMatrix& A, const Factorization& f) {
    if (A.rows() != f.Q.rows() || A.cols() != f.R.cols() || f.perm.size() != A.cols())
        throw ShapeError("factorization_error: shape mismatch");
    return induced_1norm(subtract(permute_cols(A, f.perm), matmul(f.Q, f.R)));
}

/// The diagonal of R, which is the per-step residual norm sequence.
inline std::vector<double> diag_profile(const Factorization& f) { return f.gammas; }

/// Truncation error at each requested rank; nonincreasing in k.
inline std::vector<std::pair<std::size_t, double>> lowrank_error_curve(
    const DenseMatrix& A, const Factorization& f, const std::vector<std::size_t>& ks) {
    std::vector<std::pair<std::size_t, double>> curve;
    curve.reserve(ks.size());
    for (std::size_t k : ks) curve.emplace_back(k, truncate(f, k, A).error_1norm);
    return curve;
}

}  // namespace normqr
