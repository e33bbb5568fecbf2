#pragma once
//
// Project     : normqr
// Module      : lu
// Description : dense LU solve with partial pivoting
//

#include <cmath>
#include <cstddef>
#include <vector>

#include "normqr/matrix.hpp"

namespace normqr {

/// Solves A X = B by LU factorization with partial pivoting. A must be
/// square. A pivot at or below working precision (relative to the largest
/// entry of A) raises SingularMatrixError.
inline DenseMatrix lu_solve(const DenseMatrix& A, const DenseMatrix& B) {
    const std::size_t n = A.rows();
    if (A.cols() != n) throw ShapeError("lu_solve: A must be square");
    if (B.rows() != n) throw ShapeError("lu_solve: B row count mismatch");
    if (n == 0) return B;

    double amax = 0.0;
    for (double v : A.data()) amax = std::max(amax, std::abs(v));
    const double pivot_floor = amax * static_cast<double>(n) * 1e-16;

    // LU in a working copy; row swaps tracked in piv.
    DenseMatrix LU = A;
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double pmax = std::abs(LU(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(LU(i, k));
            if (v > pmax) {
                pmax = v;
                p = i;
            }
        }
        if (pmax <= pivot_floor)
            throw SingularMatrixError("lu_solve: pivot " + std::to_string(pmax) +
                                      " at column " + std::to_string(k) +
                                      " is singular to working precision");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(LU(k, j), LU(p, j));
            std::swap(piv[k], piv[p]);
        }
        const double inv = 1.0 / LU(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = LU(i, k) * inv;
            LU(i, k) = f;
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) LU(i, j) -= f * LU(k, j);
        }
    }

    DenseMatrix X(n, B.cols());
    std::vector<double> y(n);
    for (std::size_t c = 0; c < B.cols(); ++c) {
        for (std::size_t i = 0; i < n; ++i) y[i] = B(piv[i], c);
        for (std::size_t i = 1; i < n; ++i) {
            double s = y[i];
            for (std::size_t j = 0; j < i; ++j) s -= LU(i, j) * y[j];
            y[i] = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double s = y[ii];
            for (std::size_t j = ii + 1; j < n; ++j) s -= LU(ii, j) * y[j];
            y[ii] = s / LU(ii, ii);
        }
        for (std::size_t i = 0; i < n; ++i) X(i, c) = y[i];
    }
    return X;
}

/// Dense inverse through lu_solve against the identity.
inline DenseMatrix inverse(const DenseMatrix& A) {
    return lu_solve(A, DenseMatrix::identity(A.rows()));
}

}  // namespace normqr
