#pragma once
//
// Project     : normqr
// Module      : householder
// Description : Householder QR kernels shared by the l2 solver, the
//               classical column-pivoted baseline and the generators
//

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "normqr/matrix.hpp"

namespace normqr::detail {

/// Householder reflector for x: returns (v, beta) with v[0] = 1 implied,
/// such that (I - beta v v^T) x = (-sign(x0)*||x||, 0, ..., 0).
/// v is written over x[1:]; the function returns beta and the resulting
/// leading entry through out parameters.
struct Reflector {
    std::vector<double> v;  // v[0] == 1 stored explicitly
    double beta = 0.0;
    double alpha = 0.0;     // new leading entry after reflection
};

inline Reflector make_reflector(std::span<const double> x) {
    Reflector h;
    const std::size_t n = x.size();
    h.v.assign(x.begin(), x.end());
    double sigma = 0.0;
    for (std::size_t i = 1; i < n; ++i) sigma += x[i] * x[i];
    if (sigma == 0.0) {
        h.beta = 0.0;
        h.alpha = x.empty() ? 0.0 : x[0];
        if (!h.v.empty()) h.v[0] = 1.0;
        return h;
    }
    // v0 = x0 + sign(x0) * ||x||: cancellation-free in both branches; the
    // reflection sends x to -sign(x0) * ||x|| * e1.
    const double mu = std::sqrt(x[0] * x[0] + sigma);
    const double v0 = x[0] <= 0.0 ? x[0] - mu : x[0] + mu;
    h.beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
    const double inv = 1.0 / v0;
    h.v[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) h.v[i] *= inv;
    h.alpha = (x[0] <= 0.0) ? mu : -mu;
    return h;
}

/// Applies (I - beta v v^T) to a column slice in place.
inline void apply_reflector(std::span<const double> v, double beta, std::span<double> y) {
    if (beta == 0.0) return;
    double dot = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * y[i];
    dot *= beta;
    for (std::size_t i = 0; i < v.size(); ++i) y[i] -= dot * v[i];
}

/// Plain (unpivoted) Householder QR of an m x n matrix, m >= n. Reflectors
/// are kept packed below the diagonal of `qr`; the diagonal of R is in
/// `rdiag` (the packed diagonal holds v[0] = 1 implicitly, so R's diagonal
/// needs its own store).
class HouseholderQR {
public:
    explicit HouseholderQR(const DenseMatrix& A) : qr_(A), betas_(A.cols()), rdiag_(A.cols()) {
        const std::size_t m = A.rows(), n = A.cols();
        if (m < n) throw ShapeError("HouseholderQR: requires rows >= cols");
        std::vector<double> slice(m);
        for (std::size_t k = 0; k < n; ++k) {
            auto colk = qr_.col(k);
            Reflector h = make_reflector(std::span<const double>(colk.data() + k, m - k));
            betas_[k] = h.beta;
            rdiag_[k] = h.alpha;
            for (std::size_t i = k; i < m; ++i) colk[i] = h.v[i - k];
            for (std::size_t j = k + 1; j < n; ++j) {
                auto cj = qr_.col(j);
                apply_reflector(std::span<const double>(h.v.data(), m - k), h.beta,
                                std::span<double>(cj.data() + k, m - k));
            }
        }
    }

    std::size_t rows() const noexcept { return qr_.rows(); }
    std::size_t cols() const noexcept { return qr_.cols(); }
    double rdiag(std::size_t k) const { return rdiag_[k]; }

    /// Applies Q^T to a vector of length m in place.
    void apply_qt(std::span<double> y) const {
        const std::size_t m = qr_.rows(), n = qr_.cols();
        for (std::size_t k = 0; k < n; ++k) {
            auto colk = qr_.col(k);
            apply_reflector(std::span<const double>(colk.data() + k, m - k), betas_[k],
                            std::span<double>(y.data() + k, m - k));
        }
    }

    /// Least-squares solve min ||A c - b||_2. Throws RankDeficientError when
    /// an R diagonal falls below rel_tol times the largest one.
    std::vector<double> solve_ls(std::span<const double> b, double rel_tol = 1e-12) const {
        const std::size_t m = qr_.rows(), n = qr_.cols();
        if (b.size() != m) throw ShapeError("HouseholderQR::solve_ls: length mismatch");
        double dmax = 0.0;
        for (std::size_t k = 0; k < n; ++k) dmax = std::max(dmax, std::abs(rdiag_[k]));
        std::vector<double> y(b.begin(), b.end());
        apply_qt(y);
        std::vector<double> c(n, 0.0);
        for (std::size_t kk = n; kk-- > 0;) {
            if (std::abs(rdiag_[kk]) <= rel_tol * dmax || dmax == 0.0)
                throw RankDeficientError("least-squares basis is rank deficient at column " +
                                         std::to_string(kk));
            double s = y[kk];
            for (std::size_t j = kk + 1; j < n; ++j) s -= qr_(kk, j) * c[j];
            c[kk] = s / rdiag_[kk];
        }
        return c;
    }

    /// Economy Q (m x n), built by applying the reflectors to the identity.
    DenseMatrix form_q() const {
        const std::size_t m = qr_.rows(), n = qr_.cols();
        DenseMatrix Q(m, n);
        for (std::size_t j = 0; j < n; ++j) {
            auto qj = Q.col(j);
            qj[j] = 1.0;
            for (std::size_t kk = std::min(j + 1, n); kk-- > 0;) {
                auto colk = qr_.col(kk);
                apply_reflector(std::span<const double>(colk.data() + kk, m - kk), betas_[kk],
                                std::span<double>(qj.data() + kk, m - kk));
            }
        }
        return Q;
    }

private:
    DenseMatrix qr_;
    std::vector<double> betas_;
    std::vector<double> rdiag_;
};

}  // namespace normqr::detail
