#pragma once
//
// Project     : normqr
// Module      : rrqr
// Description : arbitrary-norm rank-revealing QR factorization with maximin
//               column pivoting, plus the classical column-pivoted
//               Householder baseline, truncation and reconstruction
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "normqr/householder.hpp"
#include "normqr/least_deviation.hpp"
#include "normqr/matrix.hpp"
#include "normqr/norms.hpp"

namespace normqr {

/// Result of a rank-revealing factorization A P = Q R.
///
/// Q has r columns of unit norm (in `norm`), R is r x n upper trapezoidal
/// with R(i,i) = gammas[i] nonincreasing, and perm records which original
/// column was pivoted at each position. When the factorization stopped
/// before exhausting the columns (tolerance or max_rank), R's trailing
/// columns hold best-fit coefficients of the unprocessed columns over the
/// processed basis, so A P ~ Q R still holds up to the stopping residual.
struct Factorization {
    DenseMatrix Q;               // m x r
    DenseMatrix R;               // r x n
    Permutation perm;            // length n
    std::vector<double> gammas;  // per-step residual norms, length r
    NormSpec norm = NormSpec::l1();
    std::size_t r = 0;
};

struct TruncationResult {
    std::size_t k = 0;
    DenseMatrix approx;          // m x n reconstruction from the leading k columns
    double error_1norm = 0.0;
};

namespace detail {

inline LeastDeviationSolution eval_candidate(const NormSpec& norm, const DenseMatrix& basis,
                                             std::span<const double> b, double abandon_below,
                                             bool* abandoned) {
    *abandoned = false;
    if (norm.kind() == NormKind::L1 && basis.cols() > 0)
        return solve_l1_impl(basis, b, abandon_below, abandoned);
    return norm.min_deviation(basis, b);
}

}  // namespace detail

/// Arbitrary-norm rank-revealing QR factorization.
///
/// Step j picks, among the remaining columns, the one whose best
/// approximation over the current basis span is worst (the maximin rule),
/// appends its normalized residual to Q and its fit coefficients to R.
/// Ties take the lowest column index. The per-step residual norms gamma_j
/// land on R's diagonal, which is nonincreasing by the optimality of the
/// inner solves.
///
/// Stops early when the next residual norm falls to rel_tol * gammas[0]
/// (exact zeros always stop, so an all-zero matrix yields r = 0), or after
/// max_rank columns.
///
/// Candidate evaluation is sequential and deterministic. A residual norm
/// computed at an earlier step upper-bounds the same column's value at every
/// later step (the basis only grows), so candidates whose stale bound cannot
/// beat the running maximum are skipped without solving; the selected pivot
/// and every returned value are identical to the exhaustive loop.
inline Factorization rrqr_factor(const DenseMatrix& A, const NormSpec& norm,
                                 double rel_tol = 0.0,
                                 std::optional<std::size_t> max_rank = std::nullopt) {
    if (A.empty()) throw ShapeError("rrqr_factor: empty matrix");
    if (!(rel_tol >= 0.0)) throw ShapeError("rrqr_factor: rel_tol must be nonnegative");
    const std::size_t m = A.rows(), n = A.cols();
    const double inf = std::numeric_limits<double>::infinity();

    std::size_t step_cap = std::min(m, n);
    if (max_rank) step_cap = std::min(step_cap, *max_rank);

    std::vector<std::size_t> remaining(n);
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<double> stale(n, inf);  // upper bound on each column's current residual norm

    DenseMatrix qwork(m, std::min(m, n));
    std::vector<std::size_t> pivot_order;
    std::vector<std::vector<double>> coeffs;  // per pivoted position
    std::vector<double> gammas;
    // Fit coefficients for columns left unprocessed at an early stop.
    std::vector<std::vector<double>> tail_coeffs;

    std::vector<std::size_t> order;
    DenseMatrix basis(m, 0);
    for (;;) {
        const std::size_t j = pivot_order.size();
        if (remaining.empty()) break;

        basis = DenseMatrix(m, j);
        for (std::size_t t = 0; t < j; ++t)
            std::copy(qwork.col(t).begin(), qwork.col(t).end(), basis.col(t).begin());

        const bool rank_capped = j >= step_cap;
        bool stop = rank_capped;
        std::size_t best_idx = n;
        double best_val = -inf;
        LeastDeviationSolution best_sol;

        if (!rank_capped) {
            // Evaluate candidates in decreasing order of their stale bounds
            // so the running maximum prunes as much as possible.
            order = remaining;
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (stale[a] != stale[b]) return stale[a] > stale[b];
                return a < b;
            });
            for (std::size_t i : order) {
                if (stale[i] < best_val || (stale[i] == best_val && i > best_idx)) continue;
                bool abandoned = false;
                LeastDeviationSolution sol;
                try {
                    sol = detail::eval_candidate(norm, basis, A.col(i),
                                                 best_idx == n ? 0.0 : best_val, &abandoned);
                } catch (const NumericError& e) {
                    throw FactorizationError(j, i, e.what());
                }
                stale[i] = sol.residual_norm;
                if (abandoned) continue;
                if (sol.residual_norm > best_val ||
                    (sol.residual_norm == best_val && i < best_idx)) {
                    best_val = sol.residual_norm;
                    best_idx = i;
                    best_sol = std::move(sol);
                }
            }
            const double gamma0 = gammas.empty() ? best_val : gammas[0];
            stop = best_val <= rel_tol * gamma0 || best_val == 0.0;
        }

        if (stop) {
            // Early termination: fill the trailing coefficients with full
            // solves over the final basis and leave the remaining columns in
            // index order.
            std::sort(remaining.begin(), remaining.end());
            tail_coeffs.reserve(remaining.size());
            for (std::size_t i : remaining) {
                if (!rank_capped && i == best_idx) {
                    tail_coeffs.push_back(best_sol.coefficients);
                    continue;
                }
                try {
                    bool unused = false;
                    tail_coeffs.push_back(
                        detail::eval_candidate(norm, basis, A.col(i), 0.0, &unused)
                            .coefficients);
                } catch (const NumericError& e) {
                    throw FactorizationError(j, i, e.what());
                }
            }
            break;
        }

        // Commit the pivot.
        const double gamma = best_val;
        pivot_order.push_back(best_idx);
        remaining.erase(std::find(remaining.begin(), remaining.end(), best_idx));
        coeffs.push_back(std::move(best_sol.coefficients));
        gammas.push_back(gamma);
        auto qj = qwork.col(j);
        const double ginv = 1.0 / gamma;
        for (std::size_t i = 0; i < m; ++i) qj[i] = best_sol.residual[i] * ginv;
    }

    const std::size_t r = pivot_order.size();
    Factorization f;
    f.norm = norm;
    f.r = r;
    f.gammas = std::move(gammas);
    f.Q = DenseMatrix(m, r);
    for (std::size_t t = 0; t < r; ++t)
        std::copy(qwork.col(t).begin(), qwork.col(t).end(), f.Q.col(t).begin());
    f.R = DenseMatrix(r, n);
    for (std::size_t t = 0; t < r; ++t) {
        for (std::size_t i = 0; i < coeffs[t].size(); ++i) f.R(i, t) = coeffs[t][i];
        f.R(t, t) = f.gammas[t];
    }
    std::vector<std::size_t> perm = pivot_order;
    for (std::size_t t = 0; t < tail_coeffs.size(); ++t) {
        perm.push_back(remaining[t]);
        for (std::size_t i = 0; i < tail_coeffs[t].size(); ++i) f.R(i, r + t) = tail_coeffs[t][i];
    }
    f.perm = Permutation(std::move(perm));
    return f;
}

/// Classical Householder QR with column pivoting on the largest remaining
/// Euclidean column norm. Signs are normalized so R's diagonal is
/// nonnegative; gammas holds the diagonal. Stops only when every remaining
/// column is exactly zero.
inline Factorization classical_cpqr(const DenseMatrix& A) {
    if (A.empty()) throw ShapeError("classical_cpqr: empty matrix");
    const std::size_t m = A.rows(), n = A.cols();
    const std::size_t kmax = std::min(m, n);

    DenseMatrix W = A;
    std::vector<std::size_t> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    std::vector<detail::Reflector> hs;
    std::vector<char> flips;
    std::vector<double> diag;

    std::size_t r = 0;
    for (std::size_t k = 0; k < kmax; ++k) {
        // Fresh trailing norms each step; ties take the lowest original
        // column index.
        std::size_t pivot = k;
        double pbest = -1.0;
        for (std::size_t p = k; p < n; ++p) {
            double s = 0.0;
            auto cp = W.col(p);
            for (std::size_t i = k; i < m; ++i) s += cp[i] * cp[i];
            if (s > pbest || (s == pbest && ids[p] < ids[pivot])) {
                pbest = s;
                pivot = p;
            }
        }
        if (pbest == 0.0) break;  // remaining columns exactly zero
        if (pivot != k) {
            for (std::size_t i = 0; i < m; ++i) std::swap(W(i, k), W(i, pivot));
            std::swap(ids[k], ids[pivot]);
        }
        auto ck = W.col(k);
        detail::Reflector h =
            detail::make_reflector(std::span<const double>(ck.data() + k, m - k));
        for (std::size_t p = k + 1; p < n; ++p) {
            auto cp = W.col(p);
            detail::apply_reflector(std::span<const double>(h.v.data(), m - k), h.beta,
                                    std::span<double>(cp.data() + k, m - k));
        }
        // Normalize the diagonal sign: A P = (Q D)(D R) with D = diag(+-1),
        // so a negative alpha negates row k of R and column k of Q.
        double alpha = h.alpha;
        const bool flip = alpha < 0.0;
        if (flip) {
            alpha = -alpha;
            for (std::size_t p = k + 1; p < n; ++p) W(k, p) = -W(k, p);
        }
        W(k, k) = alpha;
        diag.push_back(alpha);
        hs.push_back(std::move(h));
        flips.push_back(flip ? 1 : 0);
        r = k + 1;
    }

    Factorization f;
    f.norm = NormSpec::l2();
    f.r = r;
    f.gammas = diag;
    f.R = DenseMatrix(r, n);
    for (std::size_t pos = 0; pos < n; ++pos)
        for (std::size_t i = 0; i < std::min(r, pos + 1); ++i) f.R(i, pos) = W(i, pos);
    for (std::size_t t = 0; t < r; ++t) f.R(t, t) = diag[t];

    // Q economy: apply the reflectors to the identity, then the sign flips.
    f.Q = DenseMatrix(m, r);
    for (std::size_t j = 0; j < r; ++j) {
        auto qj = f.Q.col(j);
        qj[j] = 1.0;
        for (std::size_t kk = std::min(j + 1, r); kk-- > 0;)
            detail::apply_reflector(std::span<const double>(hs[kk].v.data(), m - kk),
                                    hs[kk].beta, std::span<double>(qj.data() + kk, m - kk));
        if (flips[j])
            for (std::size_t i = 0; i < m; ++i) qj[i] = -qj[i];
    }

    f.perm = Permutation(std::move(ids));
    return f;
}

/// Rank-k reconstruction Q(:,1:k) R(1:k,:) P^T.
inline DenseMatrix truncate(const Factorization& f, std::size_t k) {
    if (k < 1 || k > f.r) throw ShapeError("truncate: k out of range [1, r]");
    const std::size_t m = f.Q.rows(), n = f.R.cols();
    DenseMatrix qk(m, k), rk(k, n);
    for (std::size_t t = 0; t < k; ++t)
        std::copy(f.Q.col(t).begin(), f.Q.col(t).end(), qk.col(t).begin());
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < k; ++i) rk(i, j) = f.R(i, j);
    return permute_cols(matmul(qk, rk), f.perm.inverse());
}

/// Rank-k truncation with its induced-1-norm error against the original A.
inline TruncationResult truncate(const Factorization& f, std::size_t k, const DenseMatrix& A) {
    TruncationResult t;
    t.k = k;
    t.approx = truncate(f, k);
    if (A.rows() != t.approx.rows() || A.cols() != t.approx.cols())
        throw ShapeError("truncate: A shape does not match the factorization");
    t.error_1norm = induced_1norm(subtract(A, t.approx));
    return t;
}

/// Q R P^T; equals A up to the factorization error when r is full.
inline DenseMatrix reconstruct(const Factorization& f) {
    return permute_cols(matmul(f.Q, f.R), f.perm.inverse());
}

}  // namespace normqr
