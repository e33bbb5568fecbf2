#pragma once
//
// Project     : normqr
// Module      : least_deviation
// Description : argmin_c ||b - A c|| solvers; l1 via linear programming,
//               l2 via Householder least squares
//

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "normqr/householder.hpp"
#include "normqr/lp.hpp"
#include "normqr/matrix.hpp"

namespace normqr {

struct LeastDeviationSolution {
    std::vector<double> coefficients;  // c, length A.cols()
    std::vector<double> residual;      // b - A c
    double residual_norm = 0.0;
};

/// Builds the linear program equivalent to argmin_x ||b - A x||_1.
///
/// Variable layout is t then x: m auxiliary variables bounding the residual
/// components from above, then the n coefficients. The 2m inequality rows are
///     A x - t <=  b      (rows 0..m-1)
///    -A x - t <= -b      (rows m..2m-1)
/// with t >= 0 and x free, minimizing sum(t).
inline LinearProgram encode_l1_as_lp(const DenseMatrix& A, std::span<const double> b) {
    const std::size_t m = A.rows(), n = A.cols();
    if (b.size() != m) throw ShapeError("encode_l1_as_lp: b length does not match A rows");
    constexpr double inf = std::numeric_limits<double>::infinity();

    LinearProgram lp;
    lp.objective.assign(m + n, 0.0);
    for (std::size_t i = 0; i < m; ++i) lp.objective[i] = 1.0;

    lp.ineq_matrix = DenseMatrix(2 * m, m + n);
    for (std::size_t i = 0; i < m; ++i) {
        lp.ineq_matrix(i, i) = -1.0;
        lp.ineq_matrix(m + i, i) = -1.0;
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) {
            const double a = A(i, j);
            lp.ineq_matrix(i, m + j) = a;
            lp.ineq_matrix(m + i, m + j) = -a;
        }

    lp.ineq_bound.assign(2 * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        lp.ineq_bound[i] = b[i];
        lp.ineq_bound[m + i] = -b[i];
    }

    lp.lower.assign(m + n, 0.0);
    lp.upper.assign(m + n, inf);
    for (std::size_t j = m; j < m + n; ++j) lp.lower[j] = -inf;
    return lp;
}

namespace detail {

/// Vertex known to be feasible for the l1 encoding: x = 0, t_i = |b_i|.
/// Per row pair, t_i is basic in whichever row is tight and the slack of the
/// other row is basic. Lets the simplex skip phase 1 entirely.
inline SimplexWarmStart l1_warm_start(std::size_t m, std::size_t n,
                                      std::span<const double> b) {
    SimplexWarmStart ws;
    const std::size_t nvars = m + n;
    ws.basic_of_row.assign(2 * m, 0);
    ws.status.assign(nvars + 2 * m, VarStatus::AtLower);
    for (std::size_t j = 0; j < n; ++j) ws.status[m + j] = VarStatus::FreeZero;
    for (std::size_t i = 0; i < m; ++i) {
        ws.status[i] = VarStatus::Basic;  // t_i
        const std::size_t slack1 = nvars + i, slack2 = nvars + m + i;
        if (b[i] >= 0.0) {
            ws.basic_of_row[m + i] = i;
            ws.basic_of_row[i] = slack1;
            ws.status[slack1] = VarStatus::Basic;
            ws.status[slack2] = VarStatus::AtLower;
        } else {
            ws.basic_of_row[i] = i;
            ws.basic_of_row[m + i] = slack2;
            ws.status[slack2] = VarStatus::Basic;
            ws.status[slack1] = VarStatus::AtLower;
        }
    }
    return ws;
}

/// solve_l1 with an optional abandon threshold (see SimplexSolver). When the
/// optimum is provably below `abandon_below`, the returned solution is a
/// feasible point whose residual norm still upper-bounds the optimum, and
/// *abandoned is set.
inline LeastDeviationSolution solve_l1_impl(const DenseMatrix& A, std::span<const double> b,
                                            double abandon_below, bool* abandoned) {
    const std::size_t m = A.rows(), n = A.cols();
    if (b.size() != m) throw ShapeError("solve_l1: b length does not match A rows");
    if (n > m) throw ShapeError("solve_l1: requires rows >= cols");
    if (abandoned != nullptr) *abandoned = false;

    LeastDeviationSolution out;
    out.coefficients.assign(n, 0.0);
    if (n == 0) {
        out.residual.assign(b.begin(), b.end());
        double s = 0.0;
        for (double v : b) s += std::abs(v);
        out.residual_norm = s;
        return out;
    }

    // Scale b to unit l1 norm so the LP tolerances stay meaningful as the
    // factorization residuals decay toward machine precision.
    double bnorm = 0.0;
    for (double v : b) bnorm += std::abs(v);
    if (bnorm == 0.0) {
        out.residual.assign(m, 0.0);
        out.residual_norm = 0.0;
        return out;
    }
    const double scale = 1.0 / bnorm;
    std::vector<double> bs(m);
    for (std::size_t i = 0; i < m; ++i) bs[i] = b[i] * scale;

    LinearProgram lp = encode_l1_as_lp(A, bs);
    SimplexSolver solver(lp);
    if (abandon_below > 0.0) solver.set_abandon_below(abandon_below * scale);
    LPSolution sol = solver.solve(l1_warm_start(m, n, bs));
    if (sol.status != LPStatus::Optimal)
        throw NonConvergenceError("solve_l1: LP reported a non-optimal status");
    if (abandoned != nullptr) *abandoned = solver.abandoned();

    for (std::size_t j = 0; j < n; ++j) out.coefficients[j] = sol.x[m + j] * bnorm;
    out.residual.assign(b.begin(), b.end());
    for (std::size_t j = 0; j < n; ++j) {
        const double c = out.coefficients[j];
        if (c == 0.0) continue;
        auto col = A.col(j);
        for (std::size_t i = 0; i < m; ++i) out.residual[i] -= col[i] * c;
    }
    double rn = 0.0;
    for (double v : out.residual) rn += std::abs(v);
    out.residual_norm = rn;
    return out;
}

}  // namespace detail

/// Minimum-l1 solve of A c ~ b through the linear program of
/// encode_l1_as_lp. The reported residual and its norm are recomputed from
/// the returned coefficients, not read off the LP tableau.
///
/// The l1 minimizer need not be unique; the residual norm is the contract,
/// the coefficient vector is whichever optimal vertex the deterministic
/// simplex reaches.
inline LeastDeviationSolution solve_l1(const DenseMatrix& A, std::span<const double> b) {
    return detail::solve_l1_impl(A, b, 0.0, nullptr);
}

/// Euclidean least-squares solve via Householder QR of A. The residual is
/// orthogonal to the column space; a rank-deficient basis raises
/// RankDeficientError.
inline LeastDeviationSolution solve_l2(const DenseMatrix& A, std::span<const double> b) {
    const std::size_t m = A.rows(), n = A.cols();
    if (b.size() != m) throw ShapeError("solve_l2: b length does not match A rows");
    if (n > m) throw ShapeError("solve_l2: requires rows >= cols");

    LeastDeviationSolution out;
    out.coefficients.assign(n, 0.0);
    if (n == 0) {
        out.residual.assign(b.begin(), b.end());
        double s = 0.0;
        for (double v : b) s += v * v;
        out.residual_norm = std::sqrt(s);
        return out;
    }

    detail::HouseholderQR qr(A);
    out.coefficients = qr.solve_ls(b);
    out.residual.assign(b.begin(), b.end());
    for (std::size_t j = 0; j < n; ++j) {
        const double c = out.coefficients[j];
        if (c == 0.0) continue;
        auto col = A.col(j);
        for (std::size_t i = 0; i < m; ++i) out.residual[i] -= col[i] * c;
    }
    double s = 0.0;
    for (double v : out.residual) s += v * v;
    out.residual_norm = std::sqrt(s);
    return out;
}

}  // namespace normqr
