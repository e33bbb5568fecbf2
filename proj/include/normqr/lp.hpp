#pragma once
//
// Project     : normqr
// Module      : lp
// Description : dense linear-programming solver; two-phase primal simplex
//               on the bounded-variable form, plus an incremental variant
//               for column-append workloads
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "normqr/matrix.hpp"

namespace normqr {

/// min c.x  subject to  G x <= h  and  lower <= x <= upper.
/// Bounds may be +-infinity for unbounded directions.
struct LinearProgram {
    std::vector<double> objective;  // c
    DenseMatrix ineq_matrix;        // G
    std::vector<double> ineq_bound; // h
    std::vector<double> lower;      // per-variable, -inf allowed
    std::vector<double> upper;      // per-variable, +inf allowed
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
    LPStatus status = LPStatus::Optimal;
    std::vector<double> x;
    double objective_value = 0.0;
};

namespace detail {

constexpr double kLpInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-10;
constexpr double kFeasTol = 1e-8;
constexpr double kDualTol = 1e-9;
constexpr int kStallLimit = 50;    // degenerate pivots before Bland's rule
constexpr int kRefreshEvery = 64;  // fresh beta/reduced-cost recompute interval

inline void validate_lp(const LinearProgram& lp) {
    const std::size_t n = lp.objective.size();
    if (lp.ineq_matrix.cols() != n)
        throw ShapeError("LinearProgram: G column count does not match objective length");
    if (lp.ineq_matrix.rows() != lp.ineq_bound.size())
        throw ShapeError("LinearProgram: G row count does not match bound length");
    if (lp.lower.size() != n || lp.upper.size() != n)
        throw ShapeError("LinearProgram: bound vectors must match objective length");
    for (std::size_t j = 0; j < n; ++j) {
        if (std::isnan(lp.lower[j]) || std::isnan(lp.upper[j]))
            throw ShapeError("LinearProgram: NaN bound");
        if (lp.lower[j] > lp.upper[j])
            throw ShapeError("LinearProgram: lower bound exceeds upper bound at variable " +
                             std::to_string(j));
    }
    for (double v : lp.ineq_bound)
        if (!std::isfinite(v)) throw ShapeError("LinearProgram: non-finite inequality bound");
}

enum class VarStatus : unsigned char { AtLower, AtUpper, FreeZero, Basic };

/// Starting basis for a simplex solve: one basic variable per row
/// (structural j in [0,n), slack of row i as n+i) and a nonbasic status for
/// every variable. Used internally to seed a solver at a known vertex.
struct SimplexWarmStart {
    std::vector<std::size_t> basic_of_row;
    std::vector<VarStatus> status;  // length n + rows
};

/// Shared tableau engine: dense row-major tableau of all variable columns
/// plus the transformed right-hand side, individual variable bounds, Dantzig
/// pricing with Bland fallback after degenerate stalls, and bound flips.
/// Deterministic: all ties break by index. Variables pinned by lo == up are
/// never priced, which is how drivers park inactive columns.
class SimplexCore {
public:
    std::size_t rows_ = 0;
    std::size_t nvars_ = 0;  // variable columns; the rhs column sits at nvars_
    std::size_t width_ = 0;
    std::vector<double> tab_;  // (rows_ + 2) x width_
    std::vector<double> beta_;
    std::vector<double> lo_, up_, cost_;
    std::vector<std::size_t> basis_;
    std::vector<VarStatus> status_;
    double abandon_target_ = -kLpInf;
    bool abandoned_ = false;
    long iters_ = 0;
    long iter_cap_ = 0;
    int stall_ = 0;
    bool bland_ = false;

    void init(std::size_t rows, std::size_t nvars) {
        rows_ = rows;
        nvars_ = nvars;
        width_ = nvars + 1;
        tab_.assign((rows + 2) * width_, 0.0);
        beta_.assign(rows, 0.0);
        lo_.assign(nvars, 0.0);
        up_.assign(nvars, kLpInf);
        cost_.assign(nvars, 0.0);
        basis_.assign(rows, 0);
        status_.assign(nvars, VarStatus::AtLower);
        abandon_target_ = -kLpInf;
        abandoned_ = false;
        iters_ = 0;
        iter_cap_ = 0;
        stall_ = 0;
        bland_ = false;
    }

    double* row(std::size_t i) { return tab_.data() + i * width_; }
    const double* row(std::size_t i) const { return tab_.data() + i * width_; }
    std::size_t rhs_col() const { return nvars_; }
    std::size_t cost_row() const { return rows_; }
    std::size_t aux_row() const { return rows_ + 1; }

    double nonbasic_value(std::size_t j) const {
        switch (status_[j]) {
            case VarStatus::AtLower: return lo_[j];
            case VarStatus::AtUpper: return up_[j];
            default: return 0.0;
        }
    }

    double variable_value(std::size_t j) const {
        if (status_[j] == VarStatus::Basic) {
            for (std::size_t i = 0; i < rows_; ++i)
                if (basis_[i] == j) return beta_[i];
        }
        return nonbasic_value(j);
    }

    /// beta = B^-1 h - sum over nonbasic j with nonzero value of (B^-1 A_j) x_j.
    void refresh_beta() {
        for (std::size_t i = 0; i < rows_; ++i) beta_[i] = row(i)[rhs_col()];
        for (std::size_t j = 0; j < nvars_; ++j) {
            if (status_[j] == VarStatus::Basic) continue;
            const double xj = nonbasic_value(j);
            if (xj == 0.0) continue;
            for (std::size_t i = 0; i < rows_; ++i) beta_[i] -= row(i)[j] * xj;
        }
    }

    /// d = c - c_B^T B^-1 A written into tableau row `out`.
    void refresh_reduced(std::size_t out, const std::vector<double>& costs) {
        double* d = row(out);
        std::fill(d, d + width_, 0.0);
        for (std::size_t j = 0; j < nvars_; ++j) d[j] = costs[j];
        for (std::size_t i = 0; i < rows_; ++i) {
            const double cb = costs[basis_[i]];
            if (cb == 0.0) continue;
            const double* ti = row(i);
            for (std::size_t j = 0; j < width_; ++j) d[j] -= cb * ti[j];
        }
        for (std::size_t i = 0; i < rows_; ++i) d[basis_[i]] = 0.0;
    }

    /// Standard tableau pivot on (r, e); updates every row including the two
    /// cost rows and records the basis change.
    void pivot(std::size_t r, std::size_t e) {
        double* pr = row(r);
        const double inv = 1.0 / pr[e];
        for (std::size_t j = 0; j < width_; ++j) pr[j] *= inv;
        pr[e] = 1.0;
        for (std::size_t i = 0; i < rows_ + 2; ++i) {
            if (i == r) continue;
            double* ti = row(i);
            const double f = ti[e];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width_; ++j) ti[j] -= f * pr[j];
            ti[e] = 0.0;
        }
        basis_[r] = e;
    }

    double current_objective() const {
        double obj = 0.0;
        for (std::size_t j = 0; j < nvars_; ++j) {
            const double c = cost_[j];
            if (c == 0.0) continue;
            obj += c * variable_value(j);
        }
        return obj;
    }

    /// Price-ratio-pivot loop minimizing tableau row `crow`. Pass aux_costs
    /// when crow is the auxiliary row so periodic refreshes rebuild the right
    /// costs; abandonment applies only to the main cost row.
    LPStatus iterate(std::size_t crow, bool allow_unbounded,
                     const std::vector<double>* aux_costs) {
        const bool main = crow == cost_row();
        int since_refresh = 0;
        for (;;) {
            if (++iters_ > iter_cap_)
                throw NonConvergenceError("simplex iteration cap " + std::to_string(iter_cap_) +
                                          " exceeded");
            if (++since_refresh >= kRefreshEvery) {
                since_refresh = 0;
                refresh_beta();
                refresh_reduced(crow, main ? cost_ : *aux_costs);
            }
            if (main && abandon_target_ > -kLpInf && current_objective() < abandon_target_) {
                abandoned_ = true;
                return LPStatus::Optimal;
            }

            // Pricing.
            const double* d = row(crow);
            std::size_t enter = nvars_;
            int enter_dir = 0;
            double best_score = kDualTol;
            for (std::size_t j = 0; j < nvars_; ++j) {
                if (status_[j] == VarStatus::Basic || lo_[j] == up_[j]) continue;
                int dir = 0;
                double score = 0.0;
                switch (status_[j]) {
                    case VarStatus::AtLower:
                        if (d[j] < -kDualTol) { dir = +1; score = -d[j]; }
                        break;
                    case VarStatus::AtUpper:
                        if (d[j] > kDualTol) { dir = -1; score = d[j]; }
                        break;
                    case VarStatus::FreeZero:
                        if (std::abs(d[j]) > kDualTol) {
                            dir = d[j] < 0.0 ? +1 : -1;
                            score = std::abs(d[j]);
                        }
                        break;
                    default: break;
                }
                if (dir == 0) continue;
                if (bland_) { enter = j; enter_dir = dir; break; }
                if (score > best_score) {
                    best_score = score;
                    enter = j;
                    enter_dir = dir;
                }
            }
            if (enter == nvars_) return LPStatus::Optimal;

            // Ratio test over the basic variables plus the entering
            // variable's own opposite bound (bound flip).
            double flip_len = kLpInf;
            if (std::isfinite(lo_[enter]) && std::isfinite(up_[enter]))
                flip_len = up_[enter] - lo_[enter];
            double tstar = kLpInf;
            std::size_t leave_row = rows_;
            bool leave_at_upper = false;
            double leave_coef = 0.0;
            for (std::size_t i = 0; i < rows_; ++i) {
                const double coef = row(i)[enter];
                if (std::abs(coef) <= kPivotTol) continue;
                const double rate = -enter_dir * coef;  // d beta_i / d t
                const std::size_t b = basis_[i];
                double ti;
                bool at_upper;
                if (rate < 0.0) {
                    if (!std::isfinite(lo_[b])) continue;
                    ti = (beta_[i] - lo_[b]) / (-rate);
                    at_upper = false;
                } else {
                    if (!std::isfinite(up_[b])) continue;
                    ti = (up_[b] - beta_[i]) / rate;
                    at_upper = true;
                }
                if (ti < 0.0) ti = 0.0;  // drift clamp
                bool better = false;
                if (ti < tstar) {
                    better = true;
                } else if (ti == tstar && leave_row < rows_) {
                    if (bland_) {
                        better = b < basis_[leave_row];
                    } else if (std::abs(coef) > std::abs(leave_coef)) {
                        better = true;
                    } else if (std::abs(coef) == std::abs(leave_coef)) {
                        better = b < basis_[leave_row];
                    }
                }
                if (better) {
                    tstar = ti;
                    leave_row = i;
                    leave_at_upper = at_upper;
                    leave_coef = coef;
                }
            }

            if (flip_len <= tstar) {
                if (!std::isfinite(flip_len)) {
                    if (!allow_unbounded)
                        throw NonConvergenceError("unbounded ray in a bounded phase");
                    return LPStatus::Unbounded;
                }
                const double delta = enter_dir * flip_len;
                for (std::size_t i = 0; i < rows_; ++i) beta_[i] -= delta * row(i)[enter];
                status_[enter] =
                    status_[enter] == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
                if (flip_len > 1e-12) { stall_ = 0; bland_ = false; }
                continue;
            }
            if (leave_row == rows_) {
                if (!allow_unbounded)
                    throw NonConvergenceError("unbounded ray in a bounded phase");
                return LPStatus::Unbounded;
            }

            const double delta = enter_dir * tstar;
            const double enter_val = nonbasic_value(enter) + delta;
            for (std::size_t i = 0; i < rows_; ++i)
                if (i != leave_row) beta_[i] -= delta * row(i)[enter];
            const std::size_t leaving = basis_[leave_row];
            status_[leaving] = leave_at_upper ? VarStatus::AtUpper : VarStatus::AtLower;
            pivot(leave_row, enter);
            status_[enter] = VarStatus::Basic;
            beta_[leave_row] = enter_val;

            if (tstar <= 1e-12) {
                if (++stall_ >= kStallLimit) bland_ = true;
            } else {
                stall_ = 0;
                bland_ = false;
            }
        }
    }
};

/// Two-phase simplex for one-shot LinearProgram solves. Phase 1 uses a
/// single artificial column covering the rows the all-slack basis violates.
class SimplexSolver {
public:
    explicit SimplexSolver(const LinearProgram& lp) : lp_(lp) { validate_lp(lp); }

    /// Phase-2 early exit: stop once the running objective is strictly below
    /// `target` (the optimum is then provably below it). The returned point
    /// is feasible and its objective value upper-bounds the optimum;
    /// abandoned() reports the early stop.
    void set_abandon_below(double target) { abandon_target_ = target; }
    bool abandoned() const noexcept { return core_.abandoned_; }

    LPSolution solve() { return run(nullptr); }
    LPSolution solve(const SimplexWarmStart& start) { return run(&start); }

private:
    const LinearProgram& lp_;
    double abandon_target_ = -kLpInf;
    SimplexCore core_;
    std::size_t n_ = 0;    // structural variables
    std::size_t art_ = 0;  // artificial column index

    void build() {
        n_ = lp_.objective.size();
        const std::size_t rows = lp_.ineq_matrix.rows();
        art_ = n_ + rows;
        core_.init(rows, n_ + rows + 1);
        for (std::size_t j = 0; j < n_; ++j) {
            core_.lo_[j] = lp_.lower[j];
            core_.up_[j] = lp_.upper[j];
            core_.cost_[j] = lp_.objective[j];
        }
        // Row equilibration: scale each constraint row so its largest
        // absolute coefficient is one; keeps the feasibility tolerance
        // meaningful across badly scaled rows.
        for (std::size_t i = 0; i < rows; ++i) {
            double rmax = 0.0;
            for (std::size_t j = 0; j < n_; ++j)
                rmax = std::max(rmax, std::abs(lp_.ineq_matrix(i, j)));
            const double w = rmax > 0.0 ? 1.0 / rmax : 1.0;
            double* ti = core_.row(i);
            for (std::size_t j = 0; j < n_; ++j) ti[j] = lp_.ineq_matrix(i, j) * w;
            ti[n_ + i] = 1.0;
            ti[core_.rhs_col()] = lp_.ineq_bound[i] * w;
        }
        core_.iter_cap_ = 50 * static_cast<long>(rows + n_);
        core_.abandon_target_ = abandon_target_;
    }

    LPSolution run(const SimplexWarmStart* start) {
        build();
        const std::size_t rows = core_.rows_;
        bool warm = false;
        if (start != nullptr) warm = try_warm_start(*start);
        if (!warm) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (std::isfinite(core_.lo_[j]))
                    core_.status_[j] = VarStatus::AtLower;
                else if (std::isfinite(core_.up_[j]))
                    core_.status_[j] = VarStatus::AtUpper;
                else
                    core_.status_[j] = VarStatus::FreeZero;
            }
            for (std::size_t i = 0; i < rows; ++i) {
                core_.basis_[i] = n_ + i;
                core_.status_[n_ + i] = VarStatus::Basic;
            }
            core_.refresh_beta();
            double worst = 0.0;
            for (std::size_t i = 0; i < rows; ++i) worst = std::min(worst, core_.beta_[i]);
            if (worst < -kFeasTol) {
                if (!phase1()) return finish(LPStatus::Infeasible);
            }
        }
        core_.lo_[art_] = core_.up_[art_] = 0.0;  // artificial plays no further role

        core_.refresh_reduced(core_.cost_row(), core_.cost_);
        const LPStatus st = core_.iterate(core_.cost_row(), /*allow_unbounded=*/true, nullptr);
        return finish(st);
    }

    bool try_warm_start(const SimplexWarmStart& ws) {
        const std::size_t rows = core_.rows_;
        if (ws.basic_of_row.size() != rows || ws.status.size() != n_ + rows) return false;
        for (std::size_t i = 0; i < rows; ++i) {
            core_.basis_[i] = n_ + i;
            core_.status_[n_ + i] = VarStatus::Basic;
        }
        for (std::size_t j = 0; j < n_ + rows; ++j) {
            if (ws.status[j] == VarStatus::Basic) continue;
            if (ws.status[j] == VarStatus::AtLower && !std::isfinite(core_.lo_[j])) return false;
            if (ws.status[j] == VarStatus::AtUpper && !std::isfinite(core_.up_[j])) return false;
        }
        bool ok = true;
        for (std::size_t i = 0; i < rows && ok; ++i) {
            const std::size_t v = ws.basic_of_row[i];
            if (v >= n_ + rows || ws.status[v] != VarStatus::Basic) {
                ok = false;
                break;
            }
            if (v == core_.basis_[i]) continue;
            if (std::abs(core_.row(i)[v]) <= kPivotTol) {
                ok = false;
                break;
            }
            core_.pivot(i, v);
        }
        if (ok) {
            for (std::size_t j = 0; j < n_ + rows; ++j) core_.status_[j] = ws.status[j];
            core_.refresh_beta();
            for (std::size_t i = 0; i < rows; ++i) {
                const std::size_t b = core_.basis_[i];
                if (core_.beta_[i] < core_.lo_[b] - kFeasTol ||
                    core_.beta_[i] > core_.up_[b] + kFeasTol) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) build();  // discard partial pivots
        return ok;
    }

    bool phase1() {
        const std::size_t rows = core_.rows_;
        std::size_t worst_row = 0;
        double worst = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            if (core_.beta_[i] < 0.0) core_.row(i)[art_] = -1.0;
            if (core_.beta_[i] < worst) {
                worst = core_.beta_[i];
                worst_row = i;
            }
        }
        // One pivot on the artificial makes every covered row feasible.
        const double aval = -core_.beta_[worst_row];
        for (std::size_t i = 0; i < rows; ++i)
            if (core_.row(i)[art_] == -1.0 && i != worst_row) core_.beta_[i] += aval;
        core_.status_[core_.basis_[worst_row]] = VarStatus::AtLower;
        core_.pivot(worst_row, art_);
        core_.status_[art_] = VarStatus::Basic;
        core_.beta_[worst_row] = aval;

        std::vector<double> phase1_cost(core_.nvars_, 0.0);
        phase1_cost[art_] = 1.0;
        core_.refresh_reduced(core_.aux_row(), phase1_cost);
        const LPStatus st = core_.iterate(core_.aux_row(), /*allow_unbounded=*/false,
                                          &phase1_cost);
        if (st != LPStatus::Optimal) return false;

        if (core_.status_[art_] == VarStatus::Basic) {
            std::size_t ar = 0;
            for (std::size_t i = 0; i < rows; ++i)
                if (core_.basis_[i] == art_) ar = i;
            if (core_.beta_[ar] > kFeasTol) return false;
            // Drive the artificial out with a degenerate pivot when possible;
            // a row with no usable entry is redundant and keeps it pinned at
            // zero.
            for (std::size_t j = 0; j < n_ + rows; ++j) {
                if (core_.status_[j] == VarStatus::Basic || core_.lo_[j] == core_.up_[j])
                    continue;
                if (std::abs(core_.row(ar)[j]) > kPivotTol) {
                    const double delta = core_.beta_[ar] / core_.row(ar)[j];
                    for (std::size_t i = 0; i < rows; ++i)
                        if (i != ar) core_.beta_[i] -= delta * core_.row(i)[j];
                    const double enter_val = core_.nonbasic_value(j) + delta;
                    core_.status_[art_] = VarStatus::AtLower;
                    core_.pivot(ar, j);
                    core_.status_[j] = VarStatus::Basic;
                    core_.beta_[ar] = enter_val;
                    break;
                }
            }
        } else {
            if (std::abs(core_.nonbasic_value(art_)) > kFeasTol) return false;
        }
        return true;
    }

    LPSolution finish(LPStatus st) {
        LPSolution sol;
        sol.status = st;
        if (st != LPStatus::Optimal) {
            sol.objective_value = st == LPStatus::Unbounded ? -kLpInf : 0.0;
            return sol;
        }
        core_.refresh_beta();
        sol.x.assign(n_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) sol.x[j] = core_.variable_value(j);
        double obj = 0.0;
        for (std::size_t j = 0; j < n_; ++j) obj += lp_.objective[j] * sol.x[j];
        sol.objective_value = obj;
        return sol;
    }
};

/// Phase-2 simplex over a program whose variable set grows one column at a
/// time. The tableau is allocated at full reserved width up front; future
/// variables sit pinned at zero with empty columns, which leaves the program
/// mathematically identical to the current step. Appending a variable fills
/// its column with B^-1 g read off the slack block of the tableau (the slack
/// columns of B^-1 A are exactly B^-1), so no pivots are replayed.
///
/// The driver must provide a feasible starting basis; there is no phase 1.
class IncrementalSimplex {
public:
    IncrementalSimplex(const LinearProgram& lp, std::size_t reserve)
        : n0_(lp.objective.size()), reserve_(reserve) {
        validate_lp(lp);
        const std::size_t rows = lp.ineq_matrix.rows();
        slack_base_ = n0_ + reserve_;
        core_.init(rows, slack_base_ + rows);
        row_scale_.assign(rows, 1.0);
        for (std::size_t j = 0; j < n0_; ++j) {
            core_.lo_[j] = lp.lower[j];
            core_.up_[j] = lp.upper[j];
            core_.cost_[j] = lp.objective[j];
        }
        // Reserved-but-inactive variables stay pinned at zero.
        for (std::size_t j = n0_; j < slack_base_; ++j) core_.lo_[j] = core_.up_[j] = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            double rmax = 0.0;
            for (std::size_t j = 0; j < n0_; ++j)
                rmax = std::max(rmax, std::abs(lp.ineq_matrix(i, j)));
            const double w = rmax > 0.0 ? 1.0 / rmax : 1.0;
            row_scale_[i] = w;
            double* ti = core_.row(i);
            for (std::size_t j = 0; j < n0_; ++j) ti[j] = lp.ineq_matrix(i, j) * w;
            ti[slack_base_ + i] = 1.0;
            ti[core_.rhs_col()] = lp.ineq_bound[i] * w;
        }
    }

    /// Seeds the solver at the given vertex (warm-start indexing: structural
    /// then slacks, no reserve gap). Throws NumericError when the hinted
    /// basis is unusable; this driver has no phase-1 fallback.
    void start(const SimplexWarmStart& ws) {
        const std::size_t rows = core_.rows_;
        if (ws.basic_of_row.size() != rows || ws.status.size() != n0_ + rows)
            throw NumericError("IncrementalSimplex: warm start has wrong shape");
        for (std::size_t i = 0; i < rows; ++i) {
            core_.basis_[i] = slack_base_ + i;
            core_.status_[slack_base_ + i] = VarStatus::Basic;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            std::size_t v = ws.basic_of_row[i];
            if (v >= n0_) v += reserve_;  // remap slack indices
            if (v == core_.basis_[i]) continue;
            if (std::abs(core_.row(i)[v]) <= kPivotTol)
                throw NumericError("IncrementalSimplex: singular warm-start basis");
            core_.pivot(i, v);
        }
        for (std::size_t j = 0; j < n0_ + rows; ++j) {
            const std::size_t v = j < n0_ ? j : j + reserve_;
            core_.status_[v] = ws.status[j];
        }
        core_.refresh_beta();
        for (std::size_t i = 0; i < rows; ++i) {
            const std::size_t b = core_.basis_[i];
            if (core_.beta_[i] < core_.lo_[b] - kFeasTol ||
                core_.beta_[i] > core_.up_[b] + kFeasTol)
                throw NumericError("IncrementalSimplex: warm-start vertex infeasible");
        }
    }

    std::size_t appended() const noexcept { return appended_; }

    /// Activates the next reserved variable with constraint column g (given
    /// in original row space), cost and bounds. The previous vertex stays
    /// feasible because the new variable enters at value zero.
    void append_variable(std::span<const double> g, double cost, double lo, double up) {
        const std::size_t rows = core_.rows_;
        if (g.size() != rows) throw ShapeError("append_variable: column length mismatch");
        if (appended_ >= reserve_) throw ShapeError("append_variable: reserve exhausted");
        const std::size_t idx = n0_ + appended_;
        std::vector<double> gs(rows);
        for (std::size_t i = 0; i < rows; ++i) gs[i] = g[i] * row_scale_[i];
        // Column in the current basis frame: B^-1 g via the slack block.
        for (std::size_t i = 0; i < rows; ++i) {
            const double* ti = core_.row(i);
            double s = 0.0;
            for (std::size_t k = 0; k < rows; ++k) s += ti[slack_base_ + k] * gs[k];
            core_.row(i)[idx] = s;
        }
        core_.lo_[idx] = lo;
        core_.up_[idx] = up;
        core_.cost_[idx] = cost;
        if (std::isfinite(lo))
            core_.status_[idx] = VarStatus::AtLower;
        else if (std::isfinite(up))
            core_.status_[idx] = VarStatus::AtUpper;
        else
            core_.status_[idx] = VarStatus::FreeZero;
        ++appended_;
    }

    /// Reoptimizes from the current vertex. With abandon_below > -inf the
    /// solve stops once the objective is provably below it (abandoned() set);
    /// the exported point is still feasible.
    LPStatus reoptimize(double abandon_below) {
        core_.abandon_target_ = abandon_below;
        core_.abandoned_ = false;
        core_.iters_ = 0;
        core_.iter_cap_ = 50 * static_cast<long>(core_.rows_ + core_.nvars_);
        core_.stall_ = 0;
        core_.bland_ = false;
        core_.refresh_beta();
        core_.refresh_reduced(core_.cost_row(), core_.cost_);
        return core_.iterate(core_.cost_row(), /*allow_unbounded=*/true, nullptr);
    }

    bool abandoned() const noexcept { return core_.abandoned_; }

    /// Value of structural variable j (initial block plus appended ones).
    double structural_value(std::size_t j) const { return core_.variable_value(j); }

private:
    SimplexCore core_;
    std::size_t n0_ = 0;
    std::size_t reserve_ = 0;
    std::size_t appended_ = 0;
    std::size_t slack_base_ = 0;
    std::vector<double> row_scale_;
};

}  // namespace detail

using detail::SimplexSolver;

/// Solves the linear program with a deterministic two-phase simplex.
/// Optimal solutions are feasible within 1e-8 after row equilibration;
/// infeasible and unbounded programs are reported through the status.
/// Exceeding the iteration cap raises NonConvergenceError.
inline LPSolution solve_lp(const LinearProgram& lp) { return SimplexSolver(lp).solve(); }

}  // namespace normqr
