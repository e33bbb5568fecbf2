#pragma once
//
// Project     : normqr
// Module      : norms
// Description : vector norms and the norm <-> least-deviation-solver pairing
//               consumed by the factorization
//

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>

#include "normqr/least_deviation.hpp"
#include "normqr/matrix.hpp"

namespace normqr {

enum class NormKind { L1, L2, Custom };

/// Identifies the vector norm the factorization works in and binds the
/// matching least-deviation solver. L1 and L2 come built in; custom() pairs
/// a user norm with a user solver for argmin_c ||b - A c||.
class NormSpec {
public:
    using NormFn = std::function<double(std::span<const double>)>;
    using SolverFn =
        std::function<LeastDeviationSolution(const DenseMatrix&, std::span<const double>)>;

    static NormSpec l1() { return NormSpec(NormKind::L1, "l1"); }
    static NormSpec l2() { return NormSpec(NormKind::L2, "l2"); }

    static NormSpec custom(std::string name, NormFn norm, SolverFn solver) {
        NormSpec spec(NormKind::Custom, std::move(name));
        spec.norm_fn_ = std::move(norm);
        spec.solver_fn_ = std::move(solver);
        return spec;
    }

    NormKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }

    double operator()(std::span<const double> x) const {
        if (x.empty()) throw ShapeError("vec_norm: empty vector");
        switch (kind_) {
            case NormKind::L1: {
                double s = 0.0;
                for (double v : x) s += std::abs(v);
                return s;
            }
            case NormKind::L2: {
                double s = 0.0;
                for (double v : x) s += v * v;
                return std::sqrt(s);
            }
            default: return norm_fn_(x);
        }
    }

    /// argmin_c ||b - basis c|| in this norm. An empty basis yields the
    /// degenerate solution c = (), residual = b, so the factorization's base
    /// case is just the general step with no columns yet.
    LeastDeviationSolution min_deviation(const DenseMatrix& basis,
                                         std::span<const double> b) const {
        switch (kind_) {
            case NormKind::L1: return solve_l1(basis, b);
            case NormKind::L2: return solve_l2(basis, b);
            default: return solver_fn_(basis, b);
        }
    }

private:
    NormSpec(NormKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

    NormKind kind_;
    std::string name_;
    NormFn norm_fn_;
    SolverFn solver_fn_;
};

inline double vec_norm(std::span<const double> x, const NormSpec& norm) { return norm(x); }

}  // namespace normqr
