#pragma once
//
// Project     : normqr
// Module      : experiments
// Description : end-to-end experiment runners emitting plot-ready CSV;
//               the CLI is a thin wrapper around these
//

#include <cstdint>
#include <string>
#include <vector>

#include "normqr/analysis.hpp"
#include "normqr/csv.hpp"
#include "normqr/gen.hpp"
#include "normqr/norms.hpp"
#include "normqr/rrqr.hpp"

namespace normqr {

enum class Experiment { DiagDecay, CondQ, FactError, LowRank, Outlier };

/// Parameters for one experiment run. Rows of the output CSV are emitted in
/// a fixed order (ratios, then seeds, then the per-run index), so a config
/// maps to byte-identical output on every run.
struct ExperimentConfig {
    Experiment experiment = Experiment::DiagDecay;
    std::size_t m = 10;
    std::vector<double> ratios = {1e-6};          // sigma_min with sigma_max = 1
    std::vector<std::uint64_t> seeds = {0};
    NormSpec norm = NormSpec::l1();
    double rel_tol = 0.0;
    std::size_t kmax = 0;          // truncation depth; 0 = default per experiment
    std::size_t data_rank = 3;     // smooth data rank for the outlier experiment
    std::size_t outlier_count = 2;
    double outlier_factor = 100.0;
};

inline void validate(const ExperimentConfig& cfg) {
    if (cfg.seeds.empty()) throw ShapeError("experiment: at least one seed required");
    if (cfg.m < 2) throw ShapeError("experiment: m must be at least 2");
    if (cfg.ratios.empty()) throw ShapeError("experiment: at least one spectrum ratio required");
    for (double r : cfg.ratios)
        if (!(r > 0.0) || r > 1.0) throw ShapeError("experiment: ratios must lie in (0, 1]");
    if (!(cfg.rel_tol >= 0.0)) throw ShapeError("experiment: rel_tol must be nonnegative");
    if (cfg.experiment == Experiment::Outlier && cfg.data_rank > cfg.m)
        throw ShapeError("experiment: data rank exceeds m");
}

namespace detail {

inline std::string fmt(double v) { return format_double(v); }
inline std::string fmt(std::size_t v) { return std::to_string(v); }

inline DenseMatrix experiment_input(std::size_t m, double ratio, std::uint64_t seed) {
    return synth_svd(SpectrumSpec{m, 1.0, ratio, SpectrumSpacing::LogSpaced}, seed);
}

}  // namespace detail

/// Runs the configured experiment and returns the CSV text.
inline std::string run_experiment_csv(const ExperimentConfig& cfg) {
    validate(cfg);
    std::string out;
    switch (cfg.experiment) {
        case Experiment::DiagDecay: {
            out = "ratio,j,rjj\n";
            for (double ratio : cfg.ratios)
                for (std::uint64_t seed : cfg.seeds) {
                    const DenseMatrix A = detail::experiment_input(cfg.m, ratio, seed);
                    const Factorization f = rrqr_factor(A, cfg.norm, cfg.rel_tol);
                    const std::vector<double> d = diag_profile(f);
                    for (std::size_t j = 0; j < d.size(); ++j)
                        out += detail::fmt(ratio) + "," + detail::fmt(j) + "," +
                               detail::fmt(d[j]) + "\n";
                }
            break;
        }
        case Experiment::CondQ: {
            out = "cond_a,cond_q\n";
            for (double ratio : cfg.ratios)
                for (std::uint64_t seed : cfg.seeds) {
                    const DenseMatrix A = detail::experiment_input(cfg.m, ratio, seed);
                    const Factorization f = rrqr_factor(A, cfg.norm, cfg.rel_tol);
                    out += detail::fmt(cond_1(A)) + "," + detail::fmt(cond_1(f.Q)) + "\n";
                }
            break;
        }
        case Experiment::FactError: {
            out = "cond_a,error_1\n";
            for (double ratio : cfg.ratios)
                for (std::uint64_t seed : cfg.seeds) {
                    const DenseMatrix A = detail::experiment_input(cfg.m, ratio, seed);
                    const Factorization f = rrqr_factor(A, cfg.norm, cfg.rel_tol);
                    out += detail::fmt(cond_1(A)) + "," +
                           detail::fmt(factorization_error(A, f)) + "\n";
                }
            break;
        }
        case Experiment::LowRank: {
            out = "k,err_l1rrqr,err_cpqr\n";
            const DenseMatrix A = detail::experiment_input(cfg.m, cfg.ratios.front(),
                                                           cfg.seeds.front());
            const Factorization f1 = rrqr_factor(A, cfg.norm, cfg.rel_tol);
            const Factorization f2 = classical_cpqr(A);
            std::size_t depth = cfg.kmax == 0 ? 60 : cfg.kmax;
            depth = std::min({depth, f1.r, f2.r});
            for (std::size_t k = 1; k <= depth; ++k)
                out += detail::fmt(k) + "," + detail::fmt(truncate(f1, k, A).error_1norm) +
                       "," + detail::fmt(truncate(f2, k, A).error_1norm) + "\n";
            break;
        }
        case Experiment::Outlier: {
            out = "k,clean_l1_pivot,clean_cpqr_pivot,corrupt_l1_pivot,corrupt_cpqr_pivot,"
                  "clean_l1_err,clean_cpqr_err,corrupt_l1_err,corrupt_cpqr_err\n";
            const std::uint64_t seed = cfg.seeds.front();
            const DenseMatrix clean = smooth_lowrank(cfg.m, cfg.m, cfg.data_rank, seed);
            const OutlierResult corrupted = inject_outliers(
                clean, OutlierSpec{cfg.outlier_count, cfg.outlier_factor, seed});
            const Factorization cl1 = rrqr_factor(clean, cfg.norm, cfg.rel_tol);
            const Factorization cq = classical_cpqr(clean);
            const Factorization xl1 = rrqr_factor(corrupted.matrix, cfg.norm, cfg.rel_tol);
            const Factorization xq = classical_cpqr(corrupted.matrix);
            std::size_t depth = cfg.kmax == 0 ? 3 : cfg.kmax;
            depth = std::min({depth, cl1.r, cq.r, xl1.r, xq.r});
            for (std::size_t k = 1; k <= depth; ++k)
                out += detail::fmt(k) + "," + detail::fmt(cl1.perm[k - 1]) + "," +
                       detail::fmt(cq.perm[k - 1]) + "," + detail::fmt(xl1.perm[k - 1]) + "," +
                       detail::fmt(xq.perm[k - 1]) + "," +
                       detail::fmt(truncate(cl1, k, clean).error_1norm) + "," +
                       detail::fmt(truncate(cq, k, clean).error_1norm) + "," +
                       detail::fmt(truncate(xl1, k, corrupted.matrix).error_1norm) + "," +
                       detail::fmt(truncate(xq, k, corrupted.matrix).error_1norm) + "\n";
            break;
        }
    }
    return out;
}

}  // namespace normqr
