//
// Project     : normqr
// Module      : cli
// Description : command-line front end: one-shot factorization of a CSV
//               matrix plus the experiment harness
//

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "normqr/normqr.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;

normqr::NormSpec parse_norm(const std::string& name) {
    if (name == "l1") return normqr::NormSpec::l1();
    if (name == "l2") return normqr::NormSpec::l2();
    throw normqr::ShapeError("unknown norm '" + name + "' (expected l1 or l2)");
}

int run_factor(const std::string& input, const std::string& norm_name, double tol,
               const std::string& outdir) {
    const normqr::DenseMatrix A = normqr::read_matrix_csv(input);
    const normqr::NormSpec norm = parse_norm(norm_name);
    const normqr::Factorization f = normqr::rrqr_factor(A, norm, tol);

    std::filesystem::create_directories(outdir);
    const std::filesystem::path dir(outdir);
    normqr::write_matrix_csv((dir / "Q.csv").string(), f.Q);
    normqr::write_matrix_csv((dir / "R.csv").string(), f.R);
    std::string perm_text;
    for (std::size_t j = 0; j < f.perm.size(); ++j) {
        if (j) perm_text += ',';
        perm_text += std::to_string(f.perm[j]);
    }
    perm_text += '\n';
    normqr::write_text_file((dir / "perm.csv").string(), perm_text);

    const double rel_err = normqr::factorization_error(A, f) / normqr::induced_1norm(A);
    const double g0 = f.r > 0 ? f.gammas.front() : 0.0;
    const double glast = f.r > 0 ? f.gammas.back() : 0.0;
    std::cout << "r=" << f.r << " gamma_first=" << normqr::format_double(g0)
              << " gamma_last=" << normqr::format_double(glast)
              << " rel_error_1norm=" << normqr::format_double(rel_err) << "\n";
    return kExitOk;
}

int run_experiment(const normqr::ExperimentConfig& cfg, const std::string& out_path) {
    const std::string csv = normqr::run_experiment_csv(cfg);
    normqr::write_text_file(out_path, csv);
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arbitrary-norm rank-revealing QR factorization toolkit"};
    app.require_subcommand(1);

    // factor
    std::string in_path, norm_name = "l1", out_dir = ".";
    double tol = 0.0;
    CLI::App* factor = app.add_subcommand("factor", "Factor a CSV matrix as A P = Q R");
    factor->add_option("input", in_path, "input matrix CSV")->required();
    factor->add_option("--norm", norm_name, "norm: l1 or l2")->default_val("l1");
    factor->add_option("--tol", tol, "relative early-stop tolerance")->default_val(0.0);
    factor->add_option("--out", out_dir, "output directory for Q.csv, R.csv, perm.csv")
        ->default_val(".");

    // experiment
    std::string exp_name, exp_norm = "l1", exp_out = "experiment.csv";
    std::size_t m = 10, kmax = 0, data_rank = 3, outlier_count = 2;
    double exp_tol = 0.0, outlier_factor = 100.0;
    std::vector<double> ratios{1e-6};
    std::vector<std::uint64_t> seeds{0};
    CLI::App* exp = app.add_subcommand("experiment", "Run an experiment and emit CSV");
    exp->add_option("name", exp_name, "diag-decay | cond-q | fact-error | lowrank | outlier")
        ->required();
    exp->add_option("--m", m, "matrix dimension")->default_val(10);
    exp->add_option("--ratios", ratios, "spectrum ratios sigma_min/sigma_max in (0,1]")
        ->delimiter(',');
    exp->add_option("--seeds", seeds, "seeds")->delimiter(',');
    exp->add_option("--norm", exp_norm, "norm: l1 or l2")->default_val("l1");
    exp->add_option("--tol", exp_tol, "relative early-stop tolerance")->default_val(0.0);
    exp->add_option("--kmax", kmax, "truncation depth (0 = experiment default)");
    exp->add_option("--data-rank", data_rank, "smooth data rank (outlier experiment)");
    exp->add_option("--outliers", outlier_count, "number of corrupted entries");
    exp->add_option("--outlier-factor", outlier_factor, "outlier magnitude factor");
    exp->add_option("--out", exp_out, "output CSV path")->default_val("experiment.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitInput;
    }

    try {
        if (factor->parsed()) return run_factor(in_path, norm_name, tol, out_dir);

        static const std::map<std::string, normqr::Experiment> kinds = {
            {"diag-decay", normqr::Experiment::DiagDecay},
            {"cond-q", normqr::Experiment::CondQ},
            {"fact-error", normqr::Experiment::FactError},
            {"lowrank", normqr::Experiment::LowRank},
            {"outlier", normqr::Experiment::Outlier},
        };
        const auto it = kinds.find(exp_name);
        if (it == kinds.end())
            throw normqr::ShapeError("unknown experiment '" + exp_name + "'");
        normqr::ExperimentConfig cfg;
        cfg.experiment = it->second;
        cfg.m = m;
        cfg.ratios = ratios;
        cfg.seeds = seeds;
        cfg.norm = parse_norm(exp_norm);
        cfg.rel_tol = exp_tol;
        cfg.kmax = kmax;
        cfg.data_rank = data_rank;
        cfg.outlier_count = outlier_count;
        cfg.outlier_factor = outlier_factor;
        return run_experiment(cfg, exp_out);
    } catch (const normqr::ShapeError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const normqr::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
