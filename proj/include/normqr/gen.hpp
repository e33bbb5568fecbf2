#pragma once
//
// Project     : normqr
// Module      : gen
// Description : deterministic synthetic matrix generators for the
//               experiment harness
//
// Reproducibility contract: all randomness comes from std::mt19937_64 seeded
// through splitmix64, uniform doubles are taken as (x >> 11) * 2^-53, and
// normals through the Box-Muller transform. No implementation-defined
// distributions are used, so a given seed yields the same matrix on every
// run of the same binary.
//

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "normqr/householder.hpp"
#include "normqr/matrix.hpp"

namespace normqr {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Substream seed: decorrelates U from V and phases from positions.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t z = splitmix64(s);
    for (std::uint64_t k = 0; k <= stream; ++k) z = splitmix64(s);
    return z;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {  // in [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        spare_ = rad * std::sin(ang);
        have_spare_ = true;
        return rad * std::cos(ang);
    }

    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace detail

/// m x n matrix of seeded standard normals.
inline DenseMatrix random_gaussian(std::size_t m, std::size_t n, std::uint64_t seed) {
    detail::Rng rng(seed);
    DenseMatrix A(m, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) A(i, j) = rng.normal();
    return A;
}

/// Random orthogonal matrix: QR of a seeded Gaussian with column signs fixed
/// by the R diagonal. Q^T Q = I to machine precision.
inline DenseMatrix random_orthogonal(std::size_t m, std::uint64_t seed) {
    if (m == 0) throw ShapeError("random_orthogonal: m must be positive");
    detail::HouseholderQR qr(random_gaussian(m, m, seed));
    DenseMatrix Q = qr.form_q();
    for (std::size_t j = 0; j < m; ++j) {
        if (qr.rdiag(j) < 0.0)
            for (std::size_t i = 0; i < m; ++i) Q(i, j) = -Q(i, j);
    }
    return Q;
}

enum class SpectrumSpacing { LogSpaced };

/// Prescribed singular spectrum for synth_svd: sigma values run from
/// sigma_max down to sigma_min, logarithmically spaced.
struct SpectrumSpec {
    std::size_t m = 0;
    double sigma_max = 1.0;
    double sigma_min = 1.0;
    SpectrumSpacing spacing = SpectrumSpacing::LogSpaced;
};

inline std::vector<double> log_spaced_spectrum(const SpectrumSpec& spec) {
    if (spec.m == 0) throw ShapeError("SpectrumSpec: m must be positive");
    if (!(spec.sigma_min > 0.0) || !(spec.sigma_max > 0.0) || spec.sigma_min > spec.sigma_max)
        throw ShapeError("SpectrumSpec: need 0 < sigma_min <= sigma_max");
    std::vector<double> sigma(spec.m, spec.sigma_max);
    if (spec.m > 1) {
        const double lmax = std::log(spec.sigma_max), lmin = std::log(spec.sigma_min);
        for (std::size_t i = 0; i < spec.m; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(spec.m - 1);
            sigma[i] = std::exp(lmax + (lmin - lmax) * t);
        }
    }
    return sigma;
}

/// A = U diag(sigma) V^T with independent random orthogonal U, V. The
/// singular values of A are the prescribed spectrum by construction.
inline DenseMatrix synth_svd(const SpectrumSpec& spec, std::uint64_t seed) {
    const std::vector<double> sigma = log_spaced_spectrum(spec);
    const std::size_t m = spec.m;
    DenseMatrix U = random_orthogonal(m, detail::derive_seed(seed, 0));
    DenseMatrix V = random_orthogonal(m, detail::derive_seed(seed, 1));
    // U * diag(sigma) * V^T without forming the diagonal.
    DenseMatrix US = U;
    for (std::size_t j = 0; j < m; ++j) {
        auto cj = US.col(j);
        for (std::size_t i = 0; i < m; ++i) cj[i] *= sigma[j];
    }
    return matmul(US, transpose(V));
}

/// Sum of `rank` outer products of sampled sinusoids with seeded phases.
/// Component t uses frequency t+1 on both sides, so the result has exact
/// rank `rank` and visually smooth columns.
inline DenseMatrix smooth_lowrank(std::size_t m, std::size_t n, std::size_t rank,
                                  std::uint64_t seed) {
    if (m == 0 || n == 0) throw ShapeError("smooth_lowrank: empty shape");
    if (rank > std::min(m, n)) throw ShapeError("smooth_lowrank: rank exceeds min(m, n)");
    detail::Rng rng(detail::derive_seed(seed, 2));
    DenseMatrix A(m, n);
    std::vector<double> u(m), v(n);
    for (std::size_t t = 0; t < rank; ++t) {
        const double freq = static_cast<double>(t + 1);
        const double pu = 2.0 * std::numbers::pi * rng.uniform01();
        const double pv = 2.0 * std::numbers::pi * rng.uniform01();
        const double amp = 1.0 / freq;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = m == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(m - 1);
            u[i] = amp * std::sin(2.0 * std::numbers::pi * freq * x + pu);
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double x = n == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(n - 1);
            v[j] = std::sin(2.0 * std::numbers::pi * freq * x + pv);
        }
        for (std::size_t j = 0; j < n; ++j) {
            auto cj = A.col(j);
            for (std::size_t i = 0; i < m; ++i) cj[i] += u[i] * v[j];
        }
    }
    return A;
}

struct OutlierSpec {
    std::size_t count = 2;
    double magnitude_factor = 100.0;
    std::uint64_t seed = 0;
};

struct OutlierResult {
    DenseMatrix matrix;
    std::vector<std::pair<std::size_t, std::size_t>> positions;  // (row, col)
};

/// Multiplies `count` seeded-random distinct entries by magnitude_factor;
/// all other entries are bit-identical to the input.
inline OutlierResult inject_outliers(const DenseMatrix& A, const OutlierSpec& spec) {
    const std::size_t m = A.rows(), n = A.cols();
    if (spec.count > m * n) throw ShapeError("inject_outliers: count exceeds entry count");
    if (!(spec.magnitude_factor >= 1.0))
        throw ShapeError("inject_outliers: magnitude_factor must be >= 1");
    OutlierResult out;
    out.matrix = A;
    detail::Rng rng(detail::derive_seed(spec.seed, 3));
    std::vector<char> used(m * n, 0);
    while (out.positions.size() < spec.count) {
        const std::size_t flat = static_cast<std::size_t>(rng.bits() % (m * n));
        if (used[flat]) continue;
        used[flat] = 1;
        const std::size_t col = flat / m, row = flat % m;
        out.matrix(row, col) *= spec.magnitude_factor;
        out.positions.emplace_back(row, col);
    }
    return out;
}

}  // namespace normqr
