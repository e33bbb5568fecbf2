#pragma once
//
// Project     : normqr
// Module      : matrix
// Description : dense column-major matrix and column-permutation primitives
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "normqr/errors.hpp"

namespace normqr {

/// Dense real matrix in column-major storage. Column slices are contiguous,
/// which is what the column-pivoted algorithms in this library live on.
///
/// Entries are validated to be finite when the matrix is built from user
/// data (constructor from values, CSV reader); NaN/Inf are rejected because
/// every pivot search downstream is undefined under them.
class DenseMatrix {
public:
    DenseMatrix() = default;

    /// Zero matrix of the given shape.
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

    /// From column-major data; validates length and finiteness.
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw ShapeError("DenseMatrix: entry count " + std::to_string(entries_.size()) +
                             " does not match " + std::to_string(rows_) + "x" +
                             std::to_string(cols_));
        for (double v : entries_)
            if (!std::isfinite(v)) throw ShapeError("DenseMatrix: non-finite entry rejected");
    }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix I(n, n);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
        return I;
    }

    /// Row-wise initializer, mainly for tests and small literals. Validates
    /// rectangular shape and finiteness.
    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        const std::size_t m = rows.size();
        const std::size_t n = m == 0 ? 0 : rows.begin()->size();
        DenseMatrix A(m, n);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != n) throw ShapeError("DenseMatrix::from_rows: ragged rows");
            std::size_t j = 0;
            for (double v : row) {
                if (!std::isfinite(v)) throw ShapeError("DenseMatrix: non-finite entry rejected");
                A(i, j++) = v;
            }
            ++i;
        }
        return A;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    double operator()(std::size_t i, std::size_t j) const { return entries_[j * rows_ + i]; }
    double& operator()(std::size_t i, std::size_t j) { return entries_[j * rows_ + i]; }

    std::span<const double> col(std::size_t j) const {
        return {entries_.data() + j * rows_, rows_};
    }
    std::span<double> col(std::size_t j) { return {entries_.data() + j * rows_, rows_}; }

    const std::vector<double>& data() const noexcept { return entries_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

/// Bijection on column indices. `map()[j]` names the source column that
/// lands in position j, so applying the permutation to A yields the matrix
/// whose column j is A's column map()[j].
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
        std::vector<char> seen(map_.size(), 0);
        for (std::size_t v : map_) {
            if (v >= map_.size() || seen[v])
                throw ShapeError("Permutation: map is not a bijection on {0..n-1}");
            seen[v] = 1;
        }
    }

    static Permutation identity(std::size_t n) {
        std::vector<std::size_t> m(n);
        for (std::size_t i = 0; i < n; ++i) m[i] = i;
        return Permutation(std::move(m));
    }

    std::size_t size() const noexcept { return map_.size(); }
    std::size_t operator[](std::size_t j) const { return map_[j]; }
    const std::vector<std::size_t>& map() const noexcept { return map_; }

    Permutation inverse() const {
        std::vector<std::size_t> inv(map_.size());
        for (std::size_t j = 0; j < map_.size(); ++j) inv[map_[j]] = j;
        return Permutation(std::move(inv));
    }

    bool operator==(const Permutation& other) const = default;

private:
    std::vector<std::size_t> map_;
};

/// Column permutation: result column j is A's column p[j].
inline DenseMatrix permute_cols(const DenseMatrix& A, const Permutation& p) {
    if (p.size() != A.cols())
        throw ShapeError("permute_cols: permutation length " + std::to_string(p.size()) +
                         " vs " + std::to_string(A.cols()) + " columns");
    DenseMatrix B(A.rows(), A.cols());
    for (std::size_t j = 0; j < A.cols(); ++j) {
        auto src = A.col(p[j]);
        std::copy(src.begin(), src.end(), B.col(j).begin());
    }
    return B;
}

inline DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B) {
    if (A.cols() != B.rows())
        throw ShapeError("matmul: inner dimensions " + std::to_string(A.cols()) + " vs " +
                         std::to_string(B.rows()));
    DenseMatrix C(A.rows(), B.cols());
    const std::size_t m = A.rows();
    for (std::size_t j = 0; j < B.cols(); ++j) {
        auto cj = C.col(j);
        for (std::size_t k = 0; k < A.cols(); ++k) {
            const double bkj = B(k, j);
            if (bkj == 0.0) continue;
            auto ak = A.col(k);
            for (std::size_t i = 0; i < m; ++i) cj[i] += ak[i] * bkj;
        }
    }
    return C;
}

inline DenseMatrix transpose(const DenseMatrix& A) {
    DenseMatrix T(A.cols(), A.rows());
    for (std::size_t j = 0; j < A.cols(); ++j)
        for (std::size_t i = 0; i < A.rows(); ++i) T(j, i) = A(i, j);
    return T;
}

inline DenseMatrix subtract(const DenseMatrix& A, const DenseMatrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw ShapeError("subtract: shape mismatch");
    DenseMatrix C(A.rows(), A.cols());
    for (std::size_t j = 0; j < A.cols(); ++j)
        for (std::size_t i = 0; i < A.rows(); ++i) C(i, j) = A(i, j) - B(i, j);
    return C;
}

/// Induced 1-norm: maximum absolute column sum.
inline double induced_1norm(const DenseMatrix& A) {
    if (A.empty()) throw ShapeError("induced_1norm: empty matrix");
    double best = 0.0;
    for (std::size_t j = 0; j < A.cols(); ++j) {
        double s = 0.0;
        for (double v : A.col(j)) s += std::abs(v);
        best = std::max(best, s);
    }
    return best;
}

}  // namespace normqr
