#pragma once
//
// Project     : normqr
// Module      : errors
// Description : exception types shared across the library
//

#include <stdexcept>
#include <string>

namespace normqr {

/// Bad dimensions or malformed arguments (shape mismatches, empty inputs).
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base class for runtime numerical failures.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A pivot fell below working precision during LU elimination.
class SingularMatrixError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Least-squares basis is rank deficient below tolerance.
class RankDeficientError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Iteration cap exceeded in an iterative solver. Distinct from an
/// infeasible problem, which is reported through a status code.
class NonConvergenceError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Inner-solver failure during a factorization, tagged with the step at
/// which it occurred.
class FactorizationError : public NumericError {
public:
    FactorizationError(std::size_t step, std::size_t column, const std::string& what_inner)
        : NumericError("factorization step " + std::to_string(step) + " (column " +
                       std::to_string(column) + "): " + what_inner),
          step_(step),
          column_(column) {}

    std::size_t step() const noexcept { return step_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t step_;
    std::size_t column_;
};

}  // namespace normqr
