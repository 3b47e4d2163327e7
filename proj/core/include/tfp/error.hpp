#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tfp {

/// Failure of an iterative solver (non-convergence, lost positivity,
/// violated structural invariant of the result).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what, double last_residual = 0.0)
        : std::runtime_error(what), last_residual_(last_residual) {}

    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

/// Zero pivot met during banded elimination.
class SingularPivotError : public SolverError {
public:
    explicit SingularPivotError(std::size_t index)
        : SolverError("singular pivot at row " + std::to_string(index)), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

}  // namespace tfp
