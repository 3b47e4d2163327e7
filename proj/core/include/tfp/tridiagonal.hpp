#pragma once

#include <span>
#include <vector>

namespace tfp {

/// Square tridiagonal matrix stored by diagonals. Row i reads
/// sub[i-1] * x[i-1] + diag[i] * x[i] + super[i] * x[i+1].
struct TridiagonalOperator {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> super;
    bool symmetric = false;

    TridiagonalOperator() = default;
    TridiagonalOperator(std::vector<double> sub_, std::vector<double> diag_,
                        std::vector<double> super_, bool symmetric_ = false);

    std::size_t size() const noexcept { return diag.size(); }

    std::vector<double> apply(std::span<const double> x) const;

    /// Throws std::logic_error when lengths or the symmetry flag are inconsistent.
    void validate() const;
};

/// Gaussian elimination with partial pivoting (row interchanges between
/// neighbours, one extra band of fill). Throws SingularPivotError.
std::vector<double> solve_tridiagonal(const TridiagonalOperator& op, std::span<const double> rhs);

}  // namespace tfp
