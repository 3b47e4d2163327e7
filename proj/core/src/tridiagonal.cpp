#include "tfp/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tfp/error.hpp"

namespace tfp {

TridiagonalOperator::TridiagonalOperator(std::vector<double> sub_, std::vector<double> diag_,
                                         std::vector<double> super_, bool symmetric_)
    : sub(std::move(sub_)), diag(std::move(diag_)), super(std::move(super_)), symmetric(symmetric_) {
    validate();
}

void TridiagonalOperator::validate() const {
    if (diag.empty()) throw std::logic_error("tridiagonal: empty diagonal");
    if (sub.size() + 1 != diag.size() || super.size() + 1 != diag.size())
        throw std::logic_error("tridiagonal: off-diagonals must have length n-1");
    if (symmetric) {
        double dmax = 0.0;
        for (double d : diag) dmax = std::max(dmax, std::abs(d));
        for (std::size_t i = 0; i < sub.size(); ++i)
            if (std::abs(sub[i] - super[i]) > 1e-14 * (1.0 + dmax))
                throw std::logic_error("tridiagonal: flagged symmetric but sub != super");
    }
}

std::vector<double> TridiagonalOperator::apply(std::span<const double> x) const {
    const std::size_t n = diag.size();
    if (x.size() != n) throw std::invalid_argument("tridiagonal apply: size mismatch");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = diag[i] * x[i];
        if (i > 0) acc += sub[i - 1] * x[i - 1];
        if (i + 1 < n) acc += super[i] * x[i + 1];
        y[i] = acc;
    }
    return y;
}

std::vector<double> solve_tridiagonal(const TridiagonalOperator& op, std::span<const double> rhs) {
    const std::size_t n = op.size();
    if (rhs.size() != n) throw std::invalid_argument("solve_tridiagonal: size mismatch");

    std::vector<double> b(rhs.begin(), rhs.end());
    if (n == 1) {
        if (op.diag[0] == 0.0) throw SingularPivotError(0);
        b[0] /= op.diag[0];
        return b;
    }

    std::vector<double> dl = op.sub;    // becomes the second super-diagonal after pivoting
    std::vector<double> d = op.diag;
    std::vector<double> du = op.super;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) throw SingularPivotError(i);
            const double fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
            dl[i] = 0.0;
        } else {
            const double fact = d[i] / dl[i];
            d[i] = dl[i];
            const double temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if (i + 2 < n) {
                dl[i] = du[i + 1];
                du[i + 1] = -fact * dl[i];
            } else {
                dl[i] = 0.0;
            }
            du[i] = temp;
            const double bi = b[i];
            b[i] = b[i + 1];
            b[i + 1] = bi - fact * b[i + 1];
        }
    }
    if (d[n - 1] == 0.0) throw SingularPivotError(n - 1);

    b[n - 1] /= d[n - 1];
    b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t k = n - 2; k-- > 0;)
        b[k] = (b[k] - du[k] * b[k + 1] - dl[k] * b[k + 2]) / d[k];
    return b;
}

}  // namespace tfp
