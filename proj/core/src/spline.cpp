#include "tfp/spline.hpp"

#include <algorithm>
#include <stdexcept>

#include "tfp/tridiagonal.hpp"

namespace tfp {

CubicSpline::CubicSpline(const Grid1D& grid, std::span<const double> values)
    : nodes_(grid.nodes().begin(), grid.nodes().end()), values_(values.begin(), values.end()) {
    const std::size_t n = nodes_.size();
    if (values_.size() != n) throw std::invalid_argument("CubicSpline: size mismatch");
    second_.assign(n, 0.0);
    if (n < 3) return;

    // Interior equations for the second derivatives, natural ends (M_0 = M_{n-1} = 0).
    const std::size_t m = n - 2;
    std::vector<double> sub(m - 1), diag(m), sup(m - 1), rhs(m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = k + 1;
        const double hm = grid.spacing(i - 1);
        const double hp = grid.spacing(i);
        diag[k] = (hm + hp) / 3.0;
        if (k > 0) sub[k - 1] = hm / 6.0;
        if (k + 1 < m) sup[k] = hp / 6.0;
        rhs[k] = (values_[i + 1] - values_[i]) / hp - (values_[i] - values_[i - 1]) / hm;
    }
    const auto sol = solve_tridiagonal(TridiagonalOperator(std::move(sub), std::move(diag), std::move(sup)), rhs);
    std::copy(sol.begin(), sol.end(), second_.begin() + 1);
}

std::size_t CubicSpline::locate(double x) const noexcept {
    if (x <= nodes_.front()) return 0;
    if (x >= nodes_.back()) return nodes_.size() - 2;
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    return static_cast<std::size_t>(std::distance(nodes_.begin(), it)) - 1;
}

double CubicSpline::operator()(double x) const noexcept {
    const std::size_t i = locate(x);
    const double h = nodes_[i + 1] - nodes_[i];
    const double a = (nodes_[i + 1] - x) / h;
    const double b = (x - nodes_[i]) / h;
    return a * values_[i] + b * values_[i + 1] +
           ((a * a * a - a) * second_[i] + (b * b * b - b) * second_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const noexcept {
    const std::size_t i = locate(x);
    const double h = nodes_[i + 1] - nodes_[i];
    const double a = (nodes_[i + 1] - x) / h;
    const double b = (x - nodes_[i]) / h;
    return (values_[i + 1] - values_[i]) / h -
           (3.0 * a * a - 1.0) * h * second_[i] / 6.0 + (3.0 * b * b - 1.0) * h * second_[i + 1] / 6.0;
}

}  // namespace tfp
