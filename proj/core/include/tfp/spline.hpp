#pragma once

#include <span>
#include <vector>

#include "tfp/grid.hpp"

namespace tfp {

/// Natural cubic spline through samples on a Grid1D.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(const Grid1D& grid, std::span<const double> values);

    bool empty() const noexcept { return values_.empty(); }
    double lower() const noexcept { return nodes_.front(); }
    double upper() const noexcept { return nodes_.back(); }

    /// Evaluation outside [lower, upper] extrapolates the end cubic.
    double operator()(double x) const noexcept;
    double derivative(double x) const noexcept;

private:
    std::size_t locate(double x) const noexcept;

    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<double> second_;  // spline second derivatives at nodes
};

}  // namespace tfp
