#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tfp {

enum class GridKind { uniform, graded };

/// Ordered 1-D nodes with per-interval spacing.
///
/// For uniform grids the spacing metadata is the exact step `h`; node
/// coordinates are `a + i*h` and may differ from the metadata by rounding
/// of the coordinate itself, never by more than a few ulps of max|x|.
class Grid1D {
public:
    /// Empty grid (no nodes).
    Grid1D() = default;

    static Grid1D uniform(double a, double b, std::size_t n_nodes);

    /// Nodes clustered around `center` by a sinh map; `stretch` > 0 controls
    /// the clustering (larger is tighter).
    static Grid1D graded(double a, double b, std::size_t n_nodes, double center, double stretch);

    /// Arbitrary strictly increasing nodes (kind = graded).
    static Grid1D from_nodes(std::vector<double> nodes);

    std::size_t size() const noexcept { return nodes_.size(); }
    GridKind kind() const noexcept { return kind_; }
    std::span<const double> nodes() const noexcept { return nodes_; }
    double operator[](std::size_t i) const noexcept { return nodes_[i]; }
    double front() const noexcept { return nodes_.front(); }
    double back() const noexcept { return nodes_.back(); }

    /// Uniform step; only meaningful for kind() == uniform.
    double step() const noexcept { return step_; }
    /// spacing(i) = x[i+1] - x[i] (metadata, exact `step()` on uniform grids).
    double spacing(std::size_t i) const noexcept { return spacing_[i]; }
    std::span<const double> spacings() const noexcept { return spacing_; }

    /// Index of the node closest to x (clamped to the grid).
    std::size_t nearest(double x) const noexcept;
    /// Largest i with x[i] <= x, clamped to [0, size()-2].
    std::size_t interval(double x) const noexcept;

    /// Throws std::logic_error if the node/spacing invariants do not hold.
    void validate() const;

private:
    std::vector<double> nodes_;
    std::vector<double> spacing_;
    double step_ = 0.0;
    GridKind kind_ = GridKind::uniform;
};

/// Three-point second-derivative weights at interior node i
/// (x[i-1], x[i], x[i+1]); exact on quadratics.
struct Stencil3 {
    double lower;
    double center;
    double upper;
};
Stencil3 second_derivative_stencil(const Grid1D& grid, std::size_t i);

/// Stretched boundary-layer coordinate y = (1 - x^2) / eps^{2/3}.
double to_boundary_layer(double x, double eps);

/// Inverse of to_boundary_layer on x >= 0; rejects y > eps^{-2/3}.
double from_boundary_layer(double y, double eps);

/// Central second difference in the interior, one-sided second-order
/// (four-point) stencils at both ends. Needs at least 3 nodes; with exactly
/// 3 nodes the ends reuse the single three-point stencil.
std::vector<double> second_difference(std::span<const double> values, const Grid1D& grid);

/// Central first difference, one-sided three-point stencils at the ends.
std::vector<double> first_difference(std::span<const double> values, const Grid1D& grid);

}  // namespace tfp
