#include "tfp/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tfp {

Grid1D Grid1D::uniform(double a, double b, std::size_t n_nodes) {
    if (n_nodes < 2) throw std::invalid_argument("grid needs at least 2 nodes");
    if (!(a < b)) throw std::invalid_argument("grid bounds must satisfy a < b");
    Grid1D g;
    g.kind_ = GridKind::uniform;
    g.step_ = (b - a) / static_cast<double>(n_nodes - 1);
    g.nodes_.resize(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) g.nodes_[i] = a + static_cast<double>(i) * g.step_;
    g.nodes_.back() = b;
    g.spacing_.assign(n_nodes - 1, g.step_);
    return g;
}

Grid1D Grid1D::graded(double a, double b, std::size_t n_nodes, double center, double stretch) {
    if (n_nodes < 2) throw std::invalid_argument("grid needs at least 2 nodes");
    if (!(a < b)) throw std::invalid_argument("grid bounds must satisfy a < b");
    if (!(stretch > 0.0)) throw std::invalid_argument("grading stretch must be positive");
    center = std::clamp(center, a, b);

    // x(s) = center + A sinh(k (s - s0)), s in [0,1]; pick s0 so both ends land.
    const double k = stretch;
    auto mismatch = [&](double s0) {
        return (center - a) * std::sinh(k * (1.0 - s0)) - (b - center) * std::sinh(k * s0);
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mismatch(mid) > 0.0) lo = mid; else hi = mid;
    }
    const double s0 = 0.5 * (lo + hi);
    const double amp = (s0 < 1.0) ? (b - center) / std::sinh(k * (1.0 - s0))
                                  : (center - a) / std::sinh(k * s0);

    std::vector<double> x(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(n_nodes - 1);
        x[i] = center + amp * std::sinh(k * (s - s0));
    }
    x.front() = a;
    x.back() = b;
    return from_nodes(std::move(x));
}

Grid1D Grid1D::from_nodes(std::vector<double> nodes) {
    if (nodes.size() < 2) throw std::invalid_argument("grid needs at least 2 nodes");
    Grid1D g;
    g.kind_ = GridKind::graded;
    g.nodes_ = std::move(nodes);
    g.spacing_.resize(g.nodes_.size() - 1);
    for (std::size_t i = 0; i + 1 < g.nodes_.size(); ++i) {
        g.spacing_[i] = g.nodes_[i + 1] - g.nodes_[i];
        if (!(g.spacing_[i] > 0.0))
            throw std::invalid_argument("grid nodes must be strictly increasing (index " +
                                        std::to_string(i) + ")");
    }
    g.step_ = (g.nodes_.back() - g.nodes_.front()) / static_cast<double>(g.nodes_.size() - 1);
    return g;
}

std::size_t Grid1D::interval(double x) const noexcept {
    if (x <= nodes_.front()) return 0;
    if (x >= nodes_.back()) return nodes_.size() - 2;
    if (kind_ == GridKind::uniform) {
        auto i = static_cast<std::size_t>((x - nodes_.front()) / step_);
        i = std::min(i, nodes_.size() - 2);
        // rounding of the quotient can land one cell off
        if (nodes_[i] > x && i > 0) --i;
        if (i + 1 < nodes_.size() - 1 && nodes_[i + 1] <= x) ++i;
        return i;
    }
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    return static_cast<std::size_t>(std::distance(nodes_.begin(), it)) - 1;
}

std::size_t Grid1D::nearest(double x) const noexcept {
    const std::size_t i = interval(x);
    return (x - nodes_[i] <= nodes_[i + 1] - x) ? i : i + 1;
}

void Grid1D::validate() const {
    if (nodes_.size() < 2 || spacing_.size() + 1 != nodes_.size())
        throw std::logic_error("grid: inconsistent node/spacing arrays");
    const double scale = std::max(std::abs(nodes_.front()), std::abs(nodes_.back()));
    const double coord_ulp = 4.0 * std::numeric_limits<double>::epsilon() * scale;
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        if (!(nodes_[i + 1] > nodes_[i])) throw std::logic_error("grid: nodes not increasing");
        if (!(spacing_[i] > 0.0)) throw std::logic_error("grid: nonpositive spacing");
        if (kind_ == GridKind::uniform) {
            if (std::abs(spacing_[i] - step_) > 1e-14 * step_)
                throw std::logic_error("grid: uniform spacing metadata drifted");
            const double delta = nodes_[i + 1] - nodes_[i];
            if (std::abs(delta - step_) > 1e-14 * step_ + coord_ulp)
                throw std::logic_error("grid: uniform node spacing drifted");
        }
    }
}

Stencil3 second_derivative_stencil(const Grid1D& grid, std::size_t i) {
    if (grid.kind() == GridKind::uniform) {
        const double inv_h2 = 1.0 / (grid.step() * grid.step());
        return {inv_h2, -2.0 * inv_h2, inv_h2};
    }
    const double hm = grid.spacing(i - 1);
    const double hp = grid.spacing(i);
    const double lower = 2.0 / (hm * (hm + hp));
    const double upper = 2.0 / (hp * (hm + hp));
    return {lower, -(lower + upper), upper};
}

double to_boundary_layer(double x, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("to_boundary_layer: eps must be positive");
    return (1.0 - x * x) / std::cbrt(eps * eps);
}

double from_boundary_layer(double y, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("from_boundary_layer: eps must be positive");
    const double e23 = std::cbrt(eps * eps);
    const double y_top = 1.0 / e23;
    if (y > y_top * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()))
        throw std::domain_error("from_boundary_layer: y lies beyond eps^{-2/3}");
    return std::sqrt(std::max(0.0, 1.0 - e23 * y));
}

namespace {

// Lagrange derivative weights at offset t_eval for nodes at offsets t[0..m).
template <std::size_t M>
std::array<double, M> lagrange_weights(const std::array<double, M>& t, double t_eval, int order) {
    std::array<double, M> w{};
    for (std::size_t j = 0; j < M; ++j) {
        double denom = 1.0;
        for (std::size_t m = 0; m < M; ++m)
            if (m != j) denom *= t[j] - t[m];
        double num = 0.0;
        if (order == 1) {
            for (std::size_t m = 0; m < M; ++m) {
                if (m == j) continue;
                double prod = 1.0;
                for (std::size_t k = 0; k < M; ++k)
                    if (k != j && k != m) prod *= t_eval - t[k];
                num += prod;
            }
        } else {
            // second derivative of prod_{m != j}(t - t_m)
            for (std::size_t m = 0; m < M; ++m) {
                if (m == j) continue;
                for (std::size_t k = m + 1; k < M; ++k) {
                    if (k == j) continue;
                    double prod = 2.0;
                    for (std::size_t l = 0; l < M; ++l)
                        if (l != j && l != m && l != k) prod *= t_eval - t[l];
                    num += prod;
                }
            }
        }
        w[j] = num / denom;
    }
    return w;
}

template <std::size_t M>
std::array<double, M> offsets(const Grid1D& grid, std::size_t first) {
    std::array<double, M> t{};
    for (std::size_t j = 1; j < M; ++j) t[j] = t[j - 1] + grid.spacing(first + j - 1);
    return t;
}

template <std::size_t M>
double apply_stencil(std::span<const double> v, std::size_t first, const std::array<double, M>& w) {
    double acc = 0.0;
    for (std::size_t j = 0; j < M; ++j) acc += w[j] * v[first + j];
    return acc;
}

}  // namespace

std::vector<double> second_difference(std::span<const double> values, const Grid1D& grid) {
    const std::size_t n = grid.size();
    if (n < 3) throw std::invalid_argument("second_difference needs at least 3 nodes");
    if (values.size() != n) throw std::invalid_argument("second_difference: size mismatch");

    std::vector<double> out(n);
    if (grid.kind() == GridKind::uniform) {
        const double inv_h2 = 1.0 / (grid.step() * grid.step());
        for (std::size_t i = 1; i + 1 < n; ++i)
            out[i] = (values[i + 1] - 2.0 * values[i] + values[i - 1]) * inv_h2;
        if (n == 3) {
            out[0] = out[2] = out[1];
        } else {
            out[0] = (2.0 * values[0] - 5.0 * values[1] + 4.0 * values[2] - values[3]) * inv_h2;
            out[n - 1] = (2.0 * values[n - 1] - 5.0 * values[n - 2] + 4.0 * values[n - 3] -
                          values[n - 4]) * inv_h2;
        }
        return out;
    }

    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hm = grid.spacing(i - 1);
        const double hp = grid.spacing(i);
        out[i] = 2.0 * ((values[i + 1] - values[i]) / hp - (values[i] - values[i - 1]) / hm) / (hm + hp);
    }
    if (n == 3) {
        out[0] = out[2] = out[1];
    } else {
        const auto tl = offsets<4>(grid, 0);
        out[0] = apply_stencil(values, 0, lagrange_weights(tl, tl[0], 2));
        const auto tr = offsets<4>(grid, n - 4);
        out[n - 1] = apply_stencil(values, n - 4, lagrange_weights(tr, tr[3], 2));
    }
    return out;
}

std::vector<double> first_difference(std::span<const double> values, const Grid1D& grid) {
    const std::size_t n = grid.size();
    if (n < 3) throw std::invalid_argument("first_difference needs at least 3 nodes");
    if (values.size() != n) throw std::invalid_argument("first_difference: size mismatch");

    std::vector<double> out(n);
    if (grid.kind() == GridKind::uniform) {
        const double inv_2h = 0.5 / grid.step();
        for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (values[i + 1] - values[i - 1]) * inv_2h;
        out[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) * inv_2h;
        out[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) * inv_2h;
        return out;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const auto t = offsets<3>(grid, i - 1);
        out[i] = apply_stencil(values, i - 1, lagrange_weights(t, t[1], 1));
    }
    const auto tl = offsets<3>(grid, 0);
    out[0] = apply_stencil(values, 0, lagrange_weights(tl, tl[0], 1));
    const auto tr = offsets<3>(grid, n - 3);
    out[n - 1] = apply_stencil(values, n - 3, lagrange_weights(tr, tr[2], 1));
    return out;
}

}  // namespace tfp
