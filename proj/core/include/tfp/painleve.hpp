#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tfp/csv.hpp"
#include "tfp/grid.hpp"
#include "tfp/spline.hpp"

namespace tfp {

/// Coefficients b_0..b_M of the large-y expansion
/// nu0(y) ~ y^{1/2} sum_n b_n (2y)^{-3n/2}.
struct TailSeries {
    std::vector<double> coeffs;

    std::size_t order() const noexcept { return coeffs.size() - 1; }
};

/// b_0 = 1, b_1 = 0 and the recursion obtained by matching powers of
/// (2y)^{-3/2} in 4 nu'' + y nu - nu^3 = 0.
TailSeries bn_coefficients(int max_order);

struct TailValue {
    double value = 0.0;
    double derivative = 0.0;
    /// false when the argument is outside the range where the expansion is
    /// trustworthy (terms not decreasing, or too close to y = 0).
    bool in_range = true;
};

/// Partial sum of the right-tail expansion and its term-by-term derivative.
/// Rejects y <= 0.
TailValue tail_plus(double y, const TailSeries& series);

/// Leading left-tail behaviour nu0(y) ~ pi^{-1/2} |y|^{-1/4} exp(-|y|^{3/2}/3),
/// i.e. 2^{5/6} Ai(2^{-2/3}|y|) to leading order. Rejects y >= 0.
TailValue tail_minus(double y);

struct PainleveOptions {
    double y_min = -20.0;
    double y_max = 40.0;
    std::size_t n_nodes = 6001;
    double tol = 1e-10;
    int tail_terms = 6;
    int max_iterations = 60;
};

/// Sampled Hastings-McLeod solution nu0 on [y_min, y_max].
class PainleveSolution {
public:
    PainleveSolution(Grid1D grid, std::vector<double> nu0, double residual_max, int tail_terms,
                     int iterations);

    const Grid1D& grid() const noexcept { return grid_; }
    std::span<const double> nu0() const noexcept { return nu0_; }
    std::span<const double> dnu0() const noexcept { return dnu0_; }
    double residual_max() const noexcept { return residual_max_; }
    int tail_terms() const noexcept { return tail_terms_; }
    int iterations() const noexcept { return iterations_; }

    /// nu0 at an arbitrary point: spline inside the grid, tail formulas outside.
    double nu0_at(double y) const;
    double dnu0_at(double y) const;

    /// Throws SolverError when positivity, monotonicity or the single
    /// inflection fails, or when residual_max exceeds `tol`.
    void validate(double tol) const;

private:
    Grid1D grid_;
    std::vector<double> nu0_;
    std::vector<double> dnu0_;
    double residual_max_;
    int tail_terms_;
    int iterations_;
    CubicSpline spline_;
    TailSeries series_;
};

/// Max |4 D^2 nu + y nu - nu^3| over interior nodes.
double painleve_residual_max(const Grid1D& grid, std::span<const double> nu);

/// Number of sign changes of the discrete second derivative (exact zeros skipped).
int inflection_count(const Grid1D& grid, std::span<const double> nu);

/// Damped Newton on the finite-difference system with the end values pinned
/// to tail_minus(y_min) and tail_plus(y_max).
PainleveSolution solve_hastings_mcleod(const PainleveOptions& opts = {});
PainleveSolution solve_hastings_mcleod(double y_min, double y_max, std::size_t n_nodes, double tol);

/// W0(y) = 3 nu0(y)^2 - y on the solution grid.
std::vector<double> w0_eval(const PainleveSolution& sol);

struct PotentialMinimum {
    double location = 0.0;
    double value = 0.0;
};

/// Parabolic refinement of the discrete minimum of W0. Throws SolverError
/// if the minimum is not positive.
PotentialMinimum w0_min(const PainleveSolution& sol);

/// Columns y, nu0, dnu0, W0.
CsvTable painleve_table(const PainleveSolution& sol);

}  // namespace tfp
