#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tfp/csv.hpp"
#include "tfp/groundstate.hpp"
#include "tfp/painleve.hpp"

namespace tfp {

/// Single-well potential W on [lower, upper] with a certified minimum.
class PotentialProfile {
public:
    /// Closed-form evaluator. The minimum is located by scanning `samples`
    /// points and refining with Brent's method unless `well_location` is given.
    PotentialProfile(std::function<double(double)> w, double lower, double upper,
                     std::optional<double> well_location = {}, std::size_t samples = 4001);

    /// Simplified piecewise potential 2y (y >= 0), -y (y <= 0) on [-1e3, 1e3].
    static PotentialProfile simplified();
    /// W0 = 3 nu0^2 - y on the Painleve grid range.
    static PotentialProfile from_painleve(const PainleveSolution& sol);
    /// Spline through samples on a grid.
    static PotentialProfile from_samples(const Grid1D& grid, std::span<const double> values);

    double operator()(double y) const { return w_(y); }
    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    const PotentialMinimum& well_min() const noexcept { return well_; }
    bool monotone_left() const noexcept { return monotone_left_; }
    bool monotone_right() const noexcept { return monotone_right_; }
    /// Largest energy for which both turning points lie inside [lower, upper].
    double ceiling() const noexcept { return std::min(w_(lower_), w_(upper_)); }

private:
    std::function<double(double)> w_;
    double lower_;
    double upper_;
    PotentialMinimum well_;
    bool monotone_left_ = false;
    bool monotone_right_ = false;
};

/// Roots y_- < well location < y_+ of W(y) = mu, bisected to 1e-12.
/// Throws std::domain_error when mu is not above the well bottom or not
/// below the profile's ceiling.
std::pair<double, double> turning_points(const PotentialProfile& w, double mu);

/// int_{y_-}^{y_+} sqrt(mu - W) dy. Each branch is mapped by
/// y = y_t - (y_t - y_m) u^2, u in [0, 1], which removes the square-root
/// endpoint behaviour, then integrated by 200-point Gauss-Legendre.
double action(const PotentialProfile& w, double mu);

/// mu with action(W, mu) = target (bracketing root finder).
double solve_action(const PotentialProfile& w, double target);

/// Root of action(W, mu) = pi (2n - 1).
double bs_eigenvalue(const PotentialProfile& w, int n);

struct XRuleResult {
    double lambda = 0.0;
    double scaled = 0.0;
    double x_minus = 0.0;
    double x_plus = 0.0;
};

/// int sqrt(lambda - V_eps) dx = eps pi (n - 1/2) on the half-line well
/// around x = 1 (d = 1 ground state).
XRuleResult bs_rule_x(const GroundState& gs, int n);

/// V_eps as a PotentialProfile on [0, r_max].
PotentialProfile lplus_profile(const GroundState& gs);

struct BsRow {
    int n = 0;
    double mu_bs = 0.0;
    double mu_m0 = 0.0;
    double rel_err = 0.0;
};

/// BS predictions for n = 1..mu_m0.size() against the given M0 eigenvalues.
std::vector<BsRow> bs_comparison(const PotentialProfile& w, std::span<const double> mu_m0);

/// Columns n, mu_bs, mu_m0, rel_err.
CsvTable bs_table(std::span<const BsRow> rows);

}  // namespace tfp
