#pragma once

#include <array>
#include <span>
#include <vector>

#include "tfp/csv.hpp"
#include "tfp/painleve.hpp"
#include "tfp/spline.hpp"

namespace tfp {

/// Right-tail exponent of the correction terms: nu_k ~ y^{beta - 2k}.
double tail_exponent(int d);

/// One solved correction term nu_n with its right-hand side F_n.
struct CorrectionTerm {
    std::vector<double> values;
    std::vector<double> rhs;
    /// For n = 1 and d >= 2: the explicit far-field part
    /// (1-d) Phi(y) / (W0(y) y^{1/2}); empty otherwise.
    std::vector<double> split_part;
};

/// Corrections nu_1..nu_N on the Painleve grid for dimension d.
class CorrectionSet {
public:
    CorrectionSet(int d, std::vector<CorrectionTerm> terms, const Grid1D& grid);

    int dimension() const noexcept { return d_; }
    int order() const noexcept { return static_cast<int>(terms_.size()); }
    double beta() const noexcept { return tail_exponent(d_); }

    /// n in 1..order()
    std::span<const double> term(int n) const { return terms_.at(static_cast<std::size_t>(n - 1)).values; }
    std::span<const double> rhs(int n) const { return terms_.at(static_cast<std::size_t>(n - 1)).rhs; }
    std::span<const double> split_part() const noexcept {
        return terms_.empty() ? std::span<const double>{} : std::span<const double>(terms_.front().split_part);
    }

    /// Spline value of nu_n at y (y inside the grid).
    double term_at(int n, double y) const { return splines_.at(static_cast<std::size_t>(n - 1))(y); }

private:
    int d_;
    std::vector<CorrectionTerm> terms_;
    std::vector<CubicSpline> splines_;
};

/// C^2 smoothstep: 0 for y <= 1/2, 1 for y >= 1.
double cutoff(double y);

/// Ordered index triples (n1, n2, n3), all < n, summing to n.
std::vector<std::array<int, 3>> cubic_index_triples(int n);

/// F_1 = -2d nu0' - 4y nu0'' with nu0'' = (nu0^3 - y nu0)/4.
std::vector<double> assemble_F1(const PainleveSolution& sol, int d);

/// nu_1; for d >= 2 solved through the far-field split.
CorrectionTerm solve_correction_1(const PainleveSolution& sol, int d);

/// F_n for n >= 2 from nu_0 and the first n-1 corrections in `lower`.
std::vector<double> assemble_Fn(std::span<const std::vector<double>> lower, const PainleveSolution& sol,
                                int d, int n);

/// Solves (-4 D^2 + W0) nu_n = F_n. Zero Dirichlet at y_min; at y_max the
/// closure nu' = ((beta - 2n)/y) nu taken from the known algebraic decay.
std::vector<double> solve_correction_n(const PainleveSolution& sol, std::span<const double> rhs, int d, int n);

/// Builds nu_1..nu_N sequentially. N = 0 gives an empty set.
CorrectionSet build_corrections(const PainleveSolution& sol, int d, int N);

/// Max interior residual of (-4 D^2 + W0) v - f.
double correction_residual_max(const PainleveSolution& sol, std::span<const double> v, std::span<const double> f);

/// Least-squares slope of log|v| against log y over nodes with y in [lo, hi].
double loglog_slope(const Grid1D& grid, std::span<const double> v, double lo, double hi);

/// sum_{n=0}^{order} eps^{2n/3} nu_n(y); order defaults to set.order().
/// Throws std::out_of_range outside the Painleve grid.
double composite_nu(const CorrectionSet& set, const PainleveSolution& sol, double eps, double y, int order = -1);

/// Columns y, nu1..nuN, F1..FN.
CsvTable corrections_table(const CorrectionSet& set, const PainleveSolution& sol);

}  // namespace tfp
