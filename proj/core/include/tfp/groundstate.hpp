#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tfp/corrections.hpp"
#include "tfp/csv.hpp"
#include "tfp/grid.hpp"
#include "tfp/painleve.hpp"

namespace tfp {

/// Thomas-Fermi profile (1 - x^2)^{1/2} for x < 1, zero beyond.
double thomas_fermi(double x);

/// Radial ground state of eps^2 Delta eta + (1 - r^2) eta - eta^3 = 0.
struct GroundState {
    double eps = 0.0;
    int d = 1;
    Grid1D grid;
    std::vector<double> eta;
    double energy = 0.0;
    double residual_max = 0.0;
    int iterations = 0;
    /// True when the state was reached by continuation in eps rather than
    /// by a direct solve. For d = 3 this labels the TF-seeded branch; no
    /// uniqueness claim is made.
    bool via_continuation = false;

    /// Positivity, max bound and residual; throws SolverError.
    void validate(double tol) const;
};

/// Uniform radial grid on [0, r_max].
Grid1D radial_grid(double r_max = 2.5, std::size_t n_nodes = 20001);

struct GroundStateOptions {
    double tol = 1e-9;
    int max_iterations = 100;
    bool allow_continuation = true;
    /// Seed from the composite expansion when both are given.
    const PainleveSolution* painleve = nullptr;
    const CorrectionSet* corrections = nullptr;
};

/// Damped Newton on the radial finite-difference system, eta'(0) = 0 and
/// eta(r_max) = 0. Falls back to continuation from eps = 0.3 when the direct
/// solve fails.
GroundState solve_ground_state(double eps, int d, const Grid1D& grid, const GroundStateOptions& opts = {});
GroundState solve_ground_state(double eps, int d, const Grid1D& grid, double tol);

/// Max |eps^2 Delta_h eta + (1 - r^2) eta - eta^3| over the unknown nodes.
double ground_state_residual_max(double eps, int d, const Grid1D& grid, std::span<const double> eta);

/// E(u) = |S^{d-1}| int (eps^2 u'^2 + (r^2 - 1) u^2 + u^4 / 2) r^{d-1} dr.
double energy_functional(double eps, int d, const Grid1D& grid, std::span<const double> u);
double energy(const GroundState& gs);

/// Smoothed Thomas-Fermi initializer, eps^{1/3} nu_init((1 - r^2)/eps^{2/3}).
double smoothed_thomas_fermi(double eps, double r);

/// eps^{1/3} sum_n eps^{2n/3} nu_n((1 - x^2)/eps^{2/3}). Points left of the
/// Painleve grid use the nu0 tail (corrections vanish there); points with
/// y beyond the grid's right end throw std::out_of_range.
double composite_eta(const PainleveSolution& sol, const CorrectionSet& set, double eps, double x, int order = -1);

struct RemainderRow {
    double eps = 0.0;
    double err = 0.0;
    /// log(err_prev / err) / log(eps_prev / eps); NaN on the first row.
    double order = 0.0;
};

struct RemainderStudy {
    int d = 1;
    int N = 0;
    double predicted_order = 0.0;
    std::vector<RemainderRow> rows;
};

/// Predicted sup-norm order (2N + 4 - d)/3 of eta - composite.
double predicted_remainder_order(int d, int N);

struct StudyGrid {
    double r_max = 2.5;
    std::size_t n_nodes = 20001;
    double tol = 1e-9;
    std::size_t workers = 1;
};

/// Ground states for each eps (sorted ascending in eps on output), seeded by
/// the composite expansion. Independent solves run on up to `workers` threads.
std::vector<GroundState> solve_ground_states(std::span<const double> eps_list, int d,
                                             const PainleveSolution& sol, const CorrectionSet& set,
                                             const StudyGrid& cfg);

/// Remainder table from already solved states, sorted by decreasing eps.
RemainderStudy remainder_study(std::span<const GroundState> states, const PainleveSolution& sol,
                               const CorrectionSet& set, int N);
RemainderStudy remainder_study(std::span<const double> eps_list, int d, int N, const PainleveSolution& sol,
                               const CorrectionSet& set, const StudyGrid& cfg);

/// Pointwise comparison with the Thomas-Fermi profile.
struct EnvelopeReport {
    /// smallest C with eta <= C eps^{1/3} exp((1 - r^2)/(4 eps^{2/3})) on r >= 1
    double c_outer = 0.0;
    /// smallest C with TF - eta <= C eps^{1/3} TF on r <= 1 - eps^{1/3}
    double c_inner = 0.0;
    /// min of TF - eta on r <= 1 - eps^{1/3} (must be >= 0)
    double inner_gap_min = 0.0;
    /// sup over [0, k_max] of |eta - TF|
    double sup_compact = 0.0;
};
EnvelopeReport envelope_check(const GroundState& gs, double k_max = 0.8);

/// Columns r, eta, composite, absdiff.
CsvTable profile_table(const GroundState& gs, const PainleveSolution& sol, const CorrectionSet& set);
/// Columns eps, err, order.
CsvTable remainder_table(const RemainderStudy& study);

}  // namespace tfp
