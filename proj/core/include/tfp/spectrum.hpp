#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tfp/corrections.hpp"
#include "tfp/csv.hpp"
#include "tfp/groundstate.hpp"
#include "tfp/painleve.hpp"
#include "tfp/tridiagonal.hpp"

namespace tfp {

enum class OperatorTag { M0, LplusNeumann, LplusDirichlet, LplusFullLine, Generic };
enum class BoundaryCondition { Neumann, Dirichlet, FullLine };

const char* to_string(OperatorTag tag) noexcept;

struct SpectrumReport {
    OperatorTag op = OperatorTag::Generic;
    std::optional<double> eps;
    std::vector<double> eigenvalues;
    /// eigenvalues / eps^{2/3} when eps is set
    std::vector<double> scaled;
    /// unit Euclidean norm, largest component positive
    std::vector<std::vector<double>> eigenvectors;

    /// Strictly increasing eigenvalues; throws std::logic_error.
    void validate() const;
};

/// -kinetic D^2 + V on the interior nodes of a uniform grid, zero Dirichlet
/// at both ends. `potential` is sampled on all grid nodes.
TridiagonalOperator assemble_dirichlet(const Grid1D& grid, double kinetic, std::span<const double> potential);

/// M0 = -4 D^2 + W0 on the Painleve grid.
TridiagonalOperator assemble_M0(const PainleveSolution& sol);

/// V_eps(x) = 3 eta^2 - 1 + x^2 on the ground-state grid.
std::vector<double> lplus_potential(const GroundState& gs);

/// -eps^2 D^2 + V_eps for d = 1. Neumann keeps the axis node (symmetrized by
/// rescaling it with 2^{-1/2}); Dirichlet drops it; FullLine mirrors the grid
/// onto [-r_max, r_max]. Dirichlet at r_max in all cases.
TridiagonalOperator assemble_Lplus(const GroundState& gs, BoundaryCondition bc);

/// Number of eigenvalues strictly below lambda (symmetric operators).
std::size_t sturm_count(const TridiagonalOperator& op, double lambda);

/// [lower, upper] Gershgorin enclosure of the spectrum.
std::pair<double, double> gershgorin_bounds(const TridiagonalOperator& op);

/// k smallest eigenvalues by Sturm bisection (to rounding resolution), with
/// eigenvectors from shifted inverse iteration when requested. Brackets are
/// independent and split over `workers` threads.
SpectrumReport eig_smallest(const TridiagonalOperator& op, std::size_t k, bool want_vectors = false,
                            std::size_t workers = 1);

/// eig_smallest on assemble_M0, tagged M0.
SpectrumReport m0_spectrum(const PainleveSolution& sol, std::size_t k, bool want_vectors = false);

/// eig_smallest on assemble_Lplus with eps and scaled eigenvalues filled in.
SpectrumReport lplus_spectrum(const GroundState& gs, BoundaryCondition bc, std::size_t k);

struct DecayCertificate {
    int m = 0;
    /// smallest C with |u_m(y)| <= C exp(-|y|), u_m normalized to h sum u^2 = 1
    double c_value = 0.0;
    /// smallest C with |u_m'(y)| <= C (|y| + 1) exp(-|y|)
    double c_derivative = 0.0;
};

/// Requires an M0 report with vectors computed on `sol`'s grid.
std::vector<DecayCertificate> decay_check(const SpectrumReport& report, const PainleveSolution& sol);

struct ScalingRow {
    double eps = 0.0;
    int n = 0;
    double lambda_odd = 0.0;
    double lambda_even = 0.0;
    double scaled_odd = 0.0;
    double scaled_even = 0.0;
    double mu_n = 0.0;
    double pair_gap = 0.0;
};

/// Half-line eigenvalues of L+ (Neumann -> lambda_{2n-1}, Dirichlet ->
/// lambda_{2n}) against mu_n. Rows sorted by decreasing eps, then n.
std::vector<ScalingRow> scaling_study(std::span<const GroundState> states, std::span<const double> mu,
                                      std::size_t workers = 1);
std::vector<ScalingRow> scaling_study(std::span<const double> eps_list, int n_pairs, const PainleveSolution& sol,
                                      const CorrectionSet& set, const StudyGrid& cfg);

/// max |V_eps(x) - eps^{2/3} W_eps(y)| with W_eps = 3 nu_eps^2 - y and
/// nu_eps = eta / eps^{1/3}.
double w_eps_transcription_error(const GroundState& gs);

/// max |W_eps(y) - W0(y)| over ground-state nodes with y in [y_lo, y_hi].
double w_eps_deviation(const GroundState& gs, const PainleveSolution& sol, double y_lo = -5.0, double y_hi = 5.0);

/// Columns eps, n, lambda_odd, lambda_even, scaled_odd, scaled_even, mu_n, pair_gap.
CsvTable scaling_table(std::span<const ScalingRow> rows);

}  // namespace tfp
