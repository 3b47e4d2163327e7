#include "tfp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "tfp/error.hpp"
#include "tfp/parallel.hpp"

namespace tfp {

const char* to_string(OperatorTag tag) noexcept {
    switch (tag) {
        case OperatorTag::M0: return "M0";
        case OperatorTag::LplusNeumann: return "LplusNeumann";
        case OperatorTag::LplusDirichlet: return "LplusDirichlet";
        case OperatorTag::LplusFullLine: return "LplusFullLine";
        case OperatorTag::Generic: break;
    }
    return "Generic";
}

void SpectrumReport::validate() const {
    for (std::size_t i = 1; i < eigenvalues.size(); ++i)
        if (!(eigenvalues[i] > eigenvalues[i - 1]))
            throw std::logic_error("spectrum: eigenvalues not strictly increasing at index " + std::to_string(i));
    if (eps && scaled.size() != eigenvalues.size()) throw std::logic_error("spectrum: scaled size mismatch");
}

TridiagonalOperator assemble_dirichlet(const Grid1D& grid, double kinetic, std::span<const double> potential) {
    if (grid.kind() != GridKind::uniform) throw std::invalid_argument("assemble_dirichlet: uniform grid required");
    if (grid.size() < 3) throw std::invalid_argument("assemble_dirichlet: need at least 3 nodes");
    if (potential.size() != grid.size()) throw std::invalid_argument("assemble_dirichlet: potential size mismatch");
    const double h = grid.step();
    const double c = kinetic / (h * h);
    const std::size_t m = grid.size() - 2;
    std::vector<double> diag(m), off(m - 1, -c);
    for (std::size_t i = 0; i < m; ++i) diag[i] = 2.0 * c + potential[i + 1];
    std::vector<double> sub = off;
    return TridiagonalOperator(std::move(sub), std::move(diag), std::move(off), true);
}

TridiagonalOperator assemble_M0(const PainleveSolution& sol) {
    return assemble_dirichlet(sol.grid(), 4.0, w0_eval(sol));
}

std::vector<double> lplus_potential(const GroundState& gs) {
    std::vector<double> v(gs.grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = gs.grid[i];
        v[i] = 3.0 * gs.eta[i] * gs.eta[i] - 1.0 + x * x;
    }
    return v;
}

TridiagonalOperator assemble_Lplus(const GroundState& gs, BoundaryCondition bc) {
    if (gs.d != 1) throw std::invalid_argument("assemble_Lplus: only d = 1 is supported");
    const Grid1D& g = gs.grid;
    if (g.kind() != GridKind::uniform) throw std::invalid_argument("assemble_Lplus: uniform grid required");
    const auto v = lplus_potential(gs);
    const double e2 = gs.eps * gs.eps;

    switch (bc) {
        case BoundaryCondition::Dirichlet: return assemble_dirichlet(g, e2, v);
        case BoundaryCondition::Neumann: {
            const double h = g.step();
            const double c = e2 / (h * h);
            const std::size_t m = g.size() - 1;
            std::vector<double> diag(m), off(m - 1, -c);
            for (std::size_t i = 0; i < m; ++i) diag[i] = 2.0 * c + v[i];
            // row 0 reads 2c(u0 - u1); rescaling u0 by 2^{-1/2} makes it symmetric
            off[0] = -std::sqrt(2.0) * c;
            std::vector<double> sub = off;
            return TridiagonalOperator(std::move(sub), std::move(diag), std::move(off), true);
        }
        case BoundaryCondition::FullLine: {
            const std::size_t n = g.size();
            std::vector<double> nodes(2 * n - 1), pot(2 * n - 1);
            for (std::size_t i = 0; i < n; ++i) {
                nodes[n - 1 - i] = -g[i];
                nodes[n - 1 + i] = g[i];
                pot[n - 1 - i] = v[i];
                pot[n - 1 + i] = v[i];
            }
            auto full = Grid1D::uniform(-g.back(), g.back(), 2 * n - 1);
            return assemble_dirichlet(full, e2, pot);
        }
    }
    throw std::invalid_argument("assemble_Lplus: unknown boundary condition");
}

std::size_t sturm_count(const TridiagonalOperator& op, double lambda) {
    const std::size_t n = op.size();
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double b2 = i > 0 ? op.sub[i - 1] * op.sub[i - 1] : 0.0;
        q = op.diag[i] - lambda - (i > 0 ? b2 / q : 0.0);
        if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(op.diag[i]) + std::abs(lambda) + 1.0);
        if (q < 0.0) ++count;
    }
    return count;
}

std::pair<double, double> gershgorin_bounds(const TridiagonalOperator& op) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const std::size_t n = op.size();
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(op.sub[i - 1]);
        if (i + 1 < n) r += std::abs(op.super[i]);
        lo = std::min(lo, op.diag[i] - r);
        hi = std::max(hi, op.diag[i] + r);
    }
    return {lo, hi};
}

namespace {

double bisect_eigenvalue(const TridiagonalOperator& op, std::size_t j, double lo, double hi) {
    for (int it = 0; it < 2200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(op, mid) > j)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void fix_sign(std::vector<double>& v) {
    std::size_t imax = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    if (v[imax] < 0.0)
        for (double& x : v) x = -x;
}

std::vector<double> inverse_iteration(const TridiagonalOperator& op, double lambda, double spread) {
    const std::size_t n = op.size();
    const double shift = lambda - 1e-8 * spread;
    auto shifted = op;
    for (double& d : shifted.diag) d -= shift;

    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> x(n);
    for (double& v : x) v = unif(rng);
    double nx = norm2(x);
    for (double& v : x) v /= nx;

    for (int it = 0; it < 50; ++it) {
        auto y = solve_tridiagonal(shifted, x);
        const double ny = norm2(y);
        for (double& v : y) v /= ny;
        double dplus = 0.0, dminus = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dplus += (y[i] - x[i]) * (y[i] - x[i]);
            dminus += (y[i] + x[i]) * (y[i] + x[i]);
        }
        x.swap(y);
        if (std::sqrt(std::min(dplus, dminus)) <= 1e-12) {
            fix_sign(x);
            return x;
        }
    }
    throw SolverError("inverse iteration stagnated at lambda=" + std::to_string(lambda));
}

}  // namespace

SpectrumReport eig_smallest(const TridiagonalOperator& op, std::size_t k, bool want_vectors, std::size_t workers) {
    if (!op.symmetric) throw std::invalid_argument("eig_smallest: operator must be symmetric");
    op.validate();
    if (k == 0) return {};
    if (k > op.size()) throw SolverError("eig_smallest: requested more eigenvalues than the matrix dimension");
    auto [lo, hi] = gershgorin_bounds(op);
    const double pad = 1e-12 * std::max(1.0, hi - lo);
    lo -= pad;
    hi += pad;
    if (sturm_count(op, lo) != 0 || sturm_count(op, hi) < k) throw SolverError("eig_smallest: bracket failure");

    SpectrumReport rep;
    rep.eigenvalues.resize(k);
    parallel_for(k, workers, [&](std::size_t j) { rep.eigenvalues[j] = bisect_eigenvalue(op, j, lo, hi); });
    if (want_vectors) {
        rep.eigenvectors.resize(k);
        parallel_for(k, workers,
                     [&](std::size_t j) { rep.eigenvectors[j] = inverse_iteration(op, rep.eigenvalues[j], hi - lo); });
    }
    return rep;
}

SpectrumReport m0_spectrum(const PainleveSolution& sol, std::size_t k, bool want_vectors) {
    auto rep = eig_smallest(assemble_M0(sol), k, want_vectors);
    rep.op = OperatorTag::M0;
    return rep;
}

SpectrumReport lplus_spectrum(const GroundState& gs, BoundaryCondition bc, std::size_t k) {
    auto rep = eig_smallest(assemble_Lplus(gs, bc), k);
    switch (bc) {
        case BoundaryCondition::Neumann: rep.op = OperatorTag::LplusNeumann; break;
        case BoundaryCondition::Dirichlet: rep.op = OperatorTag::LplusDirichlet; break;
        case BoundaryCondition::FullLine: rep.op = OperatorTag::LplusFullLine; break;
    }
    rep.eps = gs.eps;
    const double e23 = std::cbrt(gs.eps * gs.eps);
    for (double l : rep.eigenvalues) rep.scaled.push_back(l / e23);
    return rep;
}

std::vector<DecayCertificate> decay_check(const SpectrumReport& report, const PainleveSolution& sol) {
    if (report.op != OperatorTag::M0) throw std::invalid_argument("decay_check: M0 report required");
    const Grid1D& g = sol.grid();
    const double h = g.step();
    std::vector<DecayCertificate> out;
    for (std::size_t m = 0; m < report.eigenvectors.size(); ++m) {
        const auto& v = report.eigenvectors[m];
        if (v.size() + 2 != g.size()) throw std::invalid_argument("decay_check: vector does not match the grid");
        std::vector<double> u(g.size(), 0.0);
        const double scale = 1.0 / (norm2(v) * std::sqrt(h));
        for (std::size_t i = 0; i < v.size(); ++i) u[i + 1] = v[i] * scale;
        const auto du = first_difference(u, g);
        DecayCertificate c;
        c.m = static_cast<int>(m + 1);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double ay = std::abs(g[i]);
            const double w = std::exp(ay);
            c.c_value = std::max(c.c_value, std::abs(u[i]) * w);
            c.c_derivative = std::max(c.c_derivative, std::abs(du[i]) * w / (ay + 1.0));
        }
        out.push_back(c);
    }
    return out;
}

std::vector<ScalingRow> scaling_study(std::span<const GroundState> states, std::span<const double> mu,
                                      std::size_t workers) {
    std::vector<const GroundState*> sorted;
    for (const auto& s : states) sorted.push_back(&s);
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->eps > b->eps; });

    const std::size_t k = mu.size();
    std::vector<std::vector<ScalingRow>> per_state(sorted.size());
    parallel_for(sorted.size(), workers, [&](std::size_t s) {
        const GroundState& gs = *sorted[s];
        const auto odd = eig_smallest(assemble_Lplus(gs, BoundaryCondition::Neumann), k);
        const auto even = eig_smallest(assemble_Lplus(gs, BoundaryCondition::Dirichlet), k);
        const double e23 = std::cbrt(gs.eps * gs.eps);
        for (std::size_t n = 0; n < k; ++n) {
            ScalingRow r;
            r.eps = gs.eps;
            r.n = static_cast<int>(n + 1);
            r.lambda_odd = odd.eigenvalues[n];
            r.lambda_even = even.eigenvalues[n];
            r.scaled_odd = r.lambda_odd / e23;
            r.scaled_even = r.lambda_even / e23;
            r.mu_n = mu[n];
            r.pair_gap = (r.lambda_even - r.lambda_odd) / r.lambda_even;
            per_state[s].push_back(r);
        }
    });
    std::vector<ScalingRow> rows;
    for (auto& v : per_state) rows.insert(rows.end(), v.begin(), v.end());
    return rows;
}

std::vector<ScalingRow> scaling_study(std::span<const double> eps_list, int n_pairs, const PainleveSolution& sol,
                                      const CorrectionSet& set, const StudyGrid& cfg) {
    if (n_pairs < 1) throw std::invalid_argument("scaling_study: n_pairs must be >= 1");
    if (set.dimension() != 1) throw std::invalid_argument("scaling_study: d = 1 corrections required");
    const auto mu = m0_spectrum(sol, static_cast<std::size_t>(n_pairs)).eigenvalues;
    const auto states = solve_ground_states(eps_list, 1, sol, set, cfg);
    return scaling_study(states, mu, cfg.workers);
}

double w_eps_transcription_error(const GroundState& gs) {
    const auto v = lplus_potential(gs);
    const double e13 = std::cbrt(gs.eps);
    const double e23 = e13 * e13;
    double err = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double y = to_boundary_layer(gs.grid[i], gs.eps);
        const double nu = gs.eta[i] / e13;
        err = std::max(err, std::abs(v[i] - e23 * (3.0 * nu * nu - y)));
    }
    return err;
}

double w_eps_deviation(const GroundState& gs, const PainleveSolution& sol, double y_lo, double y_hi) {
    const double e13 = std::cbrt(gs.eps);
    const double lo = std::max(y_lo, sol.grid().front());
    const double hi = std::min(y_hi, sol.grid().back());
    double dev = 0.0;
    for (std::size_t i = 0; i < gs.grid.size(); ++i) {
        const double y = to_boundary_layer(gs.grid[i], gs.eps);
        if (y < lo || y > hi) continue;
        const double nu = gs.eta[i] / e13;
        const double n0 = sol.nu0_at(y);
        dev = std::max(dev, std::abs(3.0 * (nu * nu - n0 * n0)));
    }
    return dev;
}

CsvTable scaling_table(std::span<const ScalingRow> rows) {
    CsvTable t({"eps", "n", "lambda_odd", "lambda_even", "scaled_odd", "scaled_even", "mu_n", "pair_gap"});
    for (const auto& r : rows)
        t.add_row({r.eps, static_cast<double>(r.n), r.lambda_odd, r.lambda_even, r.scaled_odd, r.scaled_even, r.mu_n,
                   r.pair_gap});
    return t;
}

}  // namespace tfp
