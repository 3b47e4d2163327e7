#include "tfp/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tfp/error.hpp"
#include "tfp/parallel.hpp"
#include "tfp/tridiagonal.hpp"

namespace tfp {

double thomas_fermi(double x) {
    const double s = 1.0 - x * x;
    return s > 0.0 ? std::sqrt(s) : 0.0;
}

Grid1D radial_grid(double r_max, std::size_t n_nodes) { return Grid1D::uniform(0.0, r_max, n_nodes); }

namespace {

void check_dimension(int d) {
    if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
}

double sphere_area(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * std::numbers::pi;
        default: return 4.0 * std::numbers::pi;
    }
}

// Radial Laplacian weights at node i (i < n-1). Node 0 uses the even
// extension: Delta eta(0) = d * eta''(0) ~ 2d (eta_1 - eta_0)/h^2.
Stencil3 radial_laplacian(const Grid1D& g, int d, std::size_t i) {
    if (i == 0) {
        const double h = g.spacing(0);
        const double c = 2.0 * d / (h * h);
        return {0.0, -c, c};
    }
    auto st = second_derivative_stencil(g, i);
    if (d > 1) {
        const double hm = g.spacing(i - 1);
        const double hp = g.spacing(i);
        const double k = (d - 1) / g[i];
        st.lower += k * (-hp / (hm * (hm + hp)));
        st.center += k * ((hp - hm) / (hm * hp));
        st.upper += k * (hm / (hp * (hm + hp)));
    }
    return st;
}

std::vector<double> residual_vector(double eps, int d, const Grid1D& g, std::span<const double> eta) {
    const std::size_t m = g.size() - 1;
    const double e2 = eps * eps;
    std::vector<double> r(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto st = radial_laplacian(g, d, i);
        // weights sum to zero; differencing first avoids cancellation
        double lap = st.upper * (eta[i + 1] - eta[i]);
        if (i > 0) lap += st.lower * (eta[i - 1] - eta[i]);
        const double x = g[i];
        r[i] = e2 * lap + (1.0 - x * x) * eta[i] - eta[i] * eta[i] * eta[i];
    }
    return r;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

struct NewtonResult {
    std::vector<double> eta;
    double residual;
    int iterations;
};

NewtonResult newton(double eps, int d, const Grid1D& g, std::vector<double> eta, double tol, int max_iter) {
    const std::size_t n = g.size();
    const std::size_t m = n - 1;
    const double e2 = eps * eps;
    eta.back() = 0.0;

    auto res = residual_vector(eps, d, g, eta);
    double norm = max_abs(res);
    int iter = 0;
    for (; iter < max_iter && norm > tol; ++iter) {
        std::vector<double> sub(m - 1), diag(m), sup(m - 1), rhs(m);
        for (std::size_t i = 0; i < m; ++i) {
            const auto st = radial_laplacian(g, d, i);
            const double x = g[i];
            diag[i] = e2 * st.center + (1.0 - x * x) - 3.0 * eta[i] * eta[i];
            if (i > 0) sub[i - 1] = e2 * st.lower;
            if (i + 1 < m) sup[i] = e2 * st.upper;
            rhs[i] = -res[i];
        }
        const auto step = solve_tridiagonal(TridiagonalOperator(std::move(sub), std::move(diag), std::move(sup)), rhs);

        double lambda = 1.0;
        bool accepted = false;
        bool positivity_blocked = false;
        std::vector<double> trial(eta);
        for (int halving = 0; halving <= 30; ++halving, lambda *= 0.5) {
            bool positive = true;
            for (std::size_t i = 0; i < m; ++i) {
                trial[i] = eta[i] + lambda * step[i];
                if (!(trial[i] > 0.0)) positive = false;
            }
            if (!positive) {
                positivity_blocked = true;
                continue;
            }
            auto trial_res = residual_vector(eps, d, g, trial);
            const double trial_norm = max_abs(trial_res);
            if (trial_norm < norm) {
                eta.swap(trial);
                res = std::move(trial_res);
                norm = trial_norm;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            if (positivity_blocked && norm > tol)
                throw SolverError("groundstate: positivity lost after damping was exhausted", norm);
            break;
        }
    }
    if (norm > tol)
        throw SolverError("groundstate: Newton stalled at residual " + format_number(norm) + " (eps=" +
                              format_number(eps) + ", d=" + std::to_string(d) + ")",
                          norm);
    return {std::move(eta), norm, iter};
}

std::vector<double> seed_profile(double eps, const Grid1D& g, const GroundStateOptions& opts) {
    std::vector<double> eta(g.size());
    const bool composite = opts.painleve && opts.corrections;
    for (std::size_t i = 0; i < g.size(); ++i) {
        double v = smoothed_thomas_fermi(eps, g[i]);
        if (composite) {
            const double y = to_boundary_layer(g[i], eps);
            if (y <= opts.painleve->grid().back()) v = composite_eta(*opts.painleve, *opts.corrections, eps, g[i]);
        }
        // a truncated expansion can dip below zero in the far tail
        eta[i] = std::max(v, std::numeric_limits<double>::min());
    }
    return eta;
}

}  // namespace

double smoothed_thomas_fermi(double eps, double r) {
    const double s = 1.0 - r * r;
    const double e43 = std::cbrt(eps * eps * eps * eps);
    const double root = std::sqrt(s * s + 4.0 * e43);
    const double inner = s >= 0.0 ? 0.5 * (s + root) : 2.0 * e43 / (root - s);
    return std::sqrt(inner);
}

double ground_state_residual_max(double eps, int d, const Grid1D& grid, std::span<const double> eta) {
    check_dimension(d);
    return max_abs(residual_vector(eps, d, grid, eta));
}

void GroundState::validate(double tol) const {
    const std::size_t n = eta.size();
    double top = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(eta[i] > 0.0))
            throw SolverError("groundstate: eta not positive at r=" + std::to_string(grid[i]), residual_max);
        top = std::max(top, eta[i]);
    }
    if (std::abs(eta.back()) > 1e-12) throw SolverError("groundstate: eta(r_max) not pinned to zero", residual_max);
    if (top > 1.0 + 10.0 * tol) throw SolverError("groundstate: max eta exceeds 1", residual_max);
    if (residual_max > tol) throw SolverError("groundstate: residual above tolerance", residual_max);
}

GroundState solve_ground_state(double eps, int d, const Grid1D& grid, const GroundStateOptions& opts) {
    check_dimension(d);
    if (!(eps > 0.0 && eps <= 0.5)) throw std::invalid_argument("groundstate: eps must lie in (0, 0.5]");
    if (std::abs(grid.front()) > 0.0) throw std::invalid_argument("groundstate: radial grid must start at r = 0");
    const double e23 = std::cbrt(eps * eps);
    if (grid.back() < std::max(2.0, 1.0 + 6.0 * e23))
        throw std::invalid_argument("groundstate: r_max must be >= max(2, 1 + 6 eps^{2/3})");
    {
        const std::size_t i1 = grid.interval(1.0);
        if (grid.spacing(i1) > e23 / 20.0)
            throw std::invalid_argument("groundstate: grid does not resolve the layer (need 20 nodes per eps^{2/3})");
    }
    if (!(opts.tol > 0.0)) throw std::invalid_argument("groundstate: tol must be positive");

    GroundState gs;
    gs.eps = eps;
    gs.d = d;
    gs.grid = grid;

    try {
        auto r = newton(eps, d, grid, seed_profile(eps, grid, opts), opts.tol, opts.max_iterations);
        gs.eta = std::move(r.eta);
        gs.residual_max = r.residual;
        gs.iterations = r.iterations;
    } catch (const SolverError&) {
        if (!opts.allow_continuation || eps >= 0.3) throw;
        GroundStateOptions plain = opts;
        plain.painleve = nullptr;
        plain.corrections = nullptr;
        std::vector<double> eta = seed_profile(0.3, grid, plain);
        int total = 0;
        for (double e = 0.3;; e *= 0.5) {
            const double target = std::max(e, eps);
            auto r = newton(target, d, grid, std::move(eta), opts.tol, opts.max_iterations);
            eta = std::move(r.eta);
            total += r.iterations;
            if (target == eps) {
                gs.residual_max = r.residual;
                break;
            }
        }
        gs.eta = std::move(eta);
        gs.iterations = total;
        gs.via_continuation = true;
    }
    gs.energy = energy(gs);
    gs.validate(opts.tol);
    return gs;
}

GroundState solve_ground_state(double eps, int d, const Grid1D& grid, double tol) {
    GroundStateOptions opts;
    opts.tol = tol;
    return solve_ground_state(eps, d, grid, opts);
}

double energy_functional(double eps, int d, const Grid1D& grid, std::span<const double> u) {
    check_dimension(d);
    if (u.size() != grid.size()) throw std::invalid_argument("energy_functional: size mismatch");
    const double e2 = eps * eps;
    auto weight = [d](double r) { return d == 1 ? 1.0 : std::pow(r, d - 1); };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double h = grid.spacing(i);
        const double r0 = grid[i], r1 = grid[i + 1];
        const double du = (u[i + 1] - u[i]) / h;
        const double kinetic = e2 * du * du * weight(0.5 * (r0 + r1));
        auto pot = [&](double r, double v) { return ((r * r - 1.0) * v * v + 0.5 * v * v * v * v) * weight(r); };
        total += h * (kinetic + 0.5 * (pot(r0, u[i]) + pot(r1, u[i + 1])));
    }
    return sphere_area(d) * total;
}

double energy(const GroundState& gs) { return energy_functional(gs.eps, gs.d, gs.grid, gs.eta); }

double composite_eta(const PainleveSolution& sol, const CorrectionSet& set, double eps, double x, int order) {
    const double y = to_boundary_layer(x, eps);
    const double scale = std::cbrt(eps);
    if (y < sol.grid().front()) return scale * sol.nu0_at(y);
    return scale * composite_nu(set, sol, eps, y, order);
}

double predicted_remainder_order(int d, int N) { return (2.0 * N + 4.0 - d) / 3.0; }

std::vector<GroundState> solve_ground_states(std::span<const double> eps_list, int d,
                                             const PainleveSolution& sol, const CorrectionSet& set,
                                             const StudyGrid& cfg) {
    std::vector<double> eps(eps_list.begin(), eps_list.end());
    std::sort(eps.begin(), eps.end());
    std::vector<GroundState> out(eps.size());
    const Grid1D grid = radial_grid(cfg.r_max, cfg.n_nodes);
    parallel_for(eps.size(), cfg.workers, [&](std::size_t k) {
        GroundStateOptions opts;
        opts.tol = cfg.tol;
        opts.painleve = &sol;
        opts.corrections = &set;
        out[k] = solve_ground_state(eps[k], d, grid, opts);
    });
    return out;
}

RemainderStudy remainder_study(std::span<const GroundState> states, const PainleveSolution& sol,
                               const CorrectionSet& set, int N) {
    if (states.empty()) throw std::invalid_argument("remainder_study: no ground states");
    if (N > set.order()) throw std::invalid_argument("remainder_study: N exceeds correction order");
    RemainderStudy study;
    study.d = states.front().d;
    study.N = N;
    study.predicted_order = predicted_remainder_order(study.d, N);

    std::vector<const GroundState*> sorted;
    for (const auto& s : states) sorted.push_back(&s);
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->eps > b->eps; });

    for (const GroundState* gs : sorted) {
        double err = 0.0;
        for (std::size_t i = 0; i < gs->grid.size(); ++i)
            err = std::max(err, std::abs(gs->eta[i] - composite_eta(sol, set, gs->eps, gs->grid[i], N)));
        RemainderRow row{gs->eps, err, std::numeric_limits<double>::quiet_NaN()};
        if (!study.rows.empty()) {
            const auto& prev = study.rows.back();
            row.order = std::log(prev.err / err) / std::log(prev.eps / gs->eps);
        }
        study.rows.push_back(row);
    }
    return study;
}

RemainderStudy remainder_study(std::span<const double> eps_list, int d, int N, const PainleveSolution& sol,
                               const CorrectionSet& set, const StudyGrid& cfg) {
    const auto states = solve_ground_states(eps_list, d, sol, set, cfg);
    return remainder_study(states, sol, set, N);
}

EnvelopeReport envelope_check(const GroundState& gs, double k_max) {
    EnvelopeReport rep;
    rep.inner_gap_min = std::numeric_limits<double>::infinity();
    const double e13 = std::cbrt(gs.eps);
    const double e23 = e13 * e13;
    for (std::size_t i = 0; i < gs.grid.size(); ++i) {
        const double r = gs.grid[i];
        const double eta = gs.eta[i];
        const double tf = thomas_fermi(r);
        if (r >= 1.0) rep.c_outer = std::max(rep.c_outer, eta / (e13 * std::exp((1.0 - r * r) / (4.0 * e23))));
        if (r <= 1.0 - e13) {
            rep.c_inner = std::max(rep.c_inner, (tf - eta) / (e13 * tf));
            rep.inner_gap_min = std::min(rep.inner_gap_min, tf - eta);
        }
        if (r <= k_max) rep.sup_compact = std::max(rep.sup_compact, std::abs(eta - tf));
    }
    return rep;
}

CsvTable profile_table(const GroundState& gs, const PainleveSolution& sol, const CorrectionSet& set) {
    CsvTable t({"r", "eta", "composite", "absdiff"});
    for (std::size_t i = 0; i < gs.grid.size(); ++i) {
        const double c = composite_eta(sol, set, gs.eps, gs.grid[i]);
        t.add_row({gs.grid[i], gs.eta[i], c, std::abs(gs.eta[i] - c)});
    }
    return t;
}

CsvTable remainder_table(const RemainderStudy& study) {
    CsvTable t({"eps", "err", "order"});
    for (const auto& r : study.rows) t.add_row({r.eps, r.err, r.order});
    return t;
}

}  // namespace tfp
