#include "tfp/corrections.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tfp/error.hpp"
#include "tfp/tridiagonal.hpp"

namespace tfp {

namespace {

void check_dimension(int d) {
    if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
}

// Right-tail check window; the closure at y_max is exact enough that the
// whole window can be used.
constexpr double kSlopeLo = 25.0;
constexpr double kSlopeHi = 40.0;

void enforce_tail_order(const PainleveSolution& sol, std::span<const double> v, double expected, int n) {
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    if (std::abs(v.front()) > 1e-8 * vmax)
        throw SolverError("corrections: nu_" + std::to_string(n) + " does not decay at y_min");
    const double hi = std::min(kSlopeHi, sol.grid().back());
    const double slope = loglog_slope(sol.grid(), v, kSlopeLo, hi);
    if (std::abs(slope - expected) > 0.5)
        throw SolverError("corrections: nu_" + std::to_string(n) + " right-tail slope " + std::to_string(slope) +
                          " != " + std::to_string(expected));
}

}  // namespace

double tail_exponent(int d) {
    check_dimension(d);
    return d == 1 ? -2.5 : 0.5;
}

double cutoff(double y) {
    const double t = std::clamp(2.0 * y - 1.0, 0.0, 1.0);
    return t * t * (3.0 - 2.0 * t);
}

std::vector<std::array<int, 3>> cubic_index_triples(int n) {
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int c = n - a - b;
            if (c >= 0 && c < n) out.push_back({a, b, c});
        }
    return out;
}

CorrectionSet::CorrectionSet(int d, std::vector<CorrectionTerm> terms, const Grid1D& grid)
    : d_(d), terms_(std::move(terms)) {
    check_dimension(d);
    splines_.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (t.values.size() != grid.size()) throw std::invalid_argument("CorrectionSet: term size mismatch");
        splines_.emplace_back(grid, t.values);
    }
}

std::vector<double> assemble_F1(const PainleveSolution& sol, int d) {
    check_dimension(d);
    const auto& g = sol.grid();
    const auto nu = sol.nu0();
    const auto dnu = sol.dnu0();
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double y = g[i];
        const double d2 = 0.25 * (nu[i] * nu[i] * nu[i] - y * nu[i]);
        f[i] = -2.0 * d * dnu[i] - 4.0 * y * d2;
    }
    return f;
}

namespace {

// (-4 D^2 + W0) v = f, v(y_min) = 0, v'(y_max) = (decay / y_max) v(y_max).
std::vector<double> solve_m0(const PainleveSolution& sol, std::span<const double> rhs, double decay) {
    const auto& g = sol.grid();
    const std::size_t size = g.size();
    if (rhs.size() != size) throw std::invalid_argument("solve_correction_n: rhs size mismatch");
    const auto w = w0_eval(sol);
    const double k = decay / g.back();

    // unknowns: nodes 1..size-1 (node 0 pinned to zero)
    const std::size_t m = size - 1;
    std::vector<double> sub(m - 1), diag(m), sup(m - 1), b(m);
    for (std::size_t j = 0; j + 1 < m; ++j) {
        const std::size_t i = j + 1;
        const auto st = second_derivative_stencil(g, i);
        diag[j] = -4.0 * st.center + w[i];
        if (j > 0) sub[j - 1] = -4.0 * st.lower;
        sup[j] = -4.0 * st.upper;
        b[j] = rhs[i];
    }
    // ghost node from nu'(y_max) = k nu(y_max): u_{n} = u_{n-2} + 2 h k u_{n-1}
    const double h = g.spacing(size - 2);
    const double inv_h2 = 1.0 / (h * h);
    sub[m - 2] = -8.0 * inv_h2;
    diag[m - 1] = 8.0 * inv_h2 - 8.0 * k / h + w[size - 1];
    b[m - 1] = rhs[size - 1];

    const auto sol_inner = solve_tridiagonal(TridiagonalOperator(std::move(sub), std::move(diag), std::move(sup)), b);
    std::vector<double> out(size, 0.0);
    std::copy(sol_inner.begin(), sol_inner.end(), out.begin() + 1);
    return out;
}

}  // namespace

std::vector<double> solve_correction_n(const PainleveSolution& sol, std::span<const double> rhs, int d, int n) {
    return solve_m0(sol, rhs, tail_exponent(d) - 2.0 * n);
}

CorrectionTerm solve_correction_1(const PainleveSolution& sol, int d) {
    check_dimension(d);
    const auto& g = sol.grid();
    CorrectionTerm term;
    term.rhs = assemble_F1(sol, d);

    if (d == 1) {
        term.values = solve_correction_n(sol, term.rhs, d, 1);
    } else {
        const auto w = w0_eval(sol);
        std::vector<double> split(g.size(), 0.0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double phi = cutoff(g[i]);
            if (phi > 0.0) split[i] = (1.0 - d) * phi / (w[i] * std::sqrt(g[i]));
        }
        // F~1 = F1 - (1-d) y^{-1/2} Phi + 4 (split)''
        const auto split_dd = second_difference(split, g);
        std::vector<double> reduced(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double phi = cutoff(g[i]);
            const double far = phi > 0.0 ? (1.0 - d) * phi / std::sqrt(g[i]) : 0.0;
            reduced[i] = term.rhs[i] - far + 4.0 * split_dd[i];
        }
        // the reduced part decays like y^{-9/2} for every d
        const auto rest = solve_m0(sol, reduced, -4.5);
        term.values.resize(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) term.values[i] = split[i] + rest[i];
        term.split_part = std::move(split);
    }
    enforce_tail_order(sol, term.values, tail_exponent(d) - 2.0, 1);
    return term;
}

std::vector<double> assemble_Fn(std::span<const std::vector<double>> lower, const PainleveSolution& sol,
                                int d, int n) {
    check_dimension(d);
    if (n < 2) throw std::invalid_argument("assemble_Fn: n must be >= 2 (use assemble_F1)");
    if (lower.size() < static_cast<std::size_t>(n - 1))
        throw std::invalid_argument("assemble_Fn: need nu_1..nu_{n-1}");
    const auto& g = sol.grid();
    const auto nu0 = sol.nu0();
    auto term = [&](int k, std::size_t i) { return k == 0 ? nu0[i] : lower[static_cast<std::size_t>(k - 1)][i]; };

    const auto& prev = lower[static_cast<std::size_t>(n - 2)];
    const auto d1 = first_difference(prev, g);
    const auto d2 = second_difference(prev, g);
    const auto triples = cubic_index_triples(n);

    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        double cubic = 0.0;
        for (const auto& t : triples) cubic += term(t[0], i) * term(t[1], i) * term(t[2], i);
        f[i] = -cubic - 2.0 * d * d1[i] - 4.0 * g[i] * d2[i];
    }
    return f;
}

CorrectionSet build_corrections(const PainleveSolution& sol, int d, int N) {
    check_dimension(d);
    if (N < 0) throw std::invalid_argument("build_corrections: N must be >= 0");
    std::vector<CorrectionTerm> terms;
    std::vector<std::vector<double>> values;
    if (N >= 1) {
        terms.push_back(solve_correction_1(sol, d));
        values.push_back(terms.back().values);
    }
    for (int n = 2; n <= N; ++n) {
        CorrectionTerm t;
        t.rhs = assemble_Fn(values, sol, d, n);
        t.values = solve_correction_n(sol, t.rhs, d, n);
        enforce_tail_order(sol, t.values, tail_exponent(d) - 2.0 * n, n);
        values.push_back(t.values);
        terms.push_back(std::move(t));
    }
    return CorrectionSet(d, std::move(terms), sol.grid());
}

double correction_residual_max(const PainleveSolution& sol, std::span<const double> v, std::span<const double> f) {
    const auto& g = sol.grid();
    const auto w = w0_eval(sol);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        const auto st = second_derivative_stencil(g, i);
        const double lap = st.lower * (v[i - 1] - v[i]) + st.upper * (v[i + 1] - v[i]);
        worst = std::max(worst, std::abs(-4.0 * lap + w[i] * v[i] - f[i]));
    }
    return worst;
}

double loglog_slope(const Grid1D& grid, std::span<const double> v, double lo, double hi) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double y = grid[i];
        if (y < lo || y > hi || v[i] == 0.0) continue;
        const double lx = std::log(y);
        const double ly = std::log(std::abs(v[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    if (count < 2) throw std::invalid_argument("loglog_slope: fewer than two samples in window");
    const double c = static_cast<double>(count);
    return (c * sxy - sx * sy) / (c * sxx - sx * sx);
}

double composite_nu(const CorrectionSet& set, const PainleveSolution& sol, double eps, double y, int order) {
    if (!(eps >= 0.0)) throw std::invalid_argument("composite_nu: eps must be nonnegative");
    const auto& g = sol.grid();
    if (y < g.front() || y > g.back()) throw std::out_of_range("composite_nu: y outside the Painleve grid");
    if (order < 0) order = set.order();
    if (order > set.order()) throw std::invalid_argument("composite_nu: order exceeds the correction set");
    const double e23 = std::cbrt(eps * eps);
    double value = sol.nu0_at(y);
    double weight = 1.0;
    for (int n = 1; n <= order; ++n) {
        weight *= e23;
        value += weight * set.term_at(n, y);
    }
    return value;
}

CsvTable corrections_table(const CorrectionSet& set, const PainleveSolution& sol) {
    std::vector<std::string> cols{"y"};
    for (int n = 1; n <= set.order(); ++n) cols.push_back("nu" + std::to_string(n));
    for (int n = 1; n <= set.order(); ++n) cols.push_back("F" + std::to_string(n));
    CsvTable t(std::move(cols));
    for (std::size_t i = 0; i < sol.grid().size(); ++i) {
        std::vector<double> row{sol.grid()[i]};
        for (int n = 1; n <= set.order(); ++n) row.push_back(set.term(n)[i]);
        for (int n = 1; n <= set.order(); ++n) row.push_back(set.rhs(n)[i]);
        t.add_row(std::move(row));
    }
    return t;
}

}  // namespace tfp
