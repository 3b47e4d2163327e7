#include "tfp/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tfp/error.hpp"
#include "tfp/tridiagonal.hpp"

namespace tfp {

TailSeries bn_coefficients(int max_order) {
    if (max_order < 1) throw std::invalid_argument("bn_coefficients: need M >= 1");
    const auto m_max = static_cast<std::size_t>(max_order);
    std::vector<double> b(m_max + 1, 0.0);
    b[0] = 1.0;
    b[1] = 0.0;
    for (std::size_t n = 0; n + 2 <= m_max; ++n) {
        const std::size_t top = n + 2;
        // products with exactly one zero index: 3 * sum_{m=1}^{n+1} b_m b_{n+2-m}
        double pair = 0.0;
        for (std::size_t m = 1; m <= n + 1; ++m) pair += b[m] * b[top - m];
        // products with no zero index
        double triple = 0.0;
        for (std::size_t l = 1; l <= n; ++l)
            for (std::size_t m = 1; l + m <= n + 1; ++m) triple += b[l] * b[m] * b[top - l - m];
        const double nn = static_cast<double>(n);
        b[top] = 4.0 * (9.0 * nn * nn - 1.0) * b[n] - 1.5 * pair - 0.5 * triple;
    }
    return TailSeries{std::move(b)};
}

TailValue tail_plus(double y, const TailSeries& series) {
    if (!(y > 0.0)) throw std::domain_error("tail_plus: y must be positive");
    const double u = std::pow(2.0 * y, -1.5);
    double sum = 0.0;
    double dsum = 0.0;
    double power = 1.0;
    double last_term = 0.0;
    bool decreasing = true;
    for (std::size_t n = 0; n < series.coeffs.size(); ++n) {
        const double term = series.coeffs[n] * power;
        sum += term;
        dsum += term * (0.5 - 1.5 * static_cast<double>(n));
        if (term != 0.0) {
            if (last_term != 0.0 && std::abs(term) >= std::abs(last_term)) decreasing = false;
            last_term = term;
        }
        power *= u;
    }
    const double root = std::sqrt(y);
    return TailValue{root * sum, dsum / root, decreasing};
}

TailValue tail_minus(double y) {
    if (!(y < 0.0)) throw std::domain_error("tail_minus: y must be negative");
    const double s = -y;
    const double value = std::pow(s, -0.25) * std::exp(-std::pow(s, 1.5) / 3.0) / std::sqrt(std::numbers::pi);
    const double slope = value * (0.25 / s + 0.5 * std::sqrt(s));
    return TailValue{value, slope, s >= 4.0};
}

PainleveSolution::PainleveSolution(Grid1D grid, std::vector<double> nu0, double residual_max,
                                   int tail_terms, int iterations)
    : grid_(std::move(grid)),
      nu0_(std::move(nu0)),
      residual_max_(residual_max),
      tail_terms_(tail_terms),
      iterations_(iterations),
      series_(bn_coefficients(std::max(tail_terms, 1))) {
    if (nu0_.size() != grid_.size()) throw std::invalid_argument("PainleveSolution: size mismatch");
    dnu0_ = first_difference(nu0_, grid_);
    spline_ = CubicSpline(grid_, nu0_);
}

double PainleveSolution::nu0_at(double y) const {
    if (y < grid_.front()) return nu0_.front() * tail_minus(y).value / tail_minus(grid_.front()).value;
    if (y > grid_.back()) return nu0_.back() * tail_plus(y, series_).value / tail_plus(grid_.back(), series_).value;
    return spline_(y);
}

double PainleveSolution::dnu0_at(double y) const {
    if (y < grid_.front()) return nu0_.front() * tail_minus(y).derivative / tail_minus(grid_.front()).value;
    if (y > grid_.back()) return nu0_.back() * tail_plus(y, series_).derivative / tail_plus(grid_.back(), series_).value;
    return spline_.derivative(y);
}

double painleve_residual_max(const Grid1D& grid, std::span<const double> nu) {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const auto st = second_derivative_stencil(grid, i);
        const double d2 = st.lower * (nu[i - 1] - nu[i]) + st.upper * (nu[i + 1] - nu[i]);
        const double r = 4.0 * d2 + grid[i] * nu[i] - nu[i] * nu[i] * nu[i];
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

int inflection_count(const Grid1D& grid, std::span<const double> nu) {
    const auto d2 = second_difference(nu, grid);
    int changes = 0;
    int last_sign = 0;
    for (std::size_t i = 1; i + 1 < d2.size(); ++i) {
        const int s = (d2[i] > 0.0) - (d2[i] < 0.0);
        if (s == 0) continue;
        if (last_sign != 0 && s != last_sign) ++changes;
        last_sign = s;
    }
    return changes;
}

void PainleveSolution::validate(double tol) const {
    for (std::size_t i = 0; i < nu0_.size(); ++i) {
        if (!(nu0_[i] > 0.0))
            throw SolverError("painleve: nu0 not positive at y=" + std::to_string(grid_[i]), residual_max_);
        if (i > 0 && !(nu0_[i] > nu0_[i - 1]))
            throw SolverError("painleve: nu0 not increasing at y=" + std::to_string(grid_[i]), residual_max_);
    }
    if (const int k = inflection_count(grid_, nu0_); k != 1)
        throw SolverError("painleve: expected one inflection, found " + std::to_string(k), residual_max_);
    if (residual_max_ > tol) throw SolverError("painleve: residual above tolerance", residual_max_);
}

namespace {

double initial_guess(double y) {
    const double root = std::sqrt(y * y + 4.0);
    const double inner = (y >= 0.0) ? 0.5 * (y + root) : 2.0 / (root - y);
    return std::sqrt(inner);
}

template <typename T>
std::vector<T> interior_residual(const Grid1D& grid, std::span<const T> nu) {
    const std::size_t n = grid.size();
    std::vector<T> r(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const auto st = second_derivative_stencil(grid, i);
        const T d2 = st.lower * (nu[i - 1] - nu[i]) + st.upper * (nu[i + 1] - nu[i]);
        r[i - 1] = 4 * d2 + grid[i] * nu[i] - nu[i] * nu[i] * nu[i];
    }
    return r;
}

template <typename T>
double max_abs(const std::vector<T>& v) {
    T m = 0;
    for (T x : v) m = std::max(m, std::abs(x));
    return static_cast<double>(m);
}

}  // namespace

PainleveSolution solve_hastings_mcleod(const PainleveOptions& opts) {
    if (!(opts.y_min <= -15.0)) throw std::invalid_argument("painleve: y_min must be <= -15");
    if (!(opts.y_max >= 30.0)) throw std::invalid_argument("painleve: y_max must be >= 30");
    if (opts.n_nodes < 2000) throw std::invalid_argument("painleve: n_nodes must be >= 2000");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("painleve: tol must be positive");
    if (opts.tail_terms < 1) throw std::invalid_argument("painleve: tail_terms must be >= 1");

    Grid1D grid = Grid1D::uniform(opts.y_min, opts.y_max, opts.n_nodes);
    const std::size_t n = grid.size();
    const TailSeries series = bn_coefficients(opts.tail_terms);

    // The iterate is carried in extended precision so that rounding it to
    // double at the end gives the nearest representable discrete solution;
    // a double iterate stalls near 4 * ulp(nu(y_max)) / h^2.
    using Real = long double;
    std::vector<Real> nu(n);
    for (std::size_t i = 0; i < n; ++i) nu[i] = initial_guess(grid[i]);
    nu.front() = tail_minus(opts.y_min).value;
    nu.back() = tail_plus(opts.y_max, series).value;

    auto residual = interior_residual<Real>(grid, nu);
    double res_norm = max_abs(residual);
    const double target = 1e-3 * opts.tol;
    int iter = 0;
    for (; iter < opts.max_iterations && res_norm > target; ++iter) {
        const std::size_t m = n - 2;
        std::vector<double> sub(m - 1), diag(m), sup(m - 1), rhs(m);
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t i = k + 1;
            const auto st = second_derivative_stencil(grid, i);
            const double v = static_cast<double>(nu[i]);
            diag[k] = 4.0 * st.center + grid[i] - 3.0 * v * v;
            if (k > 0) sub[k - 1] = 4.0 * st.lower;
            if (k + 1 < m) sup[k] = 4.0 * st.upper;
            rhs[k] = static_cast<double>(-residual[k]);
        }
        const auto step = solve_tridiagonal(TridiagonalOperator(std::move(sub), std::move(diag), std::move(sup)), rhs);

        Real lambda = 1;
        bool accepted = false;
        std::vector<Real> trial(nu);
        for (int halving = 0; halving <= 30; ++halving) {
            for (std::size_t k = 0; k < m; ++k) trial[k + 1] = nu[k + 1] + lambda * step[k];
            auto trial_res = interior_residual<Real>(grid, trial);
            const double trial_norm = max_abs(trial_res);
            if (trial_norm < res_norm) {
                nu.swap(trial);
                residual = std::move(trial_res);
                res_norm = trial_norm;
                accepted = true;
                break;
            }
            lambda /= 2;
        }
        if (!accepted) break;  // rounding floor reached
    }

    std::vector<double> nu_d(nu.begin(), nu.end());
    res_norm = max_abs(interior_residual<double>(grid, nu_d));

    if (res_norm > opts.tol)
        throw SolverError("painleve: Newton did not reach tol after " + std::to_string(iter) +
                              " iterations (residual " + format_number(res_norm) + ")",
                          res_norm);

    PainleveSolution sol(std::move(grid), std::move(nu_d), res_norm, opts.tail_terms, iter);
    sol.validate(opts.tol);
    return sol;
}

PainleveSolution solve_hastings_mcleod(double y_min, double y_max, std::size_t n_nodes, double tol) {
    PainleveOptions opts;
    opts.y_min = y_min;
    opts.y_max = y_max;
    opts.n_nodes = n_nodes;
    opts.tol = tol;
    return solve_hastings_mcleod(opts);
}

std::vector<double> w0_eval(const PainleveSolution& sol) {
    const auto nu = sol.nu0();
    std::vector<double> w(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i) w[i] = 3.0 * nu[i] * nu[i] - sol.grid()[i];
    return w;
}

PotentialMinimum w0_min(const PainleveSolution& sol) {
    const auto w = w0_eval(sol);
    const auto it = std::min_element(w.begin(), w.end());
    auto i = static_cast<std::size_t>(std::distance(w.begin(), it));
    PotentialMinimum out{sol.grid()[i], w[i]};
    if (i > 0 && i + 1 < w.size()) {
        const double hm = sol.grid().spacing(i - 1);
        const double hp = sol.grid().spacing(i);
        // quadratic through the three samples, offsets -hm, 0, hp
        const double s1 = (w[i + 1] - w[i]) / hp;
        const double s0 = (w[i] - w[i - 1]) / hm;
        const double curv = 2.0 * (s1 - s0) / (hm + hp);
        const double slope = (s0 * hp + s1 * hm) / (hm + hp);
        if (curv > 0.0) {
            const double dx = -slope / curv;
            out.location = sol.grid()[i] + dx;
            out.value = w[i] + slope * dx + 0.5 * curv * dx * dx;
        }
    }
    if (!(out.value > 0.0))
        throw SolverError("painleve: W0 minimum is not positive; nu0 is corrupted");
    return out;
}

CsvTable painleve_table(const PainleveSolution& sol) {
    CsvTable t({"y", "nu0", "dnu0", "W0"});
    const auto w = w0_eval(sol);
    for (std::size_t i = 0; i < sol.grid().size(); ++i)
        t.add_row({sol.grid()[i], sol.nu0()[i], sol.dnu0()[i], w[i]});
    return t;
}

}  // namespace tfp
