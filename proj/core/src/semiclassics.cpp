#include "tfp/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "tfp/error.hpp"
#include "tfp/spline.hpp"

namespace tfp {

namespace {

using Rule = boost::math::quadrature::gauss<double, 200>;

double bisect_root(const std::function<double(double)>& f, double a, double b) {
    // f(a) and f(b) have opposite signs
    double fa = f(a);
    for (int it = 0; it < 200 && std::abs(b - a) > 1e-12; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= std::min(a, b) || m >= std::max(a, b)) break;
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

PotentialProfile::PotentialProfile(std::function<double(double)> w, double lower, double upper,
                                   std::optional<double> well_location, std::size_t samples)
    : w_(std::move(w)), lower_(lower), upper_(upper) {
    if (!(upper > lower)) throw std::invalid_argument("PotentialProfile: empty range");
    if (samples < 3) throw std::invalid_argument("PotentialProfile: need at least 3 samples");
    std::vector<double> ys(samples), ws(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        ys[i] = lower + (upper - lower) * static_cast<double>(i) / static_cast<double>(samples - 1);
        ws[i] = w_(ys[i]);
    }
    const auto imin = static_cast<std::size_t>(std::min_element(ws.begin(), ws.end()) - ws.begin());

    monotone_left_ = true;
    for (std::size_t i = 0; i < imin; ++i)
        if (ws[i] < ws[i + 1]) monotone_left_ = false;
    monotone_right_ = true;
    for (std::size_t i = imin; i + 1 < samples; ++i)
        if (ws[i + 1] < ws[i]) monotone_right_ = false;

    if (well_location) {
        well_.location = *well_location;
    } else if (imin == 0 || imin + 1 == samples) {
        well_.location = ys[imin];
    } else {
        const auto r = boost::math::tools::brent_find_minima(w_, ys[imin - 1], ys[imin + 1], 52);
        well_.location = r.first;
    }
    well_.value = w_(well_.location);
    if (!(well_.location > lower_ && well_.location < upper_))
        throw std::domain_error("PotentialProfile: minimum on the boundary, not a well");
}

PotentialProfile PotentialProfile::simplified() {
    return PotentialProfile([](double y) { return y >= 0.0 ? 2.0 * y : -y; }, -1e3, 1e3, 0.0);
}

PotentialProfile PotentialProfile::from_painleve(const PainleveSolution& sol) {
    const auto m = w0_min(sol);
    auto w = [&sol](double y) {
        const double n = sol.nu0_at(y);
        return 3.0 * n * n - y;
    };
    return PotentialProfile(w, sol.grid().front(), sol.grid().back(), m.location, sol.grid().size());
}

PotentialProfile PotentialProfile::from_samples(const Grid1D& grid, std::span<const double> values) {
    CubicSpline s(grid, values);
    return PotentialProfile([s](double y) { return s(y); }, grid.front(), grid.back(), std::nullopt, grid.size());
}

std::pair<double, double> turning_points(const PotentialProfile& w, double mu) {
    const auto& well = w.well_min();
    if (!(mu > well.value)) throw std::domain_error("turning_points: energy below the well bottom");
    if (!(mu < w(w.lower())) || !(mu < w(w.upper())))
        throw std::domain_error("turning_points: energy " + std::to_string(mu) + " above the profile ceiling");
    auto f = [&](double y) { return w(y) - mu; };
    return {bisect_root(f, w.lower(), well.location), bisect_root(f, well.location, w.upper())};
}

double action(const PotentialProfile& w, double mu) {
    const auto [ym, yp] = turning_points(w, mu);
    const double y0 = w.well_min().location;
    auto branch = [&](double yt) {
        const double span = yt - y0;
        auto f = [&](double u) {
            const double y = yt - span * u * u;
            return std::sqrt(std::max(0.0, mu - w(y))) * 2.0 * std::abs(span) * u;
        };
        return Rule::integrate(f, 0.0, 1.0);
    };
    return branch(ym) + branch(yp);
}

double solve_action(const PotentialProfile& w, double target) {
    if (!(target > 0.0)) throw std::invalid_argument("solve_action: target must be positive");
    const double lo = w.well_min().value;
    const double cap = w.ceiling();
    auto f = [&](double mu) { return action(w, mu) - target; };

    double step = 1.0;
    double hi = lo + step;
    double f_hi = 0.0;
    for (;;) {
        if (hi >= cap) hi = lo + (cap - lo) * (1.0 - 1e-12);
        f_hi = f(hi);
        if (f_hi > 0.0) break;
        if (hi >= lo + (cap - lo) * (1.0 - 1e-11)) throw SolverError("solve_action: bracket failure (action below target at ceiling)");
        step *= 2.0;
        hi = lo + step;
    }
    std::uintmax_t max_iter = 200;
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, -target, f_hi,
                                                     boost::math::tools::eps_tolerance<double>(52), max_iter);
    return 0.5 * (r.first + r.second);
}

double bs_eigenvalue(const PotentialProfile& w, int n) {
    if (n < 1) throw std::invalid_argument("bs_eigenvalue: n must be >= 1");
    return solve_action(w, std::numbers::pi * (2.0 * n - 1.0));
}

PotentialProfile lplus_profile(const GroundState& gs) {
    std::vector<double> v(gs.grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = gs.grid[i];
        v[i] = 3.0 * gs.eta[i] * gs.eta[i] - 1.0 + x * x;
    }
    return PotentialProfile::from_samples(gs.grid, v);
}

XRuleResult bs_rule_x(const GroundState& gs, int n) {
    if (gs.d != 1) throw std::invalid_argument("bs_rule_x: d = 1 ground state required");
    if (n < 1) throw std::invalid_argument("bs_rule_x: n must be >= 1");
    const auto profile = lplus_profile(gs);
    XRuleResult r;
    r.lambda = solve_action(profile, gs.eps * std::numbers::pi * (n - 0.5));
    r.scaled = r.lambda / std::cbrt(gs.eps * gs.eps);
    std::tie(r.x_minus, r.x_plus) = turning_points(profile, r.lambda);
    return r;
}

std::vector<BsRow> bs_comparison(const PotentialProfile& w, std::span<const double> mu_m0) {
    std::vector<BsRow> rows;
    for (std::size_t i = 0; i < mu_m0.size(); ++i) {
        BsRow r;
        r.n = static_cast<int>(i + 1);
        r.mu_bs = bs_eigenvalue(w, r.n);
        r.mu_m0 = mu_m0[i];
        r.rel_err = std::abs(r.mu_bs - r.mu_m0) / r.mu_m0;
        rows.push_back(r);
    }
    return rows;
}

CsvTable bs_table(std::span<const BsRow> rows) {
    CsvTable t({"n", "mu_bs", "mu_m0", "rel_err"});
    for (const auto& r : rows) t.add_row({static_cast<double>(r.n), r.mu_bs, r.mu_m0, r.rel_err});
    return t;
}

}  // namespace tfp
