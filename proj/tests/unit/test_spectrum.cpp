#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dense.hpp"
#include "fixtures.hpp"
#include "tfp/error.hpp"
#include "tfp/spectrum.hpp"

using namespace tfp;

namespace {

constexpr double pi = std::numbers::pi;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

TridiagonalOperator random_symmetric(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> off(n - 1), diag(n);
    for (auto& x : off) x = u(rng);
    for (auto& x : diag) x = 4.0 * u(rng);
    return {off, diag, off, true};
}

const GroundState& state(double eps) {
    static std::vector<GroundState> cache;
    for (const auto& gs : cache)
        if (gs.eps == eps) return gs;
    GroundStateOptions o;
    o.painleve = &fixture::painleve();
    o.corrections = &fixture::corrections(1);
    cache.reserve(8);
    cache.push_back(solve_ground_state(eps, 1, radial_grid(), o));
    return cache.back();
}

}  // namespace

TEST_CASE("constant potential reproduces the discrete and continuum sine spectrum") {
    const std::size_t n = 8001;
    const auto g = Grid1D::uniform(0.0, pi, n);
    const double c = 0.75;
    const auto op = assemble_dirichlet(g, 4.0, std::vector<double>(n, c));
    const auto rep = eig_smallest(op, 5);
    const double h = g.step();
    for (int k = 1; k <= 5; ++k) {
        const double discrete = 4.0 * 4.0 / (h * h) * std::pow(std::sin(k * h / 2.0), 2) + c;
        // bisection resolves to a few ulp of the 8/h^2 diagonal
        CHECK(std::abs(rep.eigenvalues[k - 1] - discrete) <= 1e-7);
        const double exact = 4.0 * k * k + c;
        CHECK(std::abs(rep.eigenvalues[k - 1] - exact) <= 4.0 * k * k * (k * h) * (k * h) / 12.0 * 1.01);
    }
}

TEST_CASE("Dirichlet Laplacian converges at second order") {
    std::vector<double> err;
    for (std::size_t n : {201u, 401u, 801u}) {
        const auto g = Grid1D::uniform(0.0, pi, n);
        const auto rep = eig_smallest(assemble_dirichlet(g, 1.0, std::vector<double>(n, 0.0)), 3);
        double e = 0.0;
        for (int k = 1; k <= 3; ++k) e = std::max(e, std::abs(rep.eigenvalues[k - 1] - k * k));
        err.push_back(e);
    }
    CHECK(std::log2(err[0] / err[1]) == doctest::Approx(2.0).epsilon(0.05));
    CHECK(std::log2(err[1] / err[2]) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("Sturm count agrees with the dense spectrum") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto op = random_symmetric(60, seed);
        const auto ev = oracle::dense_eigenvalues(op);
        for (double lambda : {-5.0, -1.3, 0.0, 0.7, 2.9, 6.0}) {
            const auto below = static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(),
                                                                      [&](double e) { return e < lambda; }));
            CHECK(sturm_count(op, lambda) == below);
        }
        const auto [lo, hi] = gershgorin_bounds(op);
        CHECK(lo <= ev.front());
        CHECK(hi >= ev.back());
    }
}

TEST_CASE("bisection matches a dense eigensolver on 200-node instances") {
    for (std::uint64_t seed = 11; seed <= 13; ++seed) {
        const auto op = random_symmetric(200, seed);
        const auto ev = oracle::dense_eigenvalues(op);
        const auto rep = eig_smallest(op, 10);
        for (std::size_t k = 0; k < 10; ++k) CHECK(std::abs(rep.eigenvalues[k] - ev[k]) <= 1e-9);
    }
    const auto& sol = fixture::painleve();
    const auto g = Grid1D::uniform(-8.0, 8.0, 200);
    std::vector<double> w(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) w[i] = 3.0 * std::pow(sol.nu0_at(g[i]), 2) - g[i];
    const auto op = assemble_dirichlet(g, 4.0, w);
    const auto ev = oracle::dense_eigenvalues(op);
    const auto rep = eig_smallest(op, 10);
    for (std::size_t k = 0; k < 10; ++k) CHECK(std::abs(rep.eigenvalues[k] - ev[k]) <= 1e-9);
}

TEST_CASE("eigenvectors are orthonormal eigenpairs") {
    const auto op = random_symmetric(150, 99);
    const auto rep = eig_smallest(op, 6, true, 2);
    REQUIRE(rep.eigenvectors.size() == 6);
    for (std::size_t a = 0; a < 6; ++a) {
        const auto& v = rep.eigenvectors[a];
        const auto av = op.apply(v);
        double r = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) r = std::max(r, std::abs(av[i] - rep.eigenvalues[a] * v[i]));
        CHECK(r <= 1e-10);
        CHECK(dot(v, v) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(*std::max_element(v.begin(), v.end()) >= -*std::min_element(v.begin(), v.end()));
        for (std::size_t b = 0; b < a; ++b) CHECK(std::abs(dot(v, rep.eigenvectors[b])) <= 1e-9);
    }
}

TEST_CASE("eigensolver rejections") {
    CHECK_THROWS(eig_smallest(random_symmetric(10, 1), 11));
    TridiagonalOperator skew({1.0, 1.0}, {0.0, 0.0, 0.0}, {2.0, 2.0}, false);
    CHECK_THROWS(eig_smallest(skew, 1));
    const auto gs2 = solve_ground_state(0.1, 2, radial_grid(), 1e-9);
    CHECK_THROWS_AS(assemble_Lplus(gs2, BoundaryCondition::Neumann), std::invalid_argument);
}

TEST_CASE("M0 spectrum lies above the potential minimum") {
    const auto& sol = fixture::painleve();
    const auto op = assemble_M0(sol);
    CHECK(op.symmetric);
    CHECK(op.sub == op.super);
    const double wmin = w0_min(sol).value;
    for (double x : op.diag) CHECK(x >= wmin);
    const auto rep = m0_spectrum(sol, 8);
    CHECK(rep.op == OperatorTag::M0);
    CHECK(rep.eigenvalues.front() > wmin);
    CHECK_NOTHROW(rep.validate());
    for (std::size_t k = 1; k < rep.eigenvalues.size(); ++k) CHECK(rep.eigenvalues[k] > rep.eigenvalues[k - 1]);
}

TEST_CASE("M0 eigenfunctions decay") {
    const auto& sol = fixture::painleve();
    const auto rep = m0_spectrum(sol, 8, true);
    const auto cert = decay_check(rep, sol);
    REQUIRE(cert.size() == 8);
    CHECK(cert[0].c_value <= 10.0);
    for (std::size_t m = 1; m < cert.size(); ++m) {
        CHECK(std::isfinite(cert[m].c_value));
        CHECK(std::isfinite(cert[m].c_derivative));
        CHECK(cert[m].c_value >= cert[m - 1].c_value);
    }
}

TEST_CASE("L+ potential shape") {
    const auto& gs = state(0.05);
    const auto v = lplus_potential(gs);
    CHECK(v.front() == doctest::Approx(2.0).epsilon(0.01));
    int minima = 0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (v[i] < v[i - 1] && v[i] <= v[i + 1]) ++minima;
    CHECK(minima == 1);
    CHECK(w_eps_transcription_error(gs) <= 1e-10);
    const double e23 = std::cbrt(0.05 * 0.05);
    CHECK(w_eps_deviation(gs, fixture::painleve()) <= 10.0 * e23);
}

TEST_CASE("full-line spectrum interleaves the half-line ones") {
    const auto& gs = state(0.1);
    const auto neu = lplus_spectrum(gs, BoundaryCondition::Neumann, 4);
    const auto dir = lplus_spectrum(gs, BoundaryCondition::Dirichlet, 4);
    const auto full = lplus_spectrum(gs, BoundaryCondition::FullLine, 8);
    std::vector<double> merged = neu.eigenvalues;
    merged.insert(merged.end(), dir.eigenvalues.begin(), dir.eigenvalues.end());
    std::sort(merged.begin(), merged.end());
    for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(full.eigenvalues[k] - merged[k]) <= 1e-8);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(neu.eigenvalues[k] <= dir.eigenvalues[k]);
        CHECK(neu.scaled[k] == doctest::Approx(neu.eigenvalues[k] / std::cbrt(0.01)));
    }
    CHECK(neu.eps == 0.1);
    CHECK(neu.op == OperatorTag::LplusNeumann);
}

TEST_CASE("scaled L+ eigenvalues approach mu_1") {
    const auto& sol = fixture::painleve();
    const auto mu = m0_spectrum(sol, 2).eigenvalues;
    std::vector<GroundState> states{state(0.1), state(0.05), state(0.025)};
    const auto rows = scaling_study(states, mu, 2);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].eps == 0.1);
    CHECK(rows[0].n == 1);
    double prev_odd = 1e9, prev_even = 1e9;
    for (const auto& r : rows) {
        if (r.n != 1) continue;
        const double dev_odd = std::abs(r.scaled_odd - r.mu_n);
        const double dev_even = std::abs(r.scaled_even - r.mu_n);
        CHECK(dev_odd < prev_odd);
        CHECK(dev_even < prev_even);
        CHECK(dev_odd <= 10.0 * std::pow(r.eps, 2.0 / 3.0 - 0.1));
        prev_odd = dev_odd;
        prev_even = dev_even;
    }
    const auto t = scaling_table(rows);
    CHECK(t.columns() == std::vector<std::string>{"eps", "n", "lambda_odd", "lambda_even", "scaled_odd",
                                                  "scaled_even", "mu_n", "pair_gap"});
}
