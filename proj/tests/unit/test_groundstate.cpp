#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "reference.hpp"
#include "tfp/error.hpp"
#include "tfp/groundstate.hpp"

using namespace tfp;

namespace {

GroundState solve_seeded(double eps, int d, std::size_t n = 20001) {
    GroundStateOptions o;
    o.painleve = &fixture::painleve();
    o.corrections = &fixture::corrections(d);
    return solve_ground_state(eps, d, radial_grid(2.5, n), o);
}

}  // namespace

TEST_CASE("Thomas-Fermi profile") {
    CHECK(thomas_fermi(0.0) == 1.0);
    CHECK(thomas_fermi(1.0) == 0.0);
    CHECK(thomas_fermi(2.0) == 0.0);
    CHECK(thomas_fermi(0.6) == doctest::Approx(0.8));
}

TEST_CASE("energy functional quadrature") {
    const auto g = radial_grid(2.5, 20001);
    CHECK(energy_functional(0.1, 2, g, std::vector<double>(g.size(), 0.0)) == 0.0);
    std::vector<double> tf(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) tf[i] = thomas_fermi(g[i]);
    CHECK(energy_functional(0.0, 1, g, tf) == doctest::Approx(oracle::tf_energy_d1).epsilon(1e-7));
    CHECK(energy_functional(0.0, 2, g, tf) == doctest::Approx(oracle::tf_energy_d2).epsilon(1e-7));
    CHECK(energy_functional(0.0, 3, g, tf) == doctest::Approx(oracle::tf_energy_d3).epsilon(1e-7));
}

TEST_CASE("converged ground states satisfy their invariants") {
    for (int d = 1; d <= 3; ++d) {
        CAPTURE(d);
        const auto gs = solve_seeded(0.05, d);
        CHECK(gs.residual_max <= 1e-9);
        CHECK(ground_state_residual_max(gs.eps, gs.d, gs.grid, gs.eta) == doctest::Approx(gs.residual_max));
        CHECK_NOTHROW(gs.validate(1e-9));
        CHECK(*std::max_element(gs.eta.begin(), gs.eta.end()) <= 1.0 + 1e-8);
        for (std::size_t i = 0; i + 1 < gs.eta.size(); ++i) {
            CHECK(gs.eta[i] > 0.0);
            if (gs.grid[i] >= 1.0) CHECK(gs.eta[i + 1] < gs.eta[i]);
        }
        std::vector<double> seed(gs.grid.size());
        for (std::size_t i = 0; i < seed.size(); ++i) seed[i] = smoothed_thomas_fermi(gs.eps, gs.grid[i]);
        CHECK(gs.energy < energy_functional(gs.eps, d, gs.grid, seed));
        CHECK(gs.energy == doctest::Approx(energy(gs)));
    }
}

TEST_CASE("unseeded solve matches the seeded one") {
    const auto a = solve_seeded(0.1, 1);
    const auto b = solve_ground_state(0.1, 1, radial_grid(), 1e-9);
    double diff = 0.0;
    for (std::size_t i = 0; i < a.eta.size(); ++i) diff = std::max(diff, std::abs(a.eta[i] - b.eta[i]));
    CHECK(diff <= 1e-8);
}

TEST_CASE("outer envelope for d = 1") {
    const auto gs = solve_seeded(0.05, 1);
    const double e13 = std::cbrt(0.05);
    for (std::size_t i = 0; i < gs.grid.size(); ++i) {
        const double r = gs.grid[i];
        if (r >= 1.2) CHECK(gs.eta[i] <= e13 * std::exp((1.0 - r * r) / (4.0 * e13 * e13)));
    }
}

TEST_CASE("centre deficit for d = 2 shrinks with eps") {
    double prev = 1.0;
    for (double eps : {0.1, 0.05, 0.025}) {
        const auto gs = solve_seeded(eps, 2);
        const double deficit = 1.0 - gs.eta[0];
        CHECK(deficit >= 0.0);
        CHECK(deficit <= 10.0 * std::cbrt(eps));
        CHECK(deficit < prev);
        prev = deficit;
    }
}

TEST_CASE("composite profile at the layer centre and in the bulk") {
    const auto& sol = fixture::painleve();
    const auto& set = fixture::corrections(1);
    const double eps = 0.05;
    const double e13 = std::cbrt(eps);
    const double lead = e13 * sol.nu0_at(0.0);
    CHECK(composite_eta(sol, set, eps, 1.0, 0) == doctest::Approx(lead).epsilon(1e-14));
    CHECK(std::abs(composite_eta(sol, set, eps, 1.0) / lead - 1.0) <= 5.0 * e13 * e13);
    const double d01 = composite_eta(sol, set, eps, 1.0, 1) - composite_eta(sol, set, eps, 1.0, 0);
    CHECK(std::abs(d01) == doctest::Approx(eps * std::abs(set.term_at(1, 0.0))).epsilon(1e-10));
    CHECK(std::abs(composite_eta(sol, set, 0.01, 0.0) - 1.0) <= 5.0 * 0.01 * 0.01);
    CHECK(composite_eta(sol, set, eps, 2.4) >= 0.0);
}

TEST_CASE("ground-state preconditions") {
    CHECK_THROWS_AS(solve_ground_state(0.6, 1, radial_grid(), 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(solve_ground_state(0.0, 1, radial_grid(), 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(solve_ground_state(0.1, 4, radial_grid(), 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(solve_ground_state(0.1, 1, radial_grid(1.5, 20001), 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(solve_ground_state(0.025, 1, radial_grid(2.5, 501), 1e-9), std::invalid_argument);
}

TEST_CASE("grid halving changes the profile at second order") {
    auto at_one = [](std::size_t n) {
        const auto gs = solve_ground_state(0.1, 1, radial_grid(2.5, n), 1e-9);
        return gs.eta[gs.grid.nearest(1.0)];
    };
    const double a = at_one(2501), b = at_one(5001), c = at_one(10001);
    CHECK(std::log2(std::abs(a - b) / std::abs(b - c)) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("remainder study bookkeeping") {
    CHECK(predicted_remainder_order(1, 2) == doctest::Approx(7.0 / 3.0));
    CHECK(predicted_remainder_order(3, 2) == doctest::Approx(5.0 / 3.0));
    const auto& sol = fixture::painleve();
    const auto& set = fixture::corrections(1);
    const std::vector<double> eps{0.05, 0.1, 0.025};
    StudyGrid cfg;
    const auto states = solve_ground_states(eps, 1, sol, set, cfg);
    REQUIRE(states.size() == 3);
    CHECK(states[0].eps == 0.025);
    const auto s0 = remainder_study(states, sol, set, 0);
    const auto s1 = remainder_study(states, sol, set, 1);
    REQUIRE(s0.rows.size() == 3);
    CHECK(s0.rows[0].eps == 0.1);
    CHECK(std::isnan(s0.rows[0].order));
    double prev = 1.0;
    for (std::size_t k = 0; k < 3; ++k) {
        const double ratio = s1.rows[k].err / s0.rows[k].err;
        CHECK(ratio < prev);
        prev = ratio;
    }
    CHECK_THROWS(remainder_study(states, sol, set, 3));
    const auto t = remainder_table(s1);
    CHECK(t.columns() == std::vector<std::string>{"eps", "err", "order"});
}

TEST_CASE("concurrent solves are bitwise identical to sequential ones") {
    const auto& sol = fixture::painleve();
    const auto& set = fixture::corrections(2);
    const std::vector<double> eps{0.1, 0.05, 0.025};
    StudyGrid seq, par;
    par.workers = 3;
    const auto a = solve_ground_states(eps, 2, sol, set, seq);
    const auto b = solve_ground_states(eps, 2, sol, set, par);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].eta == b[k].eta);
}

TEST_CASE("envelope report for d = 2") {
    const auto gs = solve_seeded(0.05, 2);
    const auto rep = envelope_check(gs);
    CHECK(rep.inner_gap_min >= 0.0);
    CHECK(rep.c_inner <= 10.0);
    CHECK(rep.c_outer <= 10.0);
    CHECK(rep.sup_compact > 0.0);
    const auto t = profile_table(gs, fixture::painleve(), fixture::corrections(2));
    CHECK(t.columns() == std::vector<std::string>{"r", "eta", "composite", "absdiff"});
}
