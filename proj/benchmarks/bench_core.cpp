#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "tfp/corrections.hpp"
#include "tfp/groundstate.hpp"
#include "tfp/painleve.hpp"
#include "tfp/spectrum.hpp"
#include "tfp/tridiagonal.hpp"

namespace {

tfp::TridiagonalOperator random_operator(std::size_t n) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> off(n - 1), diag(n);
    for (auto& x : off) x = u(rng);
    for (auto& x : diag) x = 4.0 + u(rng);
    return {off, diag, off, true};
}

const tfp::PainleveSolution& painleve() {
    static const auto sol = tfp::solve_hastings_mcleod();
    return sol;
}

}  // namespace

static void BM_TridiagonalSolve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto op = random_operator(n);
    const std::vector<double> rhs(n, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(tfp::solve_tridiagonal(op, rhs));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TridiagonalSolve)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

static void BM_PainleveSolve(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(tfp::solve_hastings_mcleod());
}
BENCHMARK(BM_PainleveSolve)->Unit(benchmark::kMillisecond);

static void BM_SturmSmallest(benchmark::State& state) {
    const auto op = tfp::assemble_M0(painleve());
    for (auto _ : state) benchmark::DoNotOptimize(tfp::eig_smallest(op, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_SturmSmallest)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_GroundState(benchmark::State& state) {
    const auto& sol = painleve();
    const auto set = tfp::build_corrections(sol, 1, 2);
    tfp::GroundStateOptions o;
    o.painleve = &sol;
    o.corrections = &set;
    const double eps = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(tfp::solve_ground_state(eps, 1, tfp::radial_grid(), o));
}
BENCHMARK(BM_GroundState)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
