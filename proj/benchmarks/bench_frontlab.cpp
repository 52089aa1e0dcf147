#include <benchmark/benchmark.h>

#include "frontlab/eigensolve.hpp"
#include "frontlab/fbsolver.hpp"
#include "frontlab/semiwave.hpp"

using namespace frontlab;

namespace {

const Nonlinearity kLogistic = Nonlinearity::logistic();

void BM_SemiwaveSlope(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(semiwave_slope(1.0, 0.0, kLogistic));
}
BENCHMARK(BM_SemiwaveSlope);

void BM_SolveCtilde(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(solve_ctilde(0.5, 2.0, kLogistic).c_tilde);
}
BENCHMARK(BM_SolveCtilde);

void BM_BetaStar(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(solve_beta_star(1.0, kLogistic));
}
BENCHMARK(BM_BetaStar);

void BM_PrincipalEigenvalue(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(principal_eigenvalue_value({3.0, 0.5, 1.0, 1.0, 1.0}));
}
BENCHMARK(BM_PrincipalEigenvalue);

void BM_EigenShooting(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(principal_eigenvalue_shooting({3.0, 0.5, 1.0, 1.0, 1.0}, {}));
}
BENCHMARK(BM_EigenShooting);

void BM_CriticalLength(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(critical_length_lstar(0.5, 1.0, 1.0, 1.0));
}
BENCHMARK(BM_CriticalLength);

void BM_PdeStep(benchmark::State& state) {
    const auto nx = static_cast<int>(state.range(0));
    const auto spec = make_problem(0.5, 1.0, 1.0, 0.0, 4.0, 1.0, kLogistic, nx);
    const auto s0 = FrontState::initial(spec);
    const double dt = stable_time_step(s0, spec);
    for (auto _ : state) benchmark::DoNotOptimize(step(s0, spec, dt));
    state.SetComplexityN(nx);
}
BENCHMARK(BM_PdeStep)->RangeMultiplier(2)->Range(100, 3200)->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
