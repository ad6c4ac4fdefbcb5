#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "steklov/mode_solver.hpp"
#include "steklov/shooting.hpp"
#include "steklov/tridiagonal.hpp"
#include "steklov/warp_profile.hpp"

namespace {

using namespace steklov;

void condense(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> couplings(n - 1), excess(n);
    for (std::size_t i = 0; i < couplings.size(); ++i) couplings[i] = 1e3 * (1.5 + std::sin(0.1 * static_cast<double>(i)));
    for (std::size_t i = 0; i < excess.size(); ++i) excess[i] = 1e-3;
    for (auto _ : state) benchmark::DoNotOptimize(condense_chain(couplings, excess));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(condense)->RangeMultiplier(4)->Range(256, 65536)->Complexity(benchmark::oN);

void fem_plateau(benchmark::State& state) {
    const auto profile = make_plateau_family(1.0, 0.1, 10.0);
    const auto problem = make_mode_problem(profile, 2.0, make_grid(profile, static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(solve_mode(problem));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(fem_plateau)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oN);

void fem_revolution(benchmark::State& state) {
    const auto profile = make_revolution_plateau(1.0, 0.05, 1.0);
    const auto problem = make_mode_problem(profile, 2.0, make_grid(profile, static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(solve_mode(problem));
}
BENCHMARK(fem_revolution)->Arg(1024)->Arg(4096);

void shooting_plateau(benchmark::State& state) {
    const auto profile = make_plateau_family(1.0, 0.1, 10.0);
    const auto problem = make_mode_problem(profile, 2.0, make_grid(profile, 64));
    for (auto _ : state) benchmark::DoNotOptimize(solve_mode_shooting(problem));
}
BENCHMARK(shooting_plateau)->Unit(benchmark::kMillisecond);

void shooting_revolution(benchmark::State& state) {
    const auto profile = make_revolution_plateau(1.0, 0.05, 1.0);
    const auto problem = make_mode_problem(profile, 2.0, make_grid(profile, 64));
    for (auto _ : state) benchmark::DoNotOptimize(solve_mode_revolution_shooting(problem));
}
BENCHMARK(shooting_revolution)->Unit(benchmark::kMillisecond);

}  // namespace
