#include <benchmark/benchmark.h>

#include "steklov/cross_section.hpp"
#include "steklov/spectrum.hpp"
#include "steklov/warp_profile.hpp"

namespace {

using namespace steklov;

void sphere_eigenvalues(benchmark::State& state) {
    const auto j_max = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sphere_spectrum(j_max, Normalization::unit_radius));
}
BENCHMARK(sphere_eigenvalues)->Arg(10)->Arg(100);

void plateau_spectrum(benchmark::State& state) {
    const auto profile = make_plateau_family(1.0, 0.1, 10.0);
    const auto cs = sphere_spectrum(40, Normalization::unit_radius);
    SolveOptions options;
    options.mesh = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(compute_spectrum(profile, cs, 20, options));
}
BENCHMARK(plateau_spectrum)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void cylinder_spectrum_shooting(benchmark::State& state) {
    const auto profile = make_cylinder(2.0);
    const auto cs = sphere_spectrum(20, Normalization::unit_radius);
    SolveOptions options;
    options.engine = Engine::shooting;
    for (auto _ : state) benchmark::DoNotOptimize(compute_spectrum(profile, cs, 10, options));
}
BENCHMARK(cylinder_spectrum_shooting)->Unit(benchmark::kMillisecond);

}  // namespace
