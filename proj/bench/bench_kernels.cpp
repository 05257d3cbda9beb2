// Serial reference kernels against their OpenMP counterparts.

#include <cmath>

#include <benchmark/benchmark.h>

#include "ltl/densities.hpp"
#include "ltl/kernels.hpp"
#include "ltl/repchar.hpp"

namespace {

using namespace ltl;

// A2 weight multiplicities of V_{w1}^{(x) n}, the left operand of the next step.
MultiplicityMap a2_power(unsigned long n) {
  static const auto rs = make_root_system(parse_cartan_type("A2"));
  return convolution_power(freudenthal_multiplicities(*rs, Weight{1, 0}), n);
}

void BM_ConvolveSerial(benchmark::State& state) {
  const auto a = a2_power(static_cast<unsigned long>(state.range(0)));
  const auto b = a2_power(static_cast<unsigned long>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::convolve_serial(a, b));
}

void BM_ConvolveParallel(benchmark::State& state) {
  const auto a = a2_power(static_cast<unsigned long>(state.range(0)));
  const auto b = a2_power(static_cast<unsigned long>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::convolve_parallel(a, b));
}

const DensityModel& a2_eta() {
  static const DensityModel model(make_root_system(parse_cartan_type("A2")), DensityKind::eta_extended);
  return model;
}

kernels::Grid square(std::size_t cells) { return {{-8.0, -8.0}, {8.0, 8.0}, {cells, cells}}; }

void BM_MidpointSerial(benchmark::State& state) {
  const auto grid = square(static_cast<std::size_t>(state.range(0)));
  const kernels::Integrand f = [](std::span<const double> x) { return a2_eta()(x); };
  for (auto _ : state) benchmark::DoNotOptimize(kernels::midpoint_serial(f, grid));
}

void BM_MidpointParallel(benchmark::State& state) {
  const auto grid = square(static_cast<std::size_t>(state.range(0)));
  const kernels::Integrand f = [](std::span<const double> x) { return a2_eta()(x); };
  for (auto _ : state) benchmark::DoNotOptimize(kernels::midpoint_parallel(f, grid));
}

void BM_CellIntegralsSerial(benchmark::State& state) {
  const auto grid = square(static_cast<std::size_t>(state.range(0)));
  const kernels::Integrand f = [](std::span<const double> x) { return a2_eta()(x); };
  for (auto _ : state) benchmark::DoNotOptimize(kernels::cell_integrals_serial(f, grid, 4));
}

void BM_CellIntegralsParallel(benchmark::State& state) {
  const auto grid = square(static_cast<std::size_t>(state.range(0)));
  const kernels::Integrand f = [](std::span<const double> x) { return a2_eta()(x); };
  for (auto _ : state) benchmark::DoNotOptimize(kernels::cell_integrals_parallel(f, grid, 4));
}

}  // namespace

BENCHMARK(BM_ConvolveSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolveParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MidpointSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MidpointParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CellIntegralsSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CellIntegralsParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
