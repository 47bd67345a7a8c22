// Serial vs OpenMP coupling kernels, and one RK4 step through the dispatcher.

#include <benchmark/benchmark.h>

#include <vector>

#include "relkura/dynamics.hpp"
#include "relkura/kernels.hpp"
#include "relkura/rng.hpp"

namespace {

struct Inputs {
  explicit Inputs(std::size_t n)
      : theta(relkura::rng::uniform_vector(7, 2, n, -1.5, 1.5)),
        nu(relkura::rng::uniform_vector(7, 1, n, -0.15, 0.15)),
        out(n) {}
  std::vector<double> theta, nu, out;
};

void BM_CouplingSerial(benchmark::State& state) {
  Inputs in(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    relkura::kernels::coupling_drive_serial(in.theta, in.nu, 1.0, in.out);
    benchmark::DoNotOptimize(in.out.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_CouplingParallel(benchmark::State& state) {
  Inputs in(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    relkura::kernels::coupling_drive_parallel(in.theta, in.nu, 1.0, in.out);
    benchmark::DoNotOptimize(in.out.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_MomentumSerial(benchmark::State& state) {
  Inputs in(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    relkura::kernels::momentum_coupling_serial(in.theta, in.nu, 1.0, in.out);
    benchmark::DoNotOptimize(in.out.data());
  }
}

void BM_MomentumParallel(benchmark::State& state) {
  Inputs in(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    relkura::kernels::momentum_coupling_parallel(in.theta, in.nu, 1.0, in.out);
    benchmark::DoNotOptimize(in.out.data());
  }
}

void BM_Rk4StepRelativistic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Inputs in(n);
  relkura::SystemConfig config;
  config.n = n;
  config.omega = in.nu;
  config.model = relkura::FrequencyResponse(relkura::ModelKind::RelativisticFull, 1.0);
  relkura::PhaseState s{0.0, in.theta};
  for (auto _ : state) {
    s = relkura::rk4_step(config, s);
    benchmark::DoNotOptimize(s.theta.data());
  }
}

}  // namespace

BENCHMARK(BM_CouplingSerial)->RangeMultiplier(4)->Range(16, 4096);
BENCHMARK(BM_CouplingParallel)->RangeMultiplier(4)->Range(16, 4096);
BENCHMARK(BM_MomentumSerial)->RangeMultiplier(4)->Range(16, 4096);
BENCHMARK(BM_MomentumParallel)->RangeMultiplier(4)->Range(16, 4096);
BENCHMARK(BM_Rk4StepRelativistic)->Arg(10)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
