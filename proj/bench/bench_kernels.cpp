#include <benchmark/benchmark.h>

#include "srf/channel.hpp"
#include "srf/privacy.hpp"

using namespace srf;

namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_SampleF(benchmark::State& state) {
  const WorkingSpace ws = build_working_space(14, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_f_values(ws, 512, RngSeed{1}, exec_of(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_SampleF)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TwirlOracle(benchmark::State& state) {
  Rng rng = make_rng(RngSeed{2});
  const DensityMatrix rho = random_density_matrix(64, rng);
  const QuadratureSpec q = QuadratureSpec::defaults(6);
  for (auto _ : state) benchmark::DoNotOptimize(twirl_oracle(rho, q, exec_of(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_TwirlOracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_HaarMoments(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(haar_moment_check(8, 4096, RngSeed{3}, exec_of(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_HaarMoments)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FReduced(benchmark::State& state) {
  const WorkingSpace ws = build_working_space(8, 2.0);
  const PureState phi = random_pure_state(ws.k(), RngSeed{4});
  for (auto _ : state) benchmark::DoNotOptimize(f_eval(phi, ws));
}
BENCHMARK(BM_FReduced)->Unit(benchmark::kMicrosecond);

void BM_FFullSpace(benchmark::State& state) {
  const WorkingSpace ws = build_working_space(8, 2.0);
  const SchurTransform st = schur_transform(8);
  const PureState phi = random_pure_state(ws.k(), RngSeed{4});
  for (auto _ : state) benchmark::DoNotOptimize(f_via_full_space(phi, ws, st));
}
BENCHMARK(BM_FFullSpace)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
