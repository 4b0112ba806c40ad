#include <benchmark/benchmark.h>

#include "nudd/evolve.hpp"
#include "nudd/experiment.hpp"

namespace {

using namespace nudd;

void BM_HermEig32(benchmark::State& state) {
  const SpinBathModel m = build_model(5, 1);
  for (auto _ : state) benchmark::DoNotOptimize(herm_eig(m.h_full));
}
BENCHMARK(BM_HermEig32);

void BM_Flatten(benchmark::State& state) {
  const auto schedule = LayeredSchedule::uniform({Control::Xphi, Control::X1, Control::X0},
                                                 static_cast<int>(state.range(0)), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(flatten(schedule));
}
BENCHMARK(BM_Flatten)->Arg(4)->Arg(10);

void BM_ThreeLayerRun(benchmark::State& state) {
  const auto basis = default_basis();
  const SpinBathModel m = build_model(5, 2);
  const auto sys = SystemState::pair(Complex(0.6, 0.0), Complex(0.0, 0.8), basis);
  const auto schedule = LayeredSchedule::uniform({Control::Xphi, Control::X1, Control::X0},
                                                 static_cast<int>(state.range(0)), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(run_once(m, schedule, sys, 3, basis));
  state.SetItemsProcessed(state.iterations() * flatten(schedule).events.size());
}
BENCHMARK(BM_ThreeLayerRun)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_PartialTrace(benchmark::State& state) {
  const CVec psi = haar_state(32, 4);
  for (auto _ : state) benchmark::DoNotOptimize(reduced_density(psi, 4, 8));
}
BENCHMARK(BM_PartialTrace);

}  // namespace
BENCHMARK_MAIN();
