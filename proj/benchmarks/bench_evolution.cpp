#include <benchmark/benchmark.h>

#include "fiberphase/evolution_engine.hpp"
#include "fiberphase/fock_phases.hpp"
#include "fiberphase/harness.hpp"

namespace {

using namespace fiberphase;

void BM_UnitaryStep(benchmark::State& state) {
  const SpinTriple s = spin1_matrices();
  const Vec3 h(0.3, -0.2, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(unitary_step(h, 1e-3, s));
}
BENCHMARK(BM_UnitaryStep);

void BM_HelicityEigenstates(benchmark::State& state) {
  const SpinTriple s = spin1_matrices();
  const Vec3 k = Vec3(0.3, -0.2, 0.9).normalized();
  for (auto _ : state) benchmark::DoNotOptimize(helicity_eigenstates(k, s));
}
BENCHMARK(BM_HelicityEigenstates);

void BM_Evolve(benchmark::State& state) {
  const SpinTriple s = spin1_matrices();
  const auto n = static_cast<std::size_t>(state.range(0));
  const FiberPath path = helix_path(kPi / 3.0, 1.0, 1.0, 1.0, n);
  for (auto _ : state) benchmark::DoNotOptimize(evolve(path, s, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Evolve)->RangeMultiplier(4)->Range(1024, 65536)->Unit(benchmark::kMillisecond);

void BM_PhaseDecomposition(benchmark::State& state) {
  const SpinTriple s = spin1_matrices();
  const FiberPath path = helix_path(kPi / 3.0, 1.0, 1.0, 1.0, 4096);
  const SpinorTrajectory tr = evolve(path, s, 1);
  for (auto _ : state) benchmark::DoNotOptimize(phase_decomposition(tr, path, s));
}
BENCHMARK(BM_PhaseDecomposition)->Unit(benchmark::kMillisecond);

void BM_InvariantResidualSweep(benchmark::State& state) {
  const SpinTriple s = spin1_matrices();
  const FiberPath path = helix_path(kPi / 3.0, 1.0, 1.0, 1.0, 4096);
  for (auto _ : state) {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) worst = std::max(worst, invariant_residual(path, s, i));
    benchmark::DoNotOptimize(worst);
  }
}
BENCHMARK(BM_InvariantResidualSweep)->Unit(benchmark::kMillisecond);

void BM_PhaseSpectrum(benchmark::State& state) {
  const FockLadder ladder(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(phase_spectrum(ladder, kPi / 3.0));
}
BENCHMARK(BM_PhaseSpectrum)->Arg(8)->Arg(64);

void BM_SimulateHelixScenario(benchmark::State& state) {
  Scenario sc;
  sc.helix = HelixSpec{};
  sc.n_steps = 4096;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(sc));
}
BENCHMARK(BM_SimulateHelixScenario)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
