#include <benchmark/benchmark.h>

#include "pseudoherm/pseudoherm.hpp"

using namespace pseudoherm;

namespace {

PlantedMatrix planted(PlantedKind kind, int n) {
  Rng rng(static_cast<std::uint64_t>(n) * 31 + static_cast<std::uint64_t>(kind));
  return plant_random(kind, n, rng, true);
}

void BM_Eigensystem(benchmark::State& state) {
  const auto p = planted(PlantedKind::Paired, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(biorthonormal_eigensystem(p.h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Eigensystem)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_CanonicalTau(benchmark::State& state) {
  const auto sys = biorthonormal_eigensystem(planted(PlantedKind::Real, static_cast<int>(state.range(0))).h);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_tau(sys));
}
BENCHMARK(BM_CanonicalTau)->RangeMultiplier(2)->Range(4, 64);

void BM_Takagi(benchmark::State& state) {
  Rng rng(7);
  const ComplexMatrix c = random_symmetric_invertible(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(takagi(c));
}
BENCHMARK(BM_Takagi)->RangeMultiplier(2)->Range(2, 64);

void BM_MatrixExponential(benchmark::State& state) {
  const auto p = planted(PlantedKind::Paired, static_cast<int>(state.range(0)));
  const ComplexMatrix a = Complex(0.0, -0.7) * p.h;
  for (auto _ : state) benchmark::DoNotOptimize(matrix_exponential(a));
}
BENCHMARK(BM_MatrixExponential)->RangeMultiplier(2)->Range(4, 64);

void BM_EquivalenceReport(benchmark::State& state) {
  const auto p = planted(PlantedKind::Real, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(real_spectrum_equivalence_report(p.h));
}
BENCHMARK(BM_EquivalenceReport)->RangeMultiplier(2)->Range(4, 32);

void BM_PTLattice(benchmark::State& state) {
  const auto n = state.range(0);
  const auto spec = make_lattice(n, 10.0, 1.0, [](double x) { return x * x; }, [](double x) { return x * x * x; }, 0.1);
  const ComplexMatrix p = parity_matrix(n);
  for (auto _ : state) {
    const ComplexMatrix h = build_pt_hamiltonian(spec);
    const auto sys = biorthonormal_eigensystem(h);
    const auto cls = classify_spectrum(sys);
    benchmark::DoNotOptimize(eta_from_tau_pt(h, canonical_tau(pt_adapted_system(sys, cls, p)), p, 1e-9));
  }
}
BENCHMARK(BM_PTLattice)->Arg(21)->Arg(41)->Arg(81);

}  // namespace
BENCHMARK_MAIN();
