#include <benchmark/benchmark.h>

#include <amplitude_lab/amplitudes.hpp>
#include <amplitude_lab/random.hpp>

using namespace amplitude_lab;

namespace {

void BM_TransitionAmplitude(benchmark::State& state) {
  const Index n = state.range(0);
  Sampler rng(21);
  const BlockAlgebra a = make_algebra({n, n / 2 + 1});
  const Functional phi = rng.state(a), psi = rng.state(a);
  for (auto _ : state) benchmark::DoNotOptimize(transition_amplitude(phi, psi));
  state.SetComplexityN(n);
}
BENCHMARK(BM_TransitionAmplitude)->RangeMultiplier(2)->Range(2, 128)->Complexity();

void BM_Fidelity(benchmark::State& state) {
  const Index n = state.range(0);
  Sampler rng(22);
  const BlockAlgebra a = make_algebra({n});
  const Functional phi = rng.state(a), psi = rng.state(a);
  for (auto _ : state) benchmark::DoNotOptimize(uhlmann_fidelity(phi, psi));
}
BENCHMARK(BM_Fidelity)->RangeMultiplier(2)->Range(2, 128);

void BM_InequalitySuite(benchmark::State& state) {
  const Index n = state.range(0);
  Sampler rng(23);
  const BlockAlgebra a = make_algebra({n});
  const Functional phi = rng.state(a, true), psi = rng.state(a, true);
  for (auto _ : state) benchmark::DoNotOptimize(inequality_suite(phi, psi));
}
BENCHMARK(BM_InequalitySuite)->RangeMultiplier(2)->Range(2, 32);

void BM_Purify(benchmark::State& state) {
  const Index n = state.range(0);
  Sampler rng(24);
  const Functional phi = rng.state(make_algebra({n}));
  for (auto _ : state) benchmark::DoNotOptimize(purify(phi));
}
BENCHMARK(BM_Purify)->DenseRange(2, 8, 2);

}  // namespace
