#include <benchmark/benchmark.h>

#include <amplitude_lab/forms.hpp>
#include <amplitude_lab/random.hpp>

using namespace amplitude_lab;

namespace {

void BM_GeometricMean(benchmark::State& state) {
  const Index d = state.range(0);
  Sampler rng(11);
  const PositiveForm a(rng.density(d, d / 2 + 1)), b(rng.density(d));
  for (auto _ : state) benchmark::DoNotOptimize(geometric_mean(a, b));
  state.SetComplexityN(d);
}
BENCHMARK(BM_GeometricMean)->RangeMultiplier(2)->Range(2, 64)->Complexity();

// Left/right forms of a state on M_n live on ℂ^{n²}, so this is the cost
// of the amplitude kernel route end to end.
void BM_KernelMean(benchmark::State& state) {
  const Index n = state.range(0);
  Sampler rng(12);
  const BlockAlgebra a = make_algebra({n});
  const Functional phi = rng.state(a, true), psi = rng.state(a, true);
  for (auto _ : state) benchmark::DoNotOptimize(geometric_mean(left_form(phi), right_form(psi)));
}
BENCHMARK(BM_KernelMean)->DenseRange(2, 6, 2);

void BM_DominationCertificate(benchmark::State& state) {
  const Index d = state.range(0);
  Sampler rng(13);
  const PositiveForm a(rng.density(d)), b(rng.density(d));
  const PositiveForm g = geometric_mean(a, b);
  for (auto _ : state) benchmark::DoNotOptimize(domination_margin(g, a, b));
}
BENCHMARK(BM_DominationCertificate)->RangeMultiplier(2)->Range(2, 64);

}  // namespace
