#include <benchmark/benchmark.h>

#include <amplitude_lab/parallel.hpp>
#include <amplitude_lab/random.hpp>
#include <amplitude_lab/restriction.hpp>
#include <vector>

using namespace amplitude_lab;

namespace {

void BM_ProductChain(benchmark::State& state) {
  const Index sites = state.range(0);
  const unsigned threads = static_cast<unsigned>(state.range(1));
  const ProductChain pc = build_product_chain(sites);
  Sampler rng(31);
  const Functional phi = rng.state(pc.ambient), psi = rng.state(pc.ambient);
  for (auto _ : state) benchmark::DoNotOptimize(chain_amplitudes(phi, psi, pc.chain, threads));
}
BENCHMARK(BM_ProductChain)->ArgsProduct({{2, 4, 6, 8}, {1, 4}})->Unit(benchmark::kMillisecond);

void BM_LumpedChain(benchmark::State& state) {
  const auto atoms = static_cast<std::size_t>(state.range(0));
  std::vector<double> p(atoms), q(atoms);
  double pl = 1.0, ql = 1.0;
  for (std::size_t k = 0; k + 1 < atoms; ++k) {
    p[k] = 0.5 * pl;
    q[k] = 0.75 * ql;
    pl *= 0.5;
    ql *= 0.25;
  }
  p.back() = pl;
  q.back() = ql;
  const LumpedChain lc = build_lumped_diagonal_chain(p, q);
  for (auto _ : state) benchmark::DoNotOptimize(chain_amplitudes(lc.phi, lc.psi, lc.chain));
}
BENCHMARK(BM_LumpedChain)->RangeMultiplier(2)->Range(8, 256)->Unit(benchmark::kMillisecond);

}  // namespace
