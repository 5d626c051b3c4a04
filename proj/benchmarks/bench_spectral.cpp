#include <benchmark/benchmark.h>

#include <cmath>

#include "rtmix/spectral.hpp"

using namespace rtmix::spectral;

namespace {

RealField smooth(int n) {
  const PeriodicGrid g(n);
  RealField f(g);
  for (int j = 0; j < n; ++j) f[j] = std::exp(std::sin(g.node(j)));
  return f;
}

void BM_ForwardInverse(benchmark::State& state) {
  const RealField f = smooth(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(inverse(dft(f)));
}
BENCHMARK(BM_ForwardInverse)->RangeMultiplier(2)->Range(64, 2048);

void BM_Hilbert(benchmark::State& state) {
  const RealField f = smooth(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hilbert(f));
}
BENCHMARK(BM_Hilbert)->RangeMultiplier(2)->Range(64, 2048);

void BM_DealiasedProduct(benchmark::State& state) {
  const RealField f = smooth(static_cast<int>(state.range(0)));
  const RealField g = hilbert(f);
  for (auto _ : state) benchmark::DoNotOptimize(pointwise_product(f, g, Dealias::on));
}
BENCHMARK(BM_DealiasedProduct)->RangeMultiplier(2)->Range(64, 2048);

}  // namespace
