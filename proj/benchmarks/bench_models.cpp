#include <benchmark/benchmark.h>

#include <cmath>

#include "rtmix/models.hpp"

using namespace rtmix;
using namespace rtmix::models;
using spectral::PeriodicGrid;
using spectral::RealField;

namespace {

RealField mode(const PeriodicGrid& g, double (*fn)(double), int k, double amp, double shift = 0.0) {
  RealField f(g);
  for (int j = 0; j < g.size(); ++j) f[j] = shift + amp * fn(k * g.node(j));
  return f;
}

const PhysParams kPhys{9.8, 0.0, 1.0, 1.5};
const ViscosityConfig kVisc{0.01, 3.0};

void BM_HRhs(benchmark::State& state) {
  const PeriodicGrid g(static_cast<int>(state.range(0)));
  const HState s{mode(g, std::sin, 3, 1.0), mode(g, std::cos, 2, 2.0), 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(h_rhs(s, kPhys, kVisc));
}
BENCHMARK(BM_HRhs)->RangeMultiplier(2)->Range(128, 1024);

void BM_HWaveRhs(benchmark::State& state) {
  const PeriodicGrid g(static_cast<int>(state.range(0)));
  const RealField h = mode(g, std::cos, 1, 0.1);
  const RealField ht = mode(g, std::sin, 1, 0.1, -1.0);
  for (auto _ : state) benchmark::DoNotOptimize(h_wave_rhs(h, ht, kPhys, kVisc, 0.0));
}
BENCHMARK(BM_HWaveRhs)->RangeMultiplier(2)->Range(128, 1024);

void BM_ZRhs(benchmark::State& state) {
  const PeriodicGrid g(static_cast<int>(state.range(0)));
  const ZState s{RealField(g), mode(g, std::sin, 1, 0.1), mode(g, std::cos, 1, 1.0)};
  for (auto _ : state) benchmark::DoNotOptimize(z_rhs(s, kPhys, kVisc));
}
BENCHMARK(BM_ZRhs)->RangeMultiplier(2)->Range(128, 1024);

}  // namespace
