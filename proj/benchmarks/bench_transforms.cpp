#include <benchmark/benchmark.h>

#include "lplab/lp_family.hpp"
#include "lplab/rng.hpp"

using namespace lplab;

namespace {

SampledField make_field(std::int64_t n_samples) {
  GridSpec g = make_grid(1, 64.0, n_samples);
  Rng rng(7);
  return random_band_limited(g, g.nyquist() / 4.0, rng);
}

void bm_roundtrip(benchmark::State& state) {
  SampledField f = make_field(state.range(0));
  for (auto _ : state) {
    SampledField back = SampledField::from_spectrum(
        f.grid(), std::vector<cplx>(f.spectrum().begin(), f.spectrum().end()));
    benchmark::DoNotOptimize(back.values().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_roundtrip)->Arg(1 << 16)->Arg(1 << 20);

void bm_translate_fractional(benchmark::State& state) {
  SampledField f = make_field(state.range(0));
  for (auto _ : state) {
    SampledField t = translate(f, 0.333);
    benchmark::DoNotOptimize(t.values().data());
  }
}
BENCHMARK(bm_translate_fractional)->Arg(1 << 16)->Arg(1 << 20);

void bm_translate_lattice(benchmark::State& state) {
  SampledField f = make_field(state.range(0));
  double y = 128.0 * f.grid().spacing();
  for (auto _ : state) {
    SampledField t = translate(f, y);
    benchmark::DoNotOptimize(t.values().data());
  }
}
BENCHMARK(bm_translate_lattice)->Arg(1 << 16)->Arg(1 << 20);

void bm_band(benchmark::State& state) {
  SampledField f = make_field(state.range(0));
  GridSpec g = f.grid();
  int jmax = static_cast<int>(std::floor(std::log2(g.nyquist()))) - 1;
  LPFamily fam = build_family(g, jmax, 0.1);
  for (auto _ : state) {
    SampledField b = band(f, jmax - 1, fam);
    benchmark::DoNotOptimize(b.values().data());
  }
}
BENCHMARK(bm_band)->Arg(1 << 16)->Arg(1 << 20);

}  // namespace

BENCHMARK_MAIN();
