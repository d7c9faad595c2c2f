#include <benchmark/benchmark.h>

#include "lplab/counterexample.hpp"
#include "lplab/rng.hpp"

using namespace lplab;

namespace {

struct Bench {
  GridSpec g;
  LPFamily fam;
  TranslationSequence ys;
  SampledField f;

  explicit Bench(std::int64_t n_samples)
      : g(make_grid(1, 64.0, n_samples)),
        fam(build_family(g, static_cast<int>(std::floor(std::log2(g.nyquist()))) - 1, 0.1)),
        ys(make_translations(fam.jmax(), 2.0, g)),
        f(make_input(g, fam)) {}

  static SampledField make_input(const GridSpec& g, const LPFamily& fam) {
    Rng rng(13);
    return random_band_limited(g, std::ldexp(1.0, fam.jmax() - 1), rng);
  }
};

void bm_besov_norm(benchmark::State& state) {
  Bench b(state.range(0));
  NormParams np{0.0, 1.0, 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(besov_norm(b.f, b.fam, np));
}
BENCHMARK(bm_besov_norm)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void bm_tl_norm(benchmark::State& state) {
  Bench b(state.range(0));
  NormParams np{0.0, 1.0, 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(tl_norm(b.f, b.fam, np));
}
BENCHMARK(bm_tl_norm)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void bm_tl_norm_infq(benchmark::State& state) {
  Bench b(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tl_norm_infq(b.f, b.fam, 1.0, 0.0));
}
BENCHMARK(bm_tl_norm_infq)->Arg(1 << 16)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

void bm_apply_T(benchmark::State& state) {
  Bench b(state.range(0));
  for (auto _ : state) {
    SampledField tf = apply_T(b.f, b.fam, b.ys);
    benchmark::DoNotOptimize(tf.values().data());
  }
}
BENCHMARK(bm_apply_T)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void bm_build_counterexample(benchmark::State& state) {
  Bench b(state.range(0));
  auto spec = make_counterexample_spec(CaseTag::PLT, 0.0, 1.0, 2.0, b.fam.jmax() - 2, b.ys, 1);
  for (auto _ : state) {
    SampledField f = build_f(spec, b.g, b.fam);
    benchmark::DoNotOptimize(f.values().data());
  }
}
BENCHMARK(bm_build_counterexample)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

}  // namespace
