#include "lplab/rng.hpp"

namespace lplab {

SampledField random_band_limited(const GridSpec& g, double max_freq, Rng& rng) {
  std::vector<cplx> c(g.point_count(), cplx{0.0, 0.0});
  for (std::int64_t i = 0; i < g.point_count(); ++i) {
    double r = g.frequency_radius(i);
    if (r <= max_freq) {
      double env = 1.0 / (1.0 + r);
      c[i] = env * cplx{rng.normal(), rng.normal()};
    }
  }
  return SampledField::from_spectrum(g, std::move(c));
}

SampledField random_nonnegative(const GridSpec& g, Rng& rng) {
  std::vector<cplx> v(g.point_count());
  for (auto& z : v) z = cplx{rng.uniform01(), 0.0};
  return SampledField::from_values(g, std::move(v));
}

}  // namespace lplab
