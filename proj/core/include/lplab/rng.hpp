#pragma once

#include <cstdint>
#include <random>

#include "lplab/lp_family.hpp"

namespace lplab {

// Deterministic random source. Draws map raw mt19937_64 output to doubles
// directly (no std::*_distribution), so sequences are identical across
// standard libraries and the regression constants frozen in the tests stay
// valid.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (have_) {
      have_ = false;
      return cached_;
    }
    double u1 = uniform01(), u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    have_ = true;
    return r * std::cos(a);
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  double cached_ = 0.0;
  bool have_ = false;
};

// Random field with spectrum supported in {|xi| <= max_freq}, coefficients
// complex Gaussian with a mild (1 + |xi|)^{-1} envelope.
SampledField random_band_limited(const GridSpec& g, double max_freq, Rng& rng);

// Random nonnegative real field, values uniform in [0, 1).
SampledField random_nonnegative(const GridSpec& g, Rng& rng);

}  // namespace lplab
