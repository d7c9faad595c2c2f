#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "lplab/fft.hpp"

namespace lplab {

using cplx = std::complex<double>;

// Spatial / frequency vector. Only the first GridSpec::n components are
// meaningful; the rest are zero.
using Vec = std::array<double, 2>;

inline Vec vec1(double x) { return {x, 0.0}; }
inline double dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

// Periodic sampling lattice: n axes, period L per axis, N samples per axis.
// Frequencies live on the lattice xi_k = k/L, k in [-N/2, N/2) per axis,
// stored in DFT natural order (0..N/2-1, -N/2..-1).
struct GridSpec {
  int n = 1;
  double L = 0.0;
  std::int64_t N = 0;

  double spacing() const { return L / static_cast<double>(N); }
  double nyquist() const { return static_cast<double>(N) / (2.0 * L); }
  std::int64_t point_count() const { return n == 1 ? N : N * N; }
  double cell_volume() const { return n == 1 ? spacing() : spacing() * spacing(); }

  // Signed DFT index along one axis.
  std::int64_t signed_index(std::int64_t k) const { return k < N / 2 ? k : k - N; }

  Vec point(std::int64_t idx) const {
    double h = spacing();
    if (n == 1) return {static_cast<double>(idx) * h, 0.0};
    return {static_cast<double>(idx / N) * h, static_cast<double>(idx % N) * h};
  }

  Vec frequency(std::int64_t idx) const {
    if (n == 1) return {static_cast<double>(signed_index(idx)) / L, 0.0};
    return {static_cast<double>(signed_index(idx / N)) / L,
            static_cast<double>(signed_index(idx % N)) / L};
  }

  double frequency_radius(std::int64_t idx) const {
    Vec xi = frequency(idx);
    return n == 1 ? std::abs(xi[0]) : norm2(xi);
  }

  // Torus distance between two points (per-axis wrap to [-L/2, L/2]).
  double torus_distance(const Vec& a, const Vec& b) const {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      double d = std::remainder(a[i] - b[i], L);
      s += d * d;
    }
    return std::sqrt(s);
  }

  bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int n, double L, std::int64_t N);

// Complex field sampled on a grid, kept jointly in physical and spectral
// form. The spectral coefficients follow the convention
//   c_k = h^n * sum_m f(x_m) e^{-2pi i x_m . xi_k},
// i.e. they approximate the continuum Fourier transform at xi_k, so
// multiplier formulas stated for hat(f) apply verbatim. Immutable after
// construction; all operations return fresh fields.
class SampledField {
 public:
  static SampledField from_values(const GridSpec& g, std::vector<cplx> values);
  static SampledField from_spectrum(const GridSpec& g, std::vector<cplx> spectrum);
  // Caller guarantees the two representations are DFT-consistent (used by
  // linear operations that can maintain both sides exactly).
  static SampledField from_parts(const GridSpec& g, std::vector<cplx> values,
                                 std::vector<cplx> spectrum);

  const GridSpec& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  std::span<const cplx> spectrum() const { return spectrum_; }

 private:
  SampledField() = default;
  GridSpec grid_;
  std::vector<cplx> values_;
  std::vector<cplx> spectrum_;
};

// L^p quasi-norm over one period by Riemann sum, (h^n sum |f|^p)^{1/p};
// sup |f| over the lattice for p = infinity. p must be positive.
double lp_quadrature(const SampledField& f, double p);

// Pointwise spectral multiplication: result spectrum = symbol(xi) * spectrum.
template <class Symbol>
SampledField spectral_multiplier(const SampledField& f, Symbol&& symbol) {
  const GridSpec& g = f.grid();
  std::vector<cplx> c(f.spectrum().begin(), f.spectrum().end());
  for (std::int64_t i = 0; i < g.point_count(); ++i) c[i] *= symbol(g.frequency(i));
  return SampledField::from_spectrum(g, std::move(c));
}

// f(. - y) interpreted periodically, realized as the spectral phase
// e^{-2pi i y.xi}. Exact for lattice functions (trigonometric polynomials).
SampledField translate(const SampledField& f, const Vec& y);
inline SampledField translate(const SampledField& f, double y) { return translate(f, vec1(y)); }

// f * e_j with e_j(x) = exp(2pi i 2^j y0 . x). Requires 2^j y0 on the
// frequency lattice; the spectrum shifts by 2^j y0 (circularly).
SampledField modulate(const SampledField& f, int j, const Vec& y0);

// Linear combinations maintain both representations without transforms.
SampledField add(const SampledField& a, const SampledField& b);
SampledField scale(cplx alpha, const SampledField& f);

// Fraction of the L^1 mass of |f| lying within torus distance guard_width
// of the period boundary (the antipodal set {x_i = L/2} per axis). Used to
// certify that a compactly supported field does not feel the wrap-around.
double boundary_mass_fraction(const SampledField& f, double guard_width);

// Unit-modulus phase e^{2 pi i t} with the argument reduced modulo 1 before
// multiplication by 2 pi, which keeps phases accurate for large t.
inline cplx unit_phase(double t) {
  double r = t - std::nearbyint(t);
  double a = 2.0 * M_PI * r;
  return {std::cos(a), std::sin(a)};
}

namespace detail {

// Visit all lattice indices whose frequency radius r satisfies
// rlo < r < rhi (closed annulus is never needed: band symbols vanish at
// their support edges, so boundary fuzz is harmless). fn(idx, radius).
template <class F>
void for_each_in_annulus(const GridSpec& g, double rlo, double rhi, F&& fn) {
  const std::int64_t N = g.N;
  const double L = g.L;
  if (g.n == 1) {
    auto run = [&](std::int64_t klo, std::int64_t khi, bool negative) {
      for (std::int64_t k = klo; k <= khi; ++k) {
        double r = static_cast<double>(k) / L;
        std::int64_t idx = negative ? (N - k) : k;
        if (negative && k == 0) continue;
        fn(idx, r);
      }
    };
    std::int64_t klo = rlo <= 0.0 ? 0 : static_cast<std::int64_t>(std::floor(rlo * L)) + 1;
    std::int64_t khi_pos =
        std::min<std::int64_t>(N / 2 - 1, static_cast<std::int64_t>(std::ceil(rhi * L)));
    std::int64_t khi_neg =
        std::min<std::int64_t>(N / 2, static_cast<std::int64_t>(std::ceil(rhi * L)));
    if (khi_pos >= klo) run(klo, khi_pos, false);
    if (khi_neg >= std::max<std::int64_t>(klo, 1)) run(std::max<std::int64_t>(klo, 1), khi_neg, true);
    return;
  }
  // n == 2: per row, column ranges from the circle equation.
  for (std::int64_t k1 = 0; k1 < N; ++k1) {
    double xi1 = static_cast<double>(g.signed_index(k1)) / L;
    double rem_hi = rhi * rhi - xi1 * xi1;
    if (rem_hi <= 0.0) continue;
    double b = std::sqrt(rem_hi);
    double rem_lo = rlo <= 0.0 ? -1.0 : rlo * rlo - xi1 * xi1;
    auto visit_range = [&](double lo, double hi) {
      std::int64_t klo = static_cast<std::int64_t>(std::floor(lo * L)) - 1;
      std::int64_t khi = static_cast<std::int64_t>(std::ceil(hi * L)) + 1;
      klo = std::max<std::int64_t>(klo, -N / 2);
      khi = std::min<std::int64_t>(khi, N / 2 - 1);
      for (std::int64_t k2 = klo; k2 <= khi; ++k2) {
        double xi2 = static_cast<double>(k2) / L;
        double r = std::hypot(xi1, xi2);
        std::int64_t idx = k1 * N + (k2 >= 0 ? k2 : k2 + N);
        fn(idx, r);
      }
    };
    if (rem_lo <= 0.0) {
      visit_range(-b, b);
    } else {
      double a = std::sqrt(rem_lo);
      visit_range(-b, -a);
      visit_range(a, b);
    }
  }
}

}  // namespace detail

}  // namespace lplab
