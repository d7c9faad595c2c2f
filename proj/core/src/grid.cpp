#include "lplab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lplab {

namespace {

bool is_power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<cplx> forward_transform(const GridSpec& g, const std::vector<cplx>& values) {
  std::vector<cplx> c(values.size());
  detail::dft(g.n, g.N, values.data(), c.data(), /*forward=*/true);
  double hn = g.cell_volume();
  for (auto& z : c) z *= hn;
  return c;
}

std::vector<cplx> inverse_transform(const GridSpec& g, const std::vector<cplx>& spectrum) {
  std::vector<cplx> v(spectrum.size());
  detail::dft(g.n, g.N, spectrum.data(), v.data(), /*forward=*/false);
  double ln = g.n == 1 ? g.L : g.L * g.L;
  double inv = 1.0 / ln;
  for (auto& z : v) z *= inv;
  return v;
}

void check_size(const GridSpec& g, std::size_t got) {
  if (static_cast<std::int64_t>(got) != g.point_count())
    throw std::invalid_argument("SampledField: sample count does not match grid");
}

// e^{2 pi i k0 m / N} for m = 0..N-1. The orbit k0 m mod N repeats with
// period N / gcd(k0, N), so one short period of phases is tiled instead of
// evaluating N trigs.
std::vector<cplx> integer_tone(std::int64_t k0, std::int64_t N) {
  std::int64_t r = ((k0 % N) + N) % N;
  std::int64_t period = N / std::gcd(r == 0 ? N : r, N);
  std::vector<cplx> out(N);
  for (std::int64_t m = 0; m < period; ++m)
    out[m] = unit_phase(static_cast<double>(r) * static_cast<double>(m) / static_cast<double>(N));
  for (std::int64_t m = period; m < N; ++m) out[m] = out[m - period];
  return out;
}

}  // namespace

GridSpec make_grid(int n, double L, std::int64_t N) {
  if (n != 1 && n != 2) throw std::invalid_argument("make_grid: dimension must be 1 or 2");
  if (!(L > 0.0)) throw std::invalid_argument("make_grid: period must be positive");
  if (!is_power_of_two(N)) throw std::invalid_argument("make_grid: N must be a power of two");
  return GridSpec{n, L, N};
}

SampledField SampledField::from_values(const GridSpec& g, std::vector<cplx> values) {
  check_size(g, values.size());
  SampledField f;
  f.grid_ = g;
  f.spectrum_ = forward_transform(g, values);
  f.values_ = std::move(values);
  return f;
}

SampledField SampledField::from_spectrum(const GridSpec& g, std::vector<cplx> spectrum) {
  check_size(g, spectrum.size());
  SampledField f;
  f.grid_ = g;
  f.values_ = inverse_transform(g, spectrum);
  f.spectrum_ = std::move(spectrum);
  return f;
}

SampledField SampledField::from_parts(const GridSpec& g, std::vector<cplx> values,
                                      std::vector<cplx> spectrum) {
  check_size(g, values.size());
  check_size(g, spectrum.size());
  SampledField f;
  f.grid_ = g;
  f.values_ = std::move(values);
  f.spectrum_ = std::move(spectrum);
  return f;
}

double lp_quadrature(const SampledField& f, double p) {
  if (std::isnan(p) || !(p > 0.0)) throw std::invalid_argument("lp_quadrature: p must be positive");
  auto v = f.values();
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
  }
  detail::KahanSum s;
  for (const auto& z : v) s.add(detail::pow_abs(z, p));
  return detail::pow_pos(f.grid().cell_volume() * s.value(), 1.0 / p);
}

SampledField translate(const SampledField& f, const Vec& y) {
  const GridSpec& g = f.grid();
  if (y[0] == 0.0 && (g.n == 1 || y[1] == 0.0)) return f;

  double h = g.spacing();
  std::array<std::int64_t, 2> shift{0, 0};
  bool aligned = true;
  for (int ax = 0; ax < g.n; ++ax) {
    double s = y[ax] / h;
    double sr = std::nearbyint(s);
    if (std::abs(s - sr) > 1e-9) {
      aligned = false;
      break;
    }
    shift[ax] = static_cast<std::int64_t>(sr);
  }

  if (!aligned) {
    std::vector<cplx> c(f.spectrum().begin(), f.spectrum().end());
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
      Vec xi = g.frequency(i);
      c[i] *= unit_phase(-dot(y, xi));
    }
    return SampledField::from_spectrum(g, std::move(c));
  }

  // Lattice-aligned shift: circular sample permutation plus the phase
  // e^{-2 pi i shift k / N} per axis (periodic orbit, no per-point trig);
  // both representations follow without a transform.
  std::vector<cplx> c(f.spectrum().begin(), f.spectrum().end());
  std::vector<cplx> v(g.point_count());
  auto wrap = [&](std::int64_t m) {
    std::int64_t w = m % g.N;
    return w < 0 ? w + g.N : w;
  };
  if (g.n == 1) {
    std::vector<cplx> tone = integer_tone(-shift[0], g.N);
    for (std::int64_t k = 0; k < g.N; ++k) c[k] *= tone[k];
    for (std::int64_t m = 0; m < g.N; ++m) v[m] = f.values()[wrap(m - shift[0])];
  } else {
    std::vector<cplx> t1 = integer_tone(-shift[0], g.N);
    std::vector<cplx> t2 = integer_tone(-shift[1], g.N);
    for (std::int64_t k1 = 0; k1 < g.N; ++k1)
      for (std::int64_t k2 = 0; k2 < g.N; ++k2) c[k1 * g.N + k2] *= t1[k1] * t2[k2];
    for (std::int64_t m1 = 0; m1 < g.N; ++m1)
      for (std::int64_t m2 = 0; m2 < g.N; ++m2)
        v[m1 * g.N + m2] = f.values()[wrap(m1 - shift[0]) * g.N + wrap(m2 - shift[1])];
  }
  return SampledField::from_parts(g, std::move(v), std::move(c));
}

SampledField modulate(const SampledField& f, int j, const Vec& y0) {
  const GridSpec& g = f.grid();
  if (j < 0) throw std::invalid_argument("modulate: band index must be nonnegative");
  // Shift indices per axis: 2^j y0 = k0 / L must be an integer lattice point.
  double scale = std::ldexp(1.0, j);
  std::array<std::int64_t, 2> k0{};
  for (int ax = 0; ax < g.n; ++ax) {
    double k = scale * y0[ax] * g.L;
    double kr = std::nearbyint(k);
    if (std::abs(k - kr) > 1e-9)
      throw std::invalid_argument("modulate: 2^j y0 is not on the frequency lattice");
    k0[ax] = static_cast<std::int64_t>(kr);
  }

  // Physical side: pointwise product with the (unimodular) tone,
  // e^{2 pi i k0 m / N} per axis.
  std::vector<cplx> vals(f.values().begin(), f.values().end());
  if (g.n == 1) {
    std::vector<cplx> tone = integer_tone(k0[0], g.N);
    for (std::int64_t m = 0; m < g.N; ++m) vals[m] *= tone[m];
  } else {
    std::vector<cplx> t1 = integer_tone(k0[0], g.N);
    std::vector<cplx> t2 = integer_tone(k0[1], g.N);
    for (std::int64_t m1 = 0; m1 < g.N; ++m1)
      for (std::int64_t m2 = 0; m2 < g.N; ++m2) vals[m1 * g.N + m2] *= t1[m1] * t2[m2];
  }

  // Spectral side: exact circular shift by k0 per axis.
  auto wrap = [&](std::int64_t k) {
    std::int64_t m = k % g.N;
    return m < 0 ? m + g.N : m;
  };
  std::vector<cplx> c(f.spectrum().size());
  if (g.n == 1) {
    for (std::int64_t k = 0; k < g.N; ++k) c[k] = f.spectrum()[wrap(k - k0[0])];
  } else {
    for (std::int64_t k1 = 0; k1 < g.N; ++k1)
      for (std::int64_t k2 = 0; k2 < g.N; ++k2)
        c[k1 * g.N + k2] = f.spectrum()[wrap(k1 - k0[0]) * g.N + wrap(k2 - k0[1])];
  }
  return SampledField::from_parts(g, std::move(vals), std::move(c));
}

SampledField add(const SampledField& a, const SampledField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("add: grids differ");
  std::vector<cplx> v(a.values().begin(), a.values().end());
  std::vector<cplx> c(a.spectrum().begin(), a.spectrum().end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] += b.values()[i];
    c[i] += b.spectrum()[i];
  }
  return SampledField::from_parts(a.grid(), std::move(v), std::move(c));
}

SampledField scale(cplx alpha, const SampledField& f) {
  std::vector<cplx> v(f.values().begin(), f.values().end());
  std::vector<cplx> c(f.spectrum().begin(), f.spectrum().end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] *= alpha;
    c[i] *= alpha;
  }
  return SampledField::from_parts(f.grid(), std::move(v), std::move(c));
}

double boundary_mass_fraction(const SampledField& f, double guard_width) {
  const GridSpec& g = f.grid();
  double half = g.L / 2.0;
  detail::KahanSum total, guard;
  for (std::int64_t i = 0; i < g.point_count(); ++i) {
    double a = std::abs(f.values()[i]);
    total.add(a);
    Vec x = g.point(i);
    bool near = false;
    for (int ax = 0; ax < g.n; ++ax)
      near = near || std::abs(std::remainder(x[ax] - half, g.L)) <= guard_width;
    if (near) guard.add(a);
  }
  double t = total.value();
  return t > 0.0 ? guard.value() / t : 0.0;
}

}  // namespace lplab
