#include "lplab/lp_family.hpp"

#include <cmath>

namespace lplab {

namespace {

constexpr double kLn2 = 0.6931471805599453094;

// Smooth step: 0 for t <= 0, 1 for t >= 1, s(t) = psi(t)/(psi(t)+psi(1-t))
// with psi(t) = exp(-1/t).
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = std::exp(-1.0 / t);
  double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double smooth_step_deriv(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  double a = std::exp(-1.0 / t);
  double b = std::exp(-1.0 / (1.0 - t));
  double ap = a / (t * t);
  double bp = b / ((1.0 - t) * (1.0 - t));
  double denom = a + b;
  return (ap * b + a * bp) / (denom * denom);
}

}  // namespace

double LPFamily::profile(double r) const {
  r = std::abs(r);
  if (r == 0.0) return 1.0;
  double t = (std::log2(r) - eps0_) / (1.0 - 2.0 * eps0_);
  return 1.0 - smooth_step(t);
}

double LPFamily::profile_deriv(double r) const {
  r = std::abs(r);
  if (r == 0.0) return 0.0;
  double t = (std::log2(r) - eps0_) / (1.0 - 2.0 * eps0_);
  double dt_dr = 1.0 / (r * kLn2 * (1.0 - 2.0 * eps0_));
  return -smooth_step_deriv(t) * dt_dr;
}

double LPFamily::band_hat_radial(int j, double r) const {
  if (j == 0) return profile(r);
  return profile(std::ldexp(r, -j)) - profile(std::ldexp(r, 1 - j));
}

double LPFamily::band_hat_radial_deriv(int j, double r) const {
  if (j == 0) return profile_deriv(r);
  return std::ldexp(profile_deriv(std::ldexp(r, -j)), -j) -
         std::ldexp(profile_deriv(std::ldexp(r, 1 - j)), 1 - j);
}

LPFamily build_family(const GridSpec& grid, int jmax, double eps0) {
  if (jmax < 1) throw std::invalid_argument("build_family: jmax must be >= 1");
  if (!(eps0 > 0.0 && eps0 < 0.5))
    throw std::invalid_argument("build_family: eps0 must lie in (0, 1/2)");
  if (std::ldexp(1.0, jmax + 1) > grid.nyquist())
    throw std::invalid_argument("build_family: top annulus 2^{jmax+1} exceeds the Nyquist frequency");
  LPFamily fam;
  fam.grid_ = grid;
  fam.jmax_ = jmax;
  fam.eps0_ = eps0;
  return fam;
}

SampledField band(const SampledField& f, int j, const LPFamily& fam) {
  if (!(f.grid() == fam.grid())) throw std::invalid_argument("band: field grid differs from family grid");
  if (j < 0 || j > fam.jmax()) throw std::invalid_argument("band: index out of range");
  const GridSpec& g = f.grid();
  std::vector<cplx> c(g.point_count(), cplx{0.0, 0.0});
  detail::for_each_in_annulus(g, fam.support_lo(j), fam.support_hi(j),
                              [&](std::int64_t idx, double r) {
                                double w = fam.band_hat_radial(j, r);
                                if (w != 0.0) c[idx] = w * f.spectrum()[idx];
                              });
  return SampledField::from_spectrum(g, std::move(c));
}

double tail_fraction(const SampledField& f, const LPFamily& fam) {
  const GridSpec& g = f.grid();
  double plateau = std::ldexp(1.0, fam.jmax()) * std::exp2(fam.eps0());
  detail::KahanSum total, outside;
  for (std::int64_t i = 0; i < g.point_count(); ++i) {
    double m = std::norm(f.spectrum()[i]);
    total.add(m);
    if (g.frequency_radius(i) > plateau) outside.add(m);
  }
  double t = total.value();
  return t > 0.0 ? outside.value() / t : 0.0;
}

Reconstruction reconstruct(const SampledField& f, const LPFamily& fam) {
  const GridSpec& g = f.grid();
  // Sum of the band symbols applied in one pass over each annulus.
  std::vector<cplx> c(g.point_count(), cplx{0.0, 0.0});
  for (int j = 0; j <= fam.jmax(); ++j) {
    detail::for_each_in_annulus(g, fam.support_lo(j), fam.support_hi(j),
                                [&](std::int64_t idx, double r) {
                                  double w = fam.band_hat_radial(j, r);
                                  if (w != 0.0) c[idx] += w * f.spectrum()[idx];
                                });
  }
  detail::KahanSum num, den;
  for (std::int64_t i = 0; i < g.point_count(); ++i) {
    num.add(std::norm(c[i] - f.spectrum()[i]));
    den.add(std::norm(f.spectrum()[i]));
  }
  double defect = den.value() > 0.0 ? std::sqrt(num.value() / den.value()) : 0.0;
  bool covered = tail_fraction(f, fam) <= 1e-10;
  return Reconstruction{SampledField::from_spectrum(g, std::move(c)), defect, covered};
}

}  // namespace lplab
