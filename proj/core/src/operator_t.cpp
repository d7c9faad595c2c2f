#include "lplab/operator_t.hpp"

#include <cmath>

namespace lplab {

TranslationSequence make_translations(int jmax, double spacing, const GridSpec& grid) {
  if (jmax < 1) throw std::invalid_argument("make_translations: jmax must be >= 1");
  if (!(spacing > 0.0)) throw std::invalid_argument("make_translations: spacing must be positive");
  if (!(static_cast<double>(jmax) * spacing + 2.0 * spacing < grid.L / 2.0))
    throw std::invalid_argument(
        "make_translations: sequence plus guard zones does not fit a half-period");
  TranslationSequence ys;
  ys.mu0 = spacing / 2.0;
  ys.y.reserve(jmax);
  double ymax = 0.0;
  for (int j = 1; j <= jmax; ++j) {
    ys.y.push_back(vec1(static_cast<double>(j) * spacing));
    ymax = std::max(ymax, norm2(ys.y.back()));
  }
  ys.n0 = std::max(1, static_cast<int>(std::ceil(std::log2(ymax))));
  return ys;
}

SampledField apply_T(const SampledField& f, const LPFamily& fam, const TranslationSequence& ys) {
  if (ys.jmax() != fam.jmax())
    throw std::invalid_argument("apply_T: translation sequence and family have incompatible jmax");
  const GridSpec& g = f.grid();
  // Spectrum of sum_j translate(band(f, j), y_j); bands only overlap their
  // neighbours so the accumulation touches each annulus once per band.
  std::vector<cplx> c(g.point_count(), cplx{0.0, 0.0});
  for (int j = 1; j <= fam.jmax(); ++j) {
    const Vec& yj = ys.at(j);
    detail::for_each_in_annulus(g, fam.support_lo(j), fam.support_hi(j),
                                [&](std::int64_t idx, double r) {
                                  double w = fam.band_hat_radial(j, r);
                                  if (w == 0.0) return;
                                  Vec xi = g.frequency(idx);
                                  c[idx] += w * unit_phase(-dot(yj, xi)) * f.spectrum()[idx];
                                });
  }
  return SampledField::from_spectrum(g, std::move(c));
}

namespace {

// Bands whose annulus can contain radius r; the symbols vanish exactly
// outside their support, so a generous range costs nothing but evaluations.
std::pair<int, int> candidate_bands(double r, int jmax) {
  if (!(r > 0.0)) return {1, 0};
  int c = static_cast<int>(std::floor(std::log2(r)));
  return {std::max(1, c - 1), std::min(jmax, c + 2)};
}

}  // namespace

cplx multiplier_m(const Vec& xi, const TranslationSequence& ys, const LPFamily& fam) {
  double r = fam.grid().n == 1 ? std::abs(xi[0]) : norm2(xi);
  cplx m{0.0, 0.0};
  auto [jlo, jhi] = candidate_bands(r, ys.jmax());
  for (int j = jlo; j <= jhi; ++j) {
    double w = fam.band_hat_radial(j, r);
    if (w == 0.0) continue;
    m += w * unit_phase(-dot(ys.at(j), xi));
  }
  return m;
}

std::vector<cplx> multiplier_m(std::span<const Vec> xis, const TranslationSequence& ys,
                               const LPFamily& fam) {
  std::vector<cplx> out;
  out.reserve(xis.size());
  for (const Vec& xi : xis) out.push_back(multiplier_m(xi, ys, fam));
  return out;
}

std::array<cplx, 2> multiplier_grad(const Vec& xi, const TranslationSequence& ys,
                                    const LPFamily& fam) {
  const int n = fam.grid().n;
  double r = n == 1 ? std::abs(xi[0]) : norm2(xi);
  std::array<cplx, 2> grad{cplx{0.0, 0.0}, cplx{0.0, 0.0}};
  constexpr double kTwoPi = 2.0 * M_PI;
  auto [jlo, jhi] = candidate_bands(r, ys.jmax());
  for (int j = jlo; j <= jhi; ++j) {
    double w = fam.band_hat_radial(j, r);
    double dw = fam.band_hat_radial_deriv(j, r);
    if (w == 0.0 && dw == 0.0) continue;
    const Vec& yj = ys.at(j);
    cplx phase = unit_phase(-dot(yj, xi));
    for (int ax = 0; ax < n; ++ax) {
      cplx term = phase * cplx{0.0, -kTwoPi * yj[ax]} * w;
      if (r > 0.0 && dw != 0.0) term += phase * dw * (xi[ax] / r);
      grad[ax] += term;
    }
  }
  return grad;
}

double grad_m_dyadic(int j, const Vec& xi0, const TranslationSequence& ys, const LPFamily& fam) {
  if (j < 1 || j > ys.jmax()) throw std::invalid_argument("grad_m_dyadic: band index out of range");
  double r0 = fam.grid().n == 1 ? std::abs(xi0[0]) : norm2(xi0);
  if (std::abs(r0 - 1.0) > 1e-12)
    throw std::invalid_argument("grad_m_dyadic: xi0 must be a unit vector");
  double scale = std::ldexp(1.0, j);
  Vec xi{scale * xi0[0], scale * xi0[1]};
  auto grad = multiplier_grad(xi, ys, fam);
  double s = 0.0;
  for (int ax = 0; ax < fam.grid().n; ++ax) s += std::norm(grad[ax]);
  return std::sqrt(s);
}

double growth_scan(int k, int j, const TranslationSequence& ys, const LPFamily& fam, int samples) {
  if (k != 0 && k != 1) throw std::invalid_argument("growth_scan: derivative order must be 0 or 1");
  if (j < 1 || j > ys.jmax()) throw std::invalid_argument("growth_scan: band index out of range");
  if (samples < 64) throw std::invalid_argument("growth_scan: need at least 64 samples");
  const int n = fam.grid().n;
  double lo = std::ldexp(1.0, j - 1);
  double hi = std::ldexp(1.0, j + 1);

  auto value_at = [&](const Vec& xi) {
    if (k == 0) return std::abs(multiplier_m(xi, ys, fam));
    auto grad = multiplier_grad(xi, ys, fam);
    double s = 0.0;
    for (int ax = 0; ax < n; ++ax) s += std::norm(grad[ax]);
    return std::sqrt(s);
  };

  double best = 0.0;
  if (n == 1) {
    int half = samples / 2;
    for (int i = 0; i < half; ++i) {
      double r = lo + (hi - lo) * (i + 0.5) / half;
      best = std::max(best, value_at(vec1(r)));
      best = std::max(best, value_at(vec1(-r)));
    }
  } else {
    int nr = std::max(8, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(samples)))));
    for (int ir = 0; ir < nr; ++ir) {
      double r = lo + (hi - lo) * (ir + 0.5) / nr;
      for (int ia = 0; ia < nr; ++ia) {
        double th = 2.0 * M_PI * ia / nr;
        best = std::max(best, value_at(Vec{r * std::cos(th), r * std::sin(th)}));
      }
    }
  }
  return best;
}

}  // namespace lplab
