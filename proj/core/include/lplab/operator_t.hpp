#pragma once

#include "lplab/lp_family.hpp"

namespace lplab {

// Separated translation sequence y_1..y_jmax along e1 with the wrap-around
// guard. mu0 is half the minimal pairwise separation; n0 witnesses the
// growth bound |y_j| <= 2^{n0 j}.
struct TranslationSequence {
  std::vector<Vec> y;  // y[j-1] = y_j
  double mu0 = 0.0;
  int n0 = 0;

  int jmax() const { return static_cast<int>(y.size()); }
  const Vec& at(int j) const { return y.at(j - 1); }  // 1-based: y_1 is the first shift
};

// y_j = j * spacing * e1 with mu0 = spacing / 2. Requires the whole
// sequence plus guard zones to fit in a half-period:
// (jmax + 2) * spacing < L / 2.
TranslationSequence make_translations(int jmax, double spacing, const GridSpec& grid);

// T f = sum_{j=1..jmax} translate(band(f, j), y_j). The band sum starts at
// j = 1, so T annihilates the phi_0 band.
SampledField apply_T(const SampledField& f, const LPFamily& fam, const TranslationSequence& ys);

// The multiplier m(xi) = sum_{j>=1} e^{-2pi i y_j.xi} phi1_hat(2^{1-j} xi),
// defined in closed form for any real xi (not only lattice points).
cplx multiplier_m(const Vec& xi, const TranslationSequence& ys, const LPFamily& fam);
std::vector<cplx> multiplier_m(std::span<const Vec> xis, const TranslationSequence& ys,
                               const LPFamily& fam);

// Analytic gradient of m (term-wise product rule, profile derivative in
// closed form). Returns the n components.
std::array<cplx, 2> multiplier_grad(const Vec& xi, const TranslationSequence& ys,
                                    const LPFamily& fam);

// |grad m(2^j xi0)| for a unit vector xi0; equals 2 pi |y_j| analytically.
double grad_m_dyadic(int j, const Vec& xi0, const TranslationSequence& ys, const LPFamily& fam);

// Max of |m| (k = 0) or |grad m| (k = 1) over `samples` deterministic
// points of the annulus {2^{j-1} < |xi| < 2^{j+1}}. Evidence for the
// polynomial growth of the symbol family; the truncated operator itself is
// trivially bounded, so the scan grades the growth rate, not boundedness.
double growth_scan(int k, int j, const TranslationSequence& ys, const LPFamily& fam, int samples);

}  // namespace lplab
