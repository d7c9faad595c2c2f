#pragma once

#include "lplab/grid.hpp"

namespace lplab {

// Littlewood-Paley multiplier bank on a grid's frequency lattice.
//
// The generating profile is radial:
//   phi0_hat(xi) = 1            for |xi| <= 2^{eps0},
//   phi0_hat(xi) = 0            for |xi| >= 2^{1-eps0},
//   C^infty monotone in between (exp(-1/t) cutoff in log2 radius),
// and the bands are phi_j_hat(xi) = phi0_hat(2^{-j} xi) - phi0_hat(2^{1-j} xi)
// for j >= 1, supported in the open annulus {2^{j-1} < |xi| < 2^{j+1}}.
class LPFamily {
 public:
  const GridSpec& grid() const { return grid_; }
  int jmax() const { return jmax_; }
  double eps0() const { return eps0_; }

  // Radial profile and its derivative in the radius.
  double profile(double r) const;
  double profile_deriv(double r) const;

  // phi_j_hat at any frequency (any j >= 0, closed form, off-lattice allowed).
  double band_hat_radial(int j, double r) const;
  double band_hat(int j, const Vec& xi) const { return band_hat_radial(j, radius(xi)); }
  // d/dr of the radial band symbol.
  double band_hat_radial_deriv(int j, double r) const;

  // Support annulus of band j (a disc for j = 0).
  double support_lo(int j) const { return j == 0 ? -1.0 : std::ldexp(1.0, j - 1); }
  double support_hi(int j) const { return std::ldexp(1.0, j + 1); }

 private:
  friend LPFamily build_family(const GridSpec&, int, double);
  double radius(const Vec& xi) const {
    return grid_.n == 1 ? std::abs(xi[0]) : norm2(xi);
  }
  GridSpec grid_;
  int jmax_ = 0;
  double eps0_ = 0.0;
};

// Preconditions: 2^{jmax+1} <= N/(2L) (top annulus resolvable) and
// 0 < eps0 < 1/2.
LPFamily build_family(const GridSpec& grid, int jmax, double eps0);

// Band projection phi_j * f as spectral multiplication by phi_j_hat.
SampledField band(const SampledField& f, int j, const LPFamily& fam);

struct Reconstruction {
  SampledField field;  // sum of band(f, j) over j = 0..jmax
  double defect_rel;   // relative L2 defect against f
  bool covered;        // spectrum inside {phi0_hat(2^{-jmax} xi) = 1}
};

// Partition-of-unity sanity check. A violated precondition (spectral mass
// outside the fully reconstructed region) is flagged, never silently
// accepted.
Reconstruction reconstruct(const SampledField& f, const LPFamily& fam);

// Fraction of spectral L2 mass outside {phi0_hat(2^{-jmax} xi) = 1}, i.e.
// the mass the truncated band sum cannot reproduce.
double tail_fraction(const SampledField& f, const LPFamily& fam);

}  // namespace lplab
