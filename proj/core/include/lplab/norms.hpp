#pragma once

#include "lplab/lp_family.hpp"

namespace lplab {

// Exponents for the Besov / Triebel-Lizorkin quasi-norms. p and q live in
// (0, infinity]; s is the smoothness weight 2^{js}.
struct NormParams {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
};

// || (2^{js} phi_j * f)_j ||_{l^q(L^p)}, truncated at the family's jmax.
// Exact for band-limited inputs; callers can bound the truncation error of
// general inputs via tail_fraction().
double besov_norm(const SampledField& f, const LPFamily& fam, const NormParams& np);

// || (2^{js} phi_j * f)_j ||_{L^p(l^q)} for p < infinity (p = infinity is
// rejected; use tl_norm_infq).
double tl_norm(const SampledField& f, const LPFamily& fam, const NormParams& np);

// The p = infinity Triebel-Lizorkin quasi-norm:
//   sup_{x, J} 2^{Jn/q} || (2^{js} phi_j * f)_{j >= max(J,0)} ||_{L^q(B(x, 2^{-J}); l^q)}
// with the sup over lattice centers x and J in [-floor(log2 L)+1, jmax]
// (scales representable on the grid; larger J have an empty band tail and
// are excluded).
double tl_norm_infq(const SampledField& f, const LPFamily& fam, double q, double s);

// Discrete convolution inequality check: given nonnegative fields
// g_1..g_n and delta > 0, returns
//   || ( sum_j 2^{-delta|j-k|} g_j )_{k=0..n} ||_{L^p(l^q)} / || (g_j)_j ||_{L^p(l^q)}.
double conv_inequality_ratio(std::span<const SampledField> g, double delta,
                             const NormParams& np);

// l^q norm of a finite nonnegative sequence (sup for q = infinity).
double seq_lq(std::span<const double> a, double q);

namespace detail {
// Values of band j of f written into out (scratch holds the masked
// spectrum). Shared by the norm sweeps and by callers that combine several
// per-band quantities in one pass.
void band_values(const SampledField& f, const LPFamily& fam, int j, std::vector<cplx>& scratch,
                 std::vector<cplx>& out);
}  // namespace detail

}  // namespace lplab
