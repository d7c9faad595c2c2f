#pragma once

#include <string>

#include "lplab/norms.hpp"
#include "lplab/operator_t.hpp"

namespace lplab {

// The two counterexample configurations: PLT stacks the atoms at the origin
// (p < q, u_j = 0) so that T disperses them; PGT disperses the atoms
// (p > q, u_j = y_j) so that T stacks them.
enum class CaseTag { PLT, PGT };

inline const char* to_string(CaseTag t) { return t == CaseTag::PLT ? "PLT" : "PGT"; }

// Parameters of f_{s,a,u} = sum_{j=1..J} 2^{-js} a_j tau_{-u_j}(chi e_j).
struct CounterexampleSpec {
  double s = 0.0;
  double p = 1.0;
  double q = 2.0;
  int J = 0;          // truncation level (number of atoms)
  double mu0 = 0.0;   // bump radius parameter
  CaseTag tag = CaseTag::PLT;
  TranslationSequence ys;
  std::vector<double> a;  // a[j-1] = a_j
  int n = 1;

  Vec shift(int j) const { return tag == CaseTag::PLT ? Vec{0.0, 0.0} : ys.at(j); }  // u_j
};

// Weights per the case: PLT a_j = (j + 3/p)^{-1/p} (in l^q \ l^p),
// PGT a_j = (j + 3/q)^{-1/q} (in l^p \ l^q).
std::vector<double> weight_sequence(CaseTag tag, double p, double q, int J);

// Validates case/exponent consistency and the ratio bound
// |a_j| <= 2^{|j-k|} |a_k|.
CounterexampleSpec make_counterexample_spec(CaseTag tag, double s, double p, double q, int J,
                                            const TranslationSequence& ys, int n = 1);

// Radial bump: 1 on B(0, mu0), 0 outside B(0, 2 mu0), smooth monotone
// in between (same cutoff family as the LP profile).
SampledField build_chi(const GridSpec& grid, double mu0);

// The counterexample function, truncated at spec.J. Requires
// spec.J <= fam.jmax() - 2 and every atom support inside the guard zone.
SampledField build_f(const CounterexampleSpec& spec, const GridSpec& grid, const LPFamily& fam);

// D[j][k] = sup_x |phi_j * (chi e_k)|, j = 0..jmax_rows, k = 0..kmax_cols.
std::vector<std::vector<double>> decay_matrix(const LPFamily& fam, const SampledField& chi,
                                              int jmax_rows, int kmax_cols);

// Least-squares slope of log2 D[j][k] against |j-k| over pairs with
// dlo <= |j-k| <= dhi and j, k >= jk_min. Pairs with D at or below `floor`
// are excluded as underflowed measurements (the true decay follows
// 2^{-M max(j,k)} and drops beneath double precision long before the fit
// window ends). Returns the slope; *n_used reports surviving pairs.
double decay_fit_slope(const std::vector<std::vector<double>>& D, int jk_min, int dlo, int dhi,
                       double floor_value, int* n_used = nullptr);

struct LowerBoundResult {
  int k_emp = -1;               // least K with margin_j >= 1/2 for K <= j <= J; -1 if none
  std::vector<double> margins;  // margins[j-1] = min over B(y_j - u_j, mu0/2) of 2^{js}|phi_j*Tf| / a_j
};

// Margins of the lower bound on the inner balls, from a precomputed Tf.
LowerBoundResult lower_bound_margins(const SampledField& tf, const CounterexampleSpec& spec,
                                     const LPFamily& fam);
// Convenience wrapper that builds f and Tf from the spec.
LowerBoundResult lower_bound_check(const CounterexampleSpec& spec, const GridSpec& grid,
                                   const LPFamily& fam, const TranslationSequence& ys);

// || sum_j b_j tau_{y_j} phi ||_{L^r} / ||b||_{l^r}.
double disjoint_sum_ratio(std::span<const double> b, const SampledField& phi,
                          const TranslationSequence& ys, double r);

struct OracleBracket {
  double lo = 0.0;
  double hi = 0.0;
  std::string model;
};

struct OracleNorms {
  OracleBracket besov_f, tl_f, besov_tf, tl_tf;
};

// Closed-form brackets from the idealized model
// 2^{js} phi_j * f ~ a_j e_j 1_{B(-u_j, r)}, r in [mu0, 2 mu0]. For p =
// infinity the dyadic-ball stack variant is used.
OracleNorms oracle_norms(const CounterexampleSpec& spec);

struct VectorValuedNorms {
  double input = 0.0;   // ||(f_k)_k||_{L^2(l^q)}
  double output = 0.0;  // ||(T f_k)_k||_{L^2(l^q)}
};

// Vector-valued experiment: components f_k = a_k tau_{-u_k}(chi e_k).
VectorValuedNorms vector_valued_ratio(std::span<const double> a, std::span<const Vec> u,
                                      const TranslationSequence& ys, double q,
                                      const LPFamily& fam, const GridSpec& grid);

}  // namespace lplab
