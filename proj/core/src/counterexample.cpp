#include "lplab/counterexample.hpp"

#include <algorithm>
#include <cmath>

namespace lplab {

namespace {

constexpr Vec kE1{1.0, 0.0};

double vol_ball(int n, double rho) { return n == 1 ? 2.0 * rho : M_PI * rho * rho; }

// Smooth step shared with the LP profile (exp(-1/t) cutoff).
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = std::exp(-1.0 / t);
  double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

void check_ratio_bound(const std::vector<double>& a) {
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t k = 0; k < a.size(); ++k) {
      double bound = std::exp2(std::abs(double(j) - double(k))) * std::abs(a[k]);
      if (std::abs(a[j]) > bound * (1.0 + 1e-12))
        throw std::invalid_argument("weight sequence violates |a_j| <= 2^{|j-k|} |a_k|");
    }
}

// tau_{-u}(chi e_j)
SampledField atom(const SampledField& chi, int j, const Vec& u) {
  SampledField m = modulate(chi, j, kE1);
  return translate(m, Vec{-u[0], -u[1]});
}

}  // namespace

std::vector<double> weight_sequence(CaseTag tag, double p, double q, int J) {
  if (J < 1) throw std::invalid_argument("weight_sequence: J must be >= 1");
  double e;  // a_j = (j + 3 e)^{-e} with e = 1/p (PLT) or 1/q (PGT)
  if (tag == CaseTag::PLT) {
    if (!(p < q)) throw std::invalid_argument("weight_sequence: PLT requires p < q");
    if (std::isinf(p)) throw std::invalid_argument("weight_sequence: PLT requires p < infinity");
    e = 1.0 / p;
  } else {
    if (!(p > q)) throw std::invalid_argument("weight_sequence: PGT requires p > q");
    if (std::isinf(q)) throw std::invalid_argument("weight_sequence: PGT requires q < infinity");
    e = 1.0 / q;
  }
  std::vector<double> a(J);
  for (int j = 1; j <= J; ++j) a[j - 1] = std::pow(static_cast<double>(j) + 3.0 * e, -e);
  return a;
}

CounterexampleSpec make_counterexample_spec(CaseTag tag, double s, double p, double q, int J,
                                            const TranslationSequence& ys, int n) {
  if (J > ys.jmax())
    throw std::invalid_argument("make_counterexample_spec: J exceeds the translation sequence");
  CounterexampleSpec spec;
  spec.s = s;
  spec.p = p;
  spec.q = q;
  spec.J = J;
  spec.mu0 = ys.mu0;
  spec.tag = tag;
  spec.ys = ys;
  spec.a = weight_sequence(tag, p, q, J);
  spec.n = n;
  check_ratio_bound(spec.a);
  return spec;
}

SampledField build_chi(const GridSpec& grid, double mu0) {
  if (!(mu0 > 0.0)) throw std::invalid_argument("build_chi: mu0 must be positive");
  if (!(2.0 * mu0 < grid.L / 4.0))
    throw std::invalid_argument("build_chi: bump radius too large for the period");
  std::vector<cplx> v(grid.point_count());
  Vec origin{0.0, 0.0};
  for (std::int64_t i = 0; i < grid.point_count(); ++i) {
    double d = grid.torus_distance(grid.point(i), origin);
    v[i] = cplx{1.0 - smooth_step((d - mu0) / mu0), 0.0};
  }
  return SampledField::from_values(grid, std::move(v));
}

SampledField build_f(const CounterexampleSpec& spec, const GridSpec& grid, const LPFamily& fam) {
  if (spec.J > fam.jmax() - 2)
    throw std::invalid_argument("build_f: truncation J must satisfy J <= jmax - 2");
  double half = grid.L / 2.0;
  for (int j = 1; j <= spec.J; ++j) {
    Vec u = spec.shift(j);
    for (int ax = 0; ax < grid.n; ++ax) {
      double dist = std::abs(std::remainder(-u[ax] - half, grid.L));
      if (dist < 4.0 * spec.mu0)
        throw std::invalid_argument("build_f: atom support violates the boundary guard");
    }
  }
  SampledField chi = build_chi(grid, spec.mu0);
  std::vector<cplx> vals(grid.point_count(), cplx{0.0, 0.0});
  std::vector<cplx> spec_acc(grid.point_count(), cplx{0.0, 0.0});
  for (int j = 1; j <= spec.J; ++j) {
    SampledField aj = atom(chi, j, spec.shift(j));
    cplx w = std::exp2(-j * spec.s) * spec.a[j - 1];
    for (std::int64_t i = 0; i < grid.point_count(); ++i) {
      vals[i] += w * aj.values()[i];
      spec_acc[i] += w * aj.spectrum()[i];
    }
  }
  return SampledField::from_parts(grid, std::move(vals), std::move(spec_acc));
}

std::vector<std::vector<double>> decay_matrix(const LPFamily& fam, const SampledField& chi,
                                              int jmax_rows, int kmax_cols) {
  if (jmax_rows > fam.jmax() || kmax_cols > fam.jmax())
    throw std::invalid_argument("decay_matrix: indices exceed the family range");
  std::vector<std::vector<double>> D(jmax_rows + 1, std::vector<double>(kmax_cols + 1, 0.0));
  for (int k = 0; k <= kmax_cols; ++k) {
    SampledField mk = modulate(chi, k, kE1);
    for (int j = 0; j <= jmax_rows; ++j) D[j][k] = lp_quadrature(band(mk, j, fam), INFINITY);
  }
  return D;
}

double decay_fit_slope(const std::vector<std::vector<double>>& D, int jk_min, int dlo, int dhi,
                       double floor_value, int* n_used) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t j = jk_min; j < D.size(); ++j)
    for (std::size_t k = jk_min; k < D[j].size(); ++k) {
      int d = std::abs(static_cast<int>(j) - static_cast<int>(k));
      if (d < dlo || d > dhi) continue;
      if (!(D[j][k] > floor_value)) continue;  // underflowed measurement
      double x = d, y = std::log2(D[j][k]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
  if (n_used) *n_used = n;
  if (n < 2) throw std::invalid_argument("decay_fit_slope: not enough resolvable pairs");
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("decay_fit_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

LowerBoundResult lower_bound_margins(const SampledField& tf, const CounterexampleSpec& spec,
                                     const LPFamily& fam) {
  const GridSpec& g = tf.grid();
  LowerBoundResult res;
  res.margins.resize(spec.J, 0.0);
  for (int j = 1; j <= spec.J; ++j) {
    SampledField bj = band(tf, j, fam);
    Vec u = spec.shift(j);
    Vec center{spec.ys.at(j)[0] - u[0], spec.ys.at(j)[1] - u[1]};
    double w = std::exp2(j * spec.s);
    double m = INFINITY;
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
      if (g.torus_distance(g.point(i), center) <= spec.mu0 / 2.0)
        m = std::min(m, w * std::abs(bj.values()[i]));
    }
    res.margins[j - 1] = m / std::abs(spec.a[j - 1]);
  }
  for (int K = 1; K <= spec.J; ++K) {
    bool ok = true;
    for (int j = K; j <= spec.J; ++j) ok = ok && res.margins[j - 1] >= 0.5;
    if (ok) {
      res.k_emp = K;
      break;
    }
  }
  return res;
}

LowerBoundResult lower_bound_check(const CounterexampleSpec& spec, const GridSpec& grid,
                                   const LPFamily& fam, const TranslationSequence& ys) {
  SampledField f = build_f(spec, grid, fam);
  SampledField tf = apply_T(f, fam, ys);
  return lower_bound_margins(tf, spec, fam);
}

double disjoint_sum_ratio(std::span<const double> b, const SampledField& phi,
                          const TranslationSequence& ys, double r) {
  if (b.empty() || static_cast<int>(b.size()) > ys.jmax())
    throw std::invalid_argument("disjoint_sum_ratio: b must have 1..jmax entries");
  if (!(r > 0.0)) throw std::invalid_argument("disjoint_sum_ratio: r must be positive");
  double bn = seq_lq(std::vector<double>(b.begin(), b.end()), r);
  if (bn == 0.0) throw std::invalid_argument("disjoint_sum_ratio: zero weight sequence");
  const GridSpec& g = phi.grid();
  std::vector<cplx> vals(g.point_count(), cplx{0.0, 0.0});
  std::vector<cplx> spec(g.point_count(), cplx{0.0, 0.0});
  for (std::size_t j = 0; j < b.size(); ++j) {
    SampledField tj = translate(phi, ys.at(static_cast<int>(j) + 1));
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
      vals[i] += b[j] * tj.values()[i];
      spec[i] += b[j] * tj.spectrum()[i];
    }
  }
  SampledField sum = SampledField::from_parts(g, std::move(vals), std::move(spec));
  return lp_quadrature(sum, r) / bn;
}

OracleNorms oracle_norms(const CounterexampleSpec& spec) {
  const double vlo = vol_ball(spec.n, spec.mu0);
  const double vhi = vol_ball(spec.n, 2.0 * spec.mu0);
  auto lq = [&](double e) { return seq_lq(spec.a, e); };
  OracleNorms out;

  if (std::isinf(spec.p)) {
    // Dyadic-ball stack variant (PGT only; PLT requires p < q <= infinity).
    double aq = lq(spec.q);
    double ainf = lq(INFINITY);
    double v1 = detail::pow_pos(vol_ball(spec.n, 1.0), 1.0 / spec.q);
    out.besov_f = {aq, aq, "l^q(a) (sup bands have unit height)"};
    out.besov_tf = out.besov_f;
    double top2 = spec.J >= 2 ? detail::pow_pos(detail::pow_pos(spec.a[0], spec.q) +
                                                    detail::pow_pos(spec.a[1], spec.q),
                                                1.0 / spec.q)
                              : ainf;
    out.tl_f = {ainf * v1, top2 * v1, "ball stack, disjoint atoms (overlap at r = 2 mu0)"};
    double wlo = detail::pow_pos(vol_ball(spec.n, std::min(spec.mu0, 1.0)), 1.0 / spec.q);
    double whi = detail::pow_pos(vol_ball(spec.n, std::min(2.0 * spec.mu0, 1.0)), 1.0 / spec.q);
    out.tl_tf = {aq * wlo, aq * whi, "ball stack at the origin"};
    return out;
  }

  double plo = detail::pow_pos(vlo, 1.0 / spec.p);
  double phi_ = detail::pow_pos(vhi, 1.0 / spec.p);
  double aq = lq(spec.q), ap = lq(spec.p);
  out.besov_f = {aq * plo, aq * phi_, "l^q(a) vol^{1/p}"};
  out.besov_tf = out.besov_f;
  if (spec.tag == CaseTag::PLT) {
    out.tl_f = {aq * plo, aq * phi_, "stacked atoms"};
    out.tl_tf = {ap * plo, ap * phi_, "dispersed atoms"};
  } else {
    out.tl_f = {ap * plo, ap * phi_, "dispersed atoms"};
    out.tl_tf = {aq * plo, aq * phi_, "stacked atoms"};
  }
  return out;
}

VectorValuedNorms vector_valued_ratio(std::span<const double> a, std::span<const Vec> u,
                                      const TranslationSequence& ys, double q,
                                      const LPFamily& fam, const GridSpec& grid) {
  if (a.empty() || a.size() != u.size())
    throw std::invalid_argument("vector_valued_ratio: a and u must be nonempty, equal length");
  if (static_cast<int>(a.size()) > fam.jmax() - 2)
    throw std::invalid_argument("vector_valued_ratio: component count exceeds jmax - 2");
  if (!(q > 0.0)) throw std::invalid_argument("vector_valued_ratio: q must be positive");

  SampledField chi = build_chi(grid, ys.mu0);
  const std::int64_t total = grid.point_count();
  const bool qinf = std::isinf(q);
  std::vector<double> acc_in(total, 0.0), acc_out(total, 0.0);
  for (std::size_t k = 1; k <= a.size(); ++k) {
    SampledField fk = scale(a[k - 1], atom(chi, static_cast<int>(k), u[k - 1]));
    SampledField tfk = apply_T(fk, fam, ys);
    for (std::int64_t i = 0; i < total; ++i) {
      if (qinf) {
        acc_in[i] = std::max(acc_in[i], std::abs(fk.values()[i]));
        acc_out[i] = std::max(acc_out[i], std::abs(tfk.values()[i]));
      } else {
        acc_in[i] += detail::pow_abs(fk.values()[i], q);
        acc_out[i] += detail::pow_abs(tfk.values()[i], q);
      }
    }
  }
  auto l2_of = [&](const std::vector<double>& acc) {
    detail::KahanSum s;
    double e = qinf ? 2.0 : 2.0 / q;
    for (double x : acc) s.add(detail::pow_pos(x, e));
    return std::sqrt(grid.cell_volume() * s.value());
  };
  return VectorValuedNorms{l2_of(acc_in), l2_of(acc_out)};
}

}  // namespace lplab
