#include "lplab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lplab {

namespace detail {

void band_values(const SampledField& f, const LPFamily& fam, int j, std::vector<cplx>& scratch,
                 std::vector<cplx>& out) {
  const GridSpec& g = f.grid();
  std::fill(scratch.begin(), scratch.end(), cplx{0.0, 0.0});
  for_each_in_annulus(g, fam.support_lo(j), fam.support_hi(j),
                      [&](std::int64_t idx, double r) {
                        double w = fam.band_hat_radial(j, r);
                        if (w != 0.0) scratch[idx] = w * f.spectrum()[idx];
                      });
  dft(g.n, g.N, scratch.data(), out.data(), /*forward=*/false);
  double inv = 1.0 / (g.n == 1 ? g.L : g.L * g.L);
  for (auto& z : out) z *= inv;
}

}  // namespace detail

namespace {

using detail::band_values;

void validate_exponent(double e, const char* what) {
  if (std::isnan(e) || !(e > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

double lp_of_array(const GridSpec& g, std::span<const double> a, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : a) m = std::max(m, x);
    return m;
  }
  detail::KahanSum s;
  for (double x : a) s.add(detail::pow_pos(x, p));
  return detail::pow_pos(g.cell_volume() * s.value(), 1.0 / p);
}

}  // namespace

double seq_lq(std::span<const double> a, double q) {
  validate_exponent(q, "seq_lq: q");
  if (std::isinf(q)) {
    double m = 0.0;
    for (double x : a) m = std::max(m, x);
    return m;
  }
  detail::KahanSum s;
  for (double x : a) s.add(detail::pow_pos(x, q));
  return detail::pow_pos(s.value(), 1.0 / q);
}

double besov_norm(const SampledField& f, const LPFamily& fam, const NormParams& np) {
  validate_exponent(np.p, "besov_norm: p");
  validate_exponent(np.q, "besov_norm: q");
  if (!std::isfinite(np.s)) throw std::invalid_argument("besov_norm: s must be finite");
  const GridSpec& g = f.grid();
  std::vector<cplx> cbuf(g.point_count()), vbuf(g.point_count());
  std::vector<double> terms;
  terms.reserve(fam.jmax() + 1);
  for (int j = 0; j <= fam.jmax(); ++j) {
    band_values(f, fam, j, cbuf, vbuf);
    double w = std::exp2(j * np.s);
    if (std::isinf(np.p)) {
      double m = 0.0;
      for (const auto& z : vbuf) m = std::max(m, std::abs(z));
      terms.push_back(w * m);
    } else {
      detail::KahanSum s;
      for (const auto& z : vbuf) s.add(detail::pow_abs(z, np.p));
      terms.push_back(w * detail::pow_pos(g.cell_volume() * s.value(), 1.0 / np.p));
    }
  }
  return seq_lq(terms, np.q);
}

double tl_norm(const SampledField& f, const LPFamily& fam, const NormParams& np) {
  validate_exponent(np.p, "tl_norm: p");
  validate_exponent(np.q, "tl_norm: q");
  if (!std::isfinite(np.s)) throw std::invalid_argument("tl_norm: s must be finite");
  if (std::isinf(np.p))
    throw std::invalid_argument("tl_norm: p = infinity is defined by tl_norm_infq");
  const GridSpec& g = f.grid();
  std::vector<cplx> cbuf(g.point_count()), vbuf(g.point_count());
  std::vector<double> acc(g.point_count(), 0.0);
  const bool qinf = std::isinf(np.q);
  for (int j = 0; j <= fam.jmax(); ++j) {
    band_values(f, fam, j, cbuf, vbuf);
    double w = std::exp2(j * np.s);
    if (qinf) {
      for (std::int64_t i = 0; i < g.point_count(); ++i)
        acc[i] = std::max(acc[i], w * std::abs(vbuf[i]));
    } else {
      double wq = detail::pow_pos(w, np.q);
      for (std::int64_t i = 0; i < g.point_count(); ++i)
        acc[i] += wq * detail::pow_abs(vbuf[i], np.q);
    }
  }
  detail::KahanSum s;
  if (qinf) {
    for (double x : acc) s.add(detail::pow_pos(x, np.p));
  } else {
    double e = np.p / np.q;
    for (double x : acc) s.add(detail::pow_pos(x, e));
  }
  return detail::pow_pos(g.cell_volume() * s.value(), 1.0 / np.p);
}

double tl_norm_infq(const SampledField& f, const LPFamily& fam, double q, double s) {
  validate_exponent(q, "tl_norm_infq: q");
  if (!std::isfinite(s)) throw std::invalid_argument("tl_norm_infq: s must be finite");
  const GridSpec& g = f.grid();
  const std::int64_t total = g.point_count();
  std::vector<cplx> cbuf(total), vbuf(total);

  if (std::isinf(q)) {
    // 2^{Jn/q} -> 1 and the ball sup is maximized by the smallest J, so the
    // value collapses to the global sup over bands and lattice points.
    double m = 0.0;
    for (int j = 0; j <= fam.jmax(); ++j) {
      band_values(f, fam, j, cbuf, vbuf);
      double w = std::exp2(j * s);
      for (const auto& z : vbuf) m = std::max(m, w * std::abs(z));
    }
    return m;
  }

  const int j_min = -static_cast<int>(std::floor(std::log2(g.L))) + 1;
  std::vector<double> suffix(total, 0.0);
  std::vector<cplx> suffix_hat(total), win(total), conv(total);
  bool suffix_dirty = true;
  int next_band = fam.jmax();  // next band to fold into the suffix
  double best = 0.0;
  double hn = g.cell_volume();

  for (int J = fam.jmax(); J >= j_min; --J) {
    int lo = std::max(J, 0);
    while (next_band >= lo) {
      band_values(f, fam, next_band, cbuf, vbuf);
      double wq = detail::pow_pos(std::exp2(next_band * s), q);
      for (std::int64_t i = 0; i < total; ++i) suffix[i] += wq * detail::pow_abs(vbuf[i], q);
      --next_band;
      suffix_dirty = true;
    }
    if (suffix_dirty) {
      for (std::int64_t i = 0; i < total; ++i) cbuf[i] = cplx{suffix[i], 0.0};
      detail::dft(g.n, g.N, cbuf.data(), suffix_hat.data(), /*forward=*/true);
      suffix_dirty = false;
    }
    // Ball sums for every lattice center at once: circular convolution with
    // the closed-ball indicator of radius 2^{-J}.
    double r = std::ldexp(1.0, -J);
    Vec origin{0.0, 0.0};
    for (std::int64_t i = 0; i < total; ++i) {
      double d = g.torus_distance(g.point(i), origin);
      win[i] = cplx{d <= r ? 1.0 : 0.0, 0.0};
    }
    detail::dft(g.n, g.N, win.data(), cbuf.data(), /*forward=*/true);
    for (std::int64_t i = 0; i < total; ++i) cbuf[i] *= suffix_hat[i];
    detail::dft(g.n, g.N, cbuf.data(), conv.data(), /*forward=*/false);
    double inv_total = 1.0 / static_cast<double>(total);
    double m = 0.0;
    for (const auto& z : conv) m = std::max(m, z.real());
    m = std::max(m, 0.0) * inv_total;
    double val = std::exp2(static_cast<double>(J) * g.n / q) * detail::pow_pos(hn * m, 1.0 / q);
    best = std::max(best, val);
  }
  return best;
}

double conv_inequality_ratio(std::span<const SampledField> g, double delta,
                             const NormParams& np) {
  if (g.empty()) throw std::invalid_argument("conv_inequality_ratio: empty sequence");
  if (!(delta > 0.0)) throw std::invalid_argument("conv_inequality_ratio: delta must be positive");
  validate_exponent(np.p, "conv_inequality_ratio: p");
  validate_exponent(np.q, "conv_inequality_ratio: q");
  const GridSpec& grid = g[0].grid();
  const std::int64_t total = grid.point_count();
  const int n = static_cast<int>(g.size());

  std::vector<std::span<const cplx>> vals(n);
  for (int j = 0; j < n; ++j) {
    if (!(g[j].grid() == grid))
      throw std::invalid_argument("conv_inequality_ratio: fields live on different grids");
    vals[j] = g[j].values();
    for (const auto& z : vals[j])
      if (z.real() < -1e-12 || std::abs(z.imag()) > 1e-12)
        throw std::invalid_argument("conv_inequality_ratio: fields must be nonnegative and real");
  }

  const bool qinf = std::isinf(np.q);
  const bool pinf = std::isinf(np.p);
  // Pointwise l^q over a small family of rows, then the L^p quadrature, in
  // one pass over the lattice. Output index k runs over the window 0..n;
  // input j over 1..n.
  std::vector<double> wtab(n + 1);
  for (int d = 0; d <= n; ++d) wtab[d] = std::exp2(-delta * d);
  detail::KahanSum num_sum, den_sum;
  double num_max = 0.0, den_max = 0.0;
  std::vector<double> row(n + 1);
  for (std::int64_t i = 0; i < total; ++i) {
    for (int k = 0; k <= n; ++k) {
      double acc = 0.0;
      for (int j = 1; j <= n; ++j) acc += wtab[std::abs(j - k)] * vals[j - 1][i].real();
      row[k] = acc;
    }
    double out_q = 0.0, in_q = 0.0;
    if (qinf) {
      for (int k = 0; k <= n; ++k) out_q = std::max(out_q, row[k]);
      for (int j = 0; j < n; ++j) in_q = std::max(in_q, vals[j][i].real());
    } else {
      for (int k = 0; k <= n; ++k) out_q += detail::pow_pos(row[k], np.q);
      for (int j = 0; j < n; ++j) in_q += detail::pow_pos(vals[j][i].real(), np.q);
    }
    if (pinf) {
      num_max = std::max(num_max, out_q);
      den_max = std::max(den_max, in_q);
    } else {
      double e = qinf ? np.p : np.p / np.q;
      num_sum.add(detail::pow_pos(out_q, e));
      den_sum.add(detail::pow_pos(in_q, e));
    }
  }
  double num, den;
  if (pinf) {
    num = qinf ? num_max : detail::pow_pos(num_max, 1.0 / np.q);
    den = qinf ? den_max : detail::pow_pos(den_max, 1.0 / np.q);
  } else {
    num = detail::pow_pos(grid.cell_volume() * num_sum.value(), 1.0 / np.p);
    den = detail::pow_pos(grid.cell_volume() * den_sum.value(), 1.0 / np.p);
  }
  if (den == 0.0) throw std::invalid_argument("conv_inequality_ratio: zero denominator");
  return num / den;
}

}  // namespace lplab
