#include "test_util.hpp"

using namespace lplab;
using namespace lplab::testing;

TEST_CASE("make_grid basics and errors") {
  GridSpec g = make_grid(1, 64.0, std::int64_t(1) << 20);
  CHECK(g.spacing() == doctest::Approx(std::ldexp(1.0, -14)).epsilon(1e-15));
  CHECK(g.nyquist() == doctest::Approx(8192.0));

  GridSpec g2 = make_grid(1, 32.0, std::int64_t(1) << 17);
  CHECK(g2.nyquist() == doctest::Approx(2048.0));  // admits jmax <= 10
  CHECK_NOTHROW(build_family(g2, 10, 0.1));
  CHECK_THROWS(build_family(g2, 11, 0.1));

  CHECK_THROWS_WITH_AS(make_grid(1, 64.0, 1000), doctest::Contains("power of two"),
                       std::invalid_argument);
  CHECK_THROWS(make_grid(1, -2.0, 1024));
  CHECK_THROWS(make_grid(3, 64.0, 1024));
}

TEST_CASE("lp_quadrature on constants and errors") {
  GridSpec g = make_grid(1, 64.0, 1 << 12);
  SampledField one = SampledField::from_values(g, std::vector<cplx>(g.point_count(), cplx{1.0, 0.0}));
  CHECK(lp_quadrature(one, 2.0) == doctest::Approx(8.0).epsilon(1e-13));
  CHECK(lp_quadrature(one, 1.0) == doctest::Approx(64.0).epsilon(1e-13));
  CHECK(lp_quadrature(one, INFINITY) == doctest::Approx(1.0));
  CHECK_THROWS(lp_quadrature(one, 0.0));
  CHECK_THROWS(lp_quadrature(one, -1.0));
}

TEST_CASE("chi L1 mass sits in the indicator bracket") {
  GridSpec g = make_grid(1, 64.0, 1 << 14);
  SampledField chi = build_chi(g, 1.0);
  double m = lp_quadrature(chi, 1.0);
  CHECK(m >= 2.0);
  CHECK(m <= 4.0);
}

TEST_CASE("round trip values <-> spectrum") {
  GridSpec g = make_grid(1, 64.0, 1 << 14);
  Rng rng(11);
  SampledField f = random_band_limited(g, 100.0, rng);
  SampledField back = SampledField::from_values(
      g, std::vector<cplx>(f.values().begin(), f.values().end()));
  double num = 0.0, den = 0.0;
  for (std::int64_t i = 0; i < g.point_count(); ++i) {
    num += std::norm(back.spectrum()[i] - f.spectrum()[i]);
    den += std::norm(f.spectrum()[i]);
  }
  CHECK(std::sqrt(num / den) <= 1e-12);
}

TEST_CASE("Parseval: quadrature matches normalized spectral l2") {
  GridSpec g = make_grid(1, 64.0, 1 << 12);
  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    SampledField f = random_band_limited(g, 20.0, rng);
    double lhs = lp_quadrature(f, 2.0);
    double s = 0.0;
    for (const auto& c : f.spectrum()) s += std::norm(c);
    double rhs = std::sqrt(s / g.L);
    CHECK(rel_err(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("spectral_multiplier identity / zero / band plateau on a tone") {
  Setup su;
  SampledField f = tone(su.g, vec1(4.0));
  SampledField id = spectral_multiplier(f, [](const Vec&) { return cplx{1.0, 0.0}; });
  CHECK(max_abs_diff(id, f) <= 1e-13);
  SampledField zero = spectral_multiplier(f, [](const Vec&) { return cplx{0.0, 0.0}; });
  CHECK(lp_quadrature(zero, INFINITY) <= 1e-15);

  // phi_j_hat(2^j e1) = 1, so a tone at exactly 2^j passes band j unchanged.
  int j = 5;
  SampledField t = tone(su.g, vec1(std::ldexp(1.0, j)));
  SampledField bt = band(t, j, su.fam);
  CHECK(max_abs_diff(bt, t) <= 1e-12);
}

TEST_CASE("translate: identity, group law, band-limited exactness") {
  Setup su;
  Rng rng(5);
  SampledField f = random_band_limited(su.g, 100.0, rng);

  SampledField same = translate(f, 0.0);
  CHECK(max_abs_diff(same, f) == 0.0);

  for (double y : {1.25, -3.7, 17.0, 0.0625}) {
    SampledField round = translate(translate(f, y), -y);
    CHECK(rel_l2_diff(round, f) <= 1e-12);
  }

  // Exactness on a band-limited tone: samples match the continuum shift.
  double xi0 = 12.0;
  double y = 0.3131749;
  SampledField t = tone(su.g, vec1(xi0));
  SampledField ty = translate(t, y);
  double worst = 0.0;
  for (std::int64_t i = 0; i < su.g.point_count(); i += 97) {
    cplx want = unit_phase(xi0 * (su.g.point(i)[0] - y));
    worst = std::max(worst, std::abs(ty.values()[i] - want));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("translation isometry for lattice shifts, all p") {
  Setup su;
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    SampledField f = random_band_limited(su.g, 64.0, rng);
    std::int64_t m = static_cast<std::int64_t>(rng.raw() % su.g.N);
    SampledField fy = translate(f, static_cast<double>(m) * su.g.spacing());
    for (double p : {0.5, 1.0, 2.0, double(INFINITY)}) {
      CHECK(rel_err(lp_quadrature(fy, p), lp_quadrature(f, p)) <= 1e-12);
    }
  }
  // Off-lattice shifts preserve the L2 norm (Parseval; the spectral phase
  // is unimodular).
  SampledField f = random_band_limited(su.g, 64.0, rng);
  SampledField fy = translate(f, 1.0 / 3.0);
  CHECK(rel_err(lp_quadrature(fy, 2.0), lp_quadrature(f, 2.0)) <= 1e-12);
}

TEST_CASE("translate of a modulated bump picks up the tilde-e phase") {
  Setup su;
  SampledField chi = build_chi(su.g, 1.0);
  int j = 4;
  double y = 2.0;
  SampledField lhs = translate(modulate(chi, j, Vec{1.0, 0.0}), y);
  // e_j(x - y) = e_j(-y) e_j(x), so tau_y(chi e_j) = e_j(-y) (e_j tau_y chi).
  cplx phase = unit_phase(-std::ldexp(1.0, j) * y);
  SampledField rhs = scale(phase, modulate(translate(chi, y), j, Vec{1.0, 0.0}));
  CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
  CHECK(std::abs(std::abs(phase) - 1.0) <= 1e-15);
}

TEST_CASE("modulate: tone line, modulus preservation, shift additivity") {
  Setup su;
  SampledField one = SampledField::from_values(
      su.g, std::vector<cplx>(su.g.point_count(), cplx{1.0, 0.0}));
  int j = 6;
  SampledField tj = modulate(one, j, Vec{1.0, 0.0});
  // Single spectral line at 2^j e1.
  std::int64_t hot = -1;
  for (std::int64_t i = 0; i < su.g.point_count(); ++i) {
    if (std::abs(tj.spectrum()[i]) > 1e-9) {
      CHECK(hot == -1);
      hot = i;
    }
  }
  REQUIRE(hot >= 0);
  CHECK(su.g.frequency(hot)[0] == doctest::Approx(std::ldexp(1.0, j)));

  Rng rng(9);
  SampledField f = random_band_limited(su.g, 30.0, rng);
  SampledField mf = modulate(f, j, Vec{1.0, 0.0});
  double worst = 0.0;
  for (std::int64_t i = 0; i < su.g.point_count(); i += 101)
    worst = std::max(worst, std::abs(std::abs(mf.values()[i]) - std::abs(f.values()[i])));
  CHECK(worst <= 1e-13);

  SampledField mm = modulate(modulate(f, j, Vec{1.0, 0.0}), j, Vec{1.0, 0.0});
  SampledField m1 = modulate(f, j + 1, Vec{1.0, 0.0});
  CHECK(max_abs_diff(mm, m1) <= 1e-12);

  GridSpec odd = make_grid(1, 10.5, 1 << 10);
  SampledField g1 = SampledField::from_values(
      odd, std::vector<cplx>(odd.point_count(), cplx{1.0, 0.0}));
  CHECK_THROWS_WITH_AS(modulate(g1, 0, Vec{1.0, 0.0}), doctest::Contains("lattice"),
                       std::invalid_argument);
}

TEST_CASE("boundary mass fraction separates centered from boundary bumps") {
  GridSpec g = make_grid(1, 64.0, 1 << 13);
  SampledField centered = build_chi(g, 1.0);
  CHECK(boundary_mass_fraction(centered, 2.0) <= 1e-12);
  SampledField at_boundary = translate(centered, 32.0);
  CHECK(boundary_mass_fraction(at_boundary, 2.0) >= 0.999);
}

TEST_CASE("2d: Parseval, translate group law, modulate tone") {
  GridSpec g = make_grid(2, 16.0, 1 << 6);
  Rng rng(21);
  SampledField f = random_band_limited(g, 8.0, rng);

  double s = 0.0;
  for (const auto& c : f.spectrum()) s += std::norm(c);
  CHECK(rel_err(lp_quadrature(f, 2.0), std::sqrt(s / (g.L * g.L))) <= 1e-12);

  Vec y{0.71, -2.3};
  SampledField round = translate(translate(f, y), Vec{-y[0], -y[1]});
  CHECK(rel_l2_diff(round, f) <= 1e-12);

  SampledField m = modulate(f, 2, Vec{1.0, 0.0});
  CHECK(rel_err(lp_quadrature(m, 2.0), lp_quadrature(f, 2.0)) <= 1e-12);
}
