// Acceptance suite: grades every top-level criterion at the default desk
// scale (1D, L = 64, N = 2^20, Jmax = 12) and prints one PASS/FAIL line per
// criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "lplab/experiment.hpp"

using namespace lplab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int g_index = 0;
bool g_all_ok = true;

void line(const std::string& label, bool pass, const std::string& detail) {
  ++g_index;
  std::printf("[%2d/11] %-34s %s  (%s)\n", g_index, label.c_str(), pass ? "PASS" : "FAIL",
              detail.c_str());
  g_all_ok = g_all_ok && pass;
}

// All properties whose name starts with `prefix` pass (and at least one exists).
bool prefix_pass(const ExperimentResult& r, const std::string& prefix, int* count = nullptr) {
  bool ok = true;
  int n = 0;
  for (const auto& p : r.properties) {
    if (p.name.rfind(prefix, 0) == 0) {
      ++n;
      ok = ok && p.pass;
    }
  }
  if (count) *count = n;
  return ok && n > 0;
}

double measured(const ExperimentResult& r, const std::string& name, double fallback = -1.0) {
  const PropertyResult* p = r.find(name);
  return p ? p->measured : fallback;
}

bool named_pass(const ExperimentResult& r, const std::string& name) {
  const PropertyResult* p = r.find(name);
  return p && p->pass;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  ExperimentConfig cfg;  // built-in defaults
  std::map<std::string, ExperimentResult> res;
  std::map<std::string, double> dur;

  Clock::time_point suite_start = Clock::now();
  for (const std::string& name : experiment_names()) {
    Clock::time_point t0 = Clock::now();
    res[name] = run_experiment(cfg, name);
    dur[name] = seconds_since(t0);
  }
  double suite_seconds = seconds_since(suite_start);

  const auto& family = res["family-check"];
  const auto& decay = res["decay"];
  const auto& multiplier = res["multiplier"];
  const auto& besov = res["besov-bound"];
  const auto& tl = res["tl-diverge"];
  const auto& conv = res["conv-ineq"];
  const auto& disjoint = res["disjoint-sum"];
  const auto& vv = res["vector-valued"];

  // 1. Family correctness: telescoping to 1e-12, supports exactly zero,
  //    adjacent-band identity to 1e-14, under 5 s.
  {
    bool ok = named_pass(family, "family.telescoping_max_err") &&
              named_pass(family, "family.support_leak_max") &&
              named_pass(family, "family.adjacent_identity_max_err") &&
              named_pass(family, "family.radial_asymmetry_max") && dur["family-check"] < 5.0;
    char detail[160];
    std::snprintf(detail, sizeof detail, "telescope=%.2e support=%.2e adjacent=%.2e in %.2fs",
                  measured(family, "family.telescoping_max_err"),
                  measured(family, "family.support_leak_max"),
                  measured(family, "family.adjacent_identity_max_err"), dur["family-check"]);
    line("family correctness", ok, detail);
  }

  // 2. Gradient identity 2 pi |y_j| to 1e-8 for j = 1..12, central
  //    differences to 1e-6, under 1 s.
  {
    Clock::time_point t0 = Clock::now();
    GridSpec g = make_grid(cfg.n, cfg.L, cfg.N);
    LPFamily fam = build_family(g, cfg.jmax, cfg.eps0);
    TranslationSequence ys = make_translations(cfg.jmax, cfg.spacing, g);
    double worst_id = 0.0, worst_fd = 0.0;
    for (int j = 1; j <= cfg.jmax; ++j) {
      double want = 2.0 * M_PI * norm2(ys.at(j));
      worst_id = std::max(worst_id,
                          std::abs(grad_m_dyadic(j, Vec{1.0, 0.0}, ys, fam) - want) / want);
      Vec xi{std::ldexp(1.0, j), 0.0};
      auto ana = multiplier_grad(xi, ys, fam);
      double step = 1e-5;
      cplx fd = (multiplier_m(Vec{xi[0] + step, 0.0}, ys, fam) -
                 multiplier_m(Vec{xi[0] - step, 0.0}, ys, fam)) /
                (2.0 * step);
      worst_fd = std::max(worst_fd, std::abs(fd - ana[0]) / std::abs(ana[0]));
    }
    double secs = seconds_since(t0);
    bool ok = worst_id <= 1e-8 && worst_fd <= 1e-6 && secs < 1.0;
    char detail[160];
    std::snprintf(detail, sizeof detail, "identity=%.2e fd=%.2e in %.3fs", worst_id, worst_fd,
                  secs);
    line("gradient identity 2pi|y_j|", ok, detail);
  }

  // 3. Decay regression slope <= -4 over 2 <= |j-k| <= 6, j,k in [3,12],
  //    under 30 s.
  {
    bool ok = named_pass(decay, "decay.log2_slope") && named_pass(decay, "decay.diag_min") &&
              named_pass(decay, "decay.diag_max") && dur["decay"] < 30.0;
    char detail[160];
    std::snprintf(detail, sizeof detail, "slope=%.3f diag in [%.3f, %.3f] in %.2fs",
                  measured(decay, "decay.log2_slope"), measured(decay, "decay.diag_min"),
                  measured(decay, "decay.diag_max"), dur["decay"]);
    line("band-atom decay slope <= -4", ok, detail);
  }

  // 4. Lower bound: K_emp exists, K_emp <= 5, margins >= 0.5 up to J = 10,
  //    in all four default configs.
  {
    const char* tags[] = {"PLT_s0_p1_q2", "PLT_s0_p0.5_q1", "PGT_s0_p2_q1", "PGT_s0_pinf_q1"};
    bool ok = true;
    double worst_k = 0.0, worst_margin = INFINITY;
    for (const char* t : tags) {
      ok = ok && named_pass(tl, std::string("lower_bound.k_emp.") + t) &&
           named_pass(tl, std::string("lower_bound.min_margin.") + t);
      worst_k = std::max(worst_k, measured(tl, std::string("lower_bound.k_emp.") + t));
      worst_margin = std::min(worst_margin, measured(tl, std::string("lower_bound.min_margin.") + t));
    }
    char detail[160];
    std::snprintf(detail, sizeof detail, "max K_emp=%.0f min margin=%.3f over 4 configs", worst_k,
                  worst_margin);
    line("lower bound K_emp <= 5", ok, detail);
  }

  // 5. Besov boundedness: spread < 10% and ratio <= 2.5 on the default
  //    configs, <= 2.5 on random band-limited fields over the (s,p,q) grid.
  {
    int n_spread = 0, n_max = 0, n_rand = 0;
    bool ok = prefix_pass(besov, "besov.ratio_spread.", &n_spread) &&
              prefix_pass(besov, "besov.ratio_max.", &n_max) &&
              prefix_pass(besov, "besov.random_ratio_max.", &n_rand);
    ok = ok && n_spread == 4 && n_max == 4 && n_rand == 18;
    char detail[160];
    std::snprintf(detail, sizeof detail, "%d configs, %d random (s,p,q) cells", n_spread, n_rand);
    line("Besov uniform boundedness", ok, detail);
  }

  // 6. TL divergence: R_J strictly increasing and R_10/R_4 within 25% of the
  //    sequence oracle for PLT(1,2), PGT(2,1) and the p = inf run.
  {
    const char* tags[] = {"PLT_s0_p1_q2", "PGT_s0_p2_q1", "PGT_s0_pinf_q1"};
    bool ok = true;
    double worst = 0.0;
    for (const char* t : tags) {
      ok = ok && named_pass(tl, std::string("tl.monotone_min_delta.") + t) &&
           named_pass(tl, std::string("tl.oracle_agreement_err.") + t) &&
           named_pass(tl, std::string("tl.oracle_bracket_excursion.") + t);
      worst = std::max(worst, measured(tl, std::string("tl.oracle_agreement_err.") + t));
    }
    char detail[160];
    std::snprintf(detail, sizeof detail, "worst oracle deviation=%.1f%% (tol 25%%)", 100.0 * worst);
    line("TL divergence vs sequence oracle", ok, detail);
  }

  // 7. p = q coincidence to 1e-10 on 50 random fields.
  {
    bool ok = named_pass(besov, "norms.pq_coincidence_max_rel");
    char detail[160];
    std::snprintf(detail, sizeof detail, "max rel diff=%.2e",
                  measured(besov, "norms.pq_coincidence_max_rel"));
    line("norm coincidence at p = q", ok, detail);
  }

  // 8. Convolution inequality: Young bound for p,q >= 1, delta in {1,2};
  //    frozen regression bound for p = 1/2.
  {
    int n_young = 0;
    bool ok = prefix_pass(conv, "conv.young_ratio.", &n_young) &&
              named_pass(conv, "conv.p_half_regression_max") && n_young == 8;
    char detail[160];
    std::snprintf(detail, sizeof detail, "%d Young cells, p=1/2 max=%.4f", n_young,
                  measured(conv, "conv.p_half_regression_max"));
    line("convolution inequality bounds", ok, detail);
  }

  // 9. Disjoint-sum inequality: ratio <= ||chi||_r (1 + 1e-10) for the
  //    compact bump, r in {1, 2, inf}.
  {
    bool ok = named_pass(disjoint, "disjoint.single_term_rel_err") &&
              named_pass(disjoint, "disjoint.compact_ratio_r1") &&
              named_pass(disjoint, "disjoint.compact_ratio_r2") &&
              named_pass(disjoint, "disjoint.compact_ratio_rinf") &&
              named_pass(disjoint, "disjoint.phi5_r1_regression_max") &&
              named_pass(disjoint, "disjoint.phi5_rhalf_regression_max");
    char detail[160];
    std::snprintf(detail, sizeof detail, "compact r1=%.4f r2=%.4f rinf=%.4f",
                  measured(disjoint, "disjoint.compact_ratio_r1"),
                  measured(disjoint, "disjoint.compact_ratio_r2"),
                  measured(disjoint, "disjoint.compact_ratio_rinf"));
    line("disjoint translate sums", ok, detail);
  }

  // 10. Vector-valued failure: growth agreement within 30% for q in {1,4},
  //     q = 2 ratio inside [0.5, 2].
  {
    bool ok = named_pass(vv, "vv.growth_agreement_err.q1") &&
              named_pass(vv, "vv.growth_agreement_err.q4") &&
              named_pass(vv, "vv.q2_ratio_min") && named_pass(vv, "vv.q2_ratio_max");
    char detail[160];
    std::snprintf(detail, sizeof detail, "q1 err=%.1f%% q4 err=%.1f%% q2 ratio=%.3f",
                  100.0 * measured(vv, "vv.growth_agreement_err.q1"),
                  100.0 * measured(vv, "vv.growth_agreement_err.q4"),
                  measured(vv, "vv.q2_ratio_min"));
    line("vector-valued failure growth", ok, detail);
  }

  // 11. Determinism (identical config + seed => byte-identical CSVs) and the
  //     full default suite under 5 minutes.
  {
    ExperimentConfig reduced = parse_config_text(R"(
      L = 64
      N = 65536
      Jmax = 8
      spacing = 2
      norms = 0,1,2; 0,0.5,1; 0,2,1; 0,inf,1
      J_sweep = 4, 6
      seed = 424242
    )");
    namespace fs = std::filesystem;
    fs::path base = fs::temp_directory_path() / "lplab_acceptance";
    fs::remove_all(base);
    std::string rep_a = write_artifacts(run_all(reduced), (base / "a").string());
    std::string rep_b = write_artifacts(run_all(reduced), (base / "b").string());
    bool identical = rep_a == rep_b;
    int n_files = 0;
    for (const auto& entry : fs::directory_iterator(base / "a")) {
      ++n_files;
      identical = identical &&
                  read_file(entry.path()) == read_file(base / "b" / entry.path().filename());
    }
    bool ok = identical && n_files >= 5 && suite_seconds < 300.0;
    char detail[160];
    std::snprintf(detail, sizeof detail, "%d files byte-identical, default suite %.1fs", n_files,
                  suite_seconds);
    line("determinism + runtime budget", ok, detail);
  }

  std::printf("ACCEPTANCE: %s (default experiment wall times:", g_all_ok ? "11/11 PASS" : "FAIL");
  for (const std::string& name : experiment_names())
    std::printf(" %s=%.1fs", name.c_str(), dur[name]);
  std::printf(")\n");
  return g_all_ok ? 0 : 1;
}
