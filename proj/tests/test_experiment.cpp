#include "test_util.hpp"

#include "lplab/experiment.hpp"

using namespace lplab;
using namespace lplab::testing;

namespace {

// Reduced configuration for driver-level tests.
const char* kTinyCfg = R"(
# tiny setup
L = 64
N = 32768        # Nyquist 256 -> Jmax <= 7
Jmax = 7
spacing = 2
norms = 0,1,2; 0,2,1
J_sweep = 3, 5
seed = 99
)";

}  // namespace

TEST_CASE("config parsing: defaults, overrides, inf") {
  ExperimentConfig d;
  CHECK(d.N == (1 << 20));
  CHECK(d.jmax == 12);
  CHECK(d.norms.size() == 4);
  CHECK(std::isinf(d.norms[3].p));

  ExperimentConfig c = parse_config_text(kTinyCfg);
  CHECK(c.L == 64.0);
  CHECK(c.N == 32768);
  CHECK(c.jmax == 7);
  CHECK(c.norms.size() == 2);
  CHECK(c.j_sweep == std::vector<int>{3, 5});
  CHECK(c.seed == 99);

  ExperimentConfig ci = parse_config_text("norms = 1.5,inf,2\n");
  CHECK(std::isinf(ci.norms[0].p));
  CHECK(ci.norms[0].s == 1.5);
}

TEST_CASE("config parsing: unknown keys and malformed values are named errors") {
  CHECK_THROWS_WITH_AS(parse_config_text("bogus = 3\n"), doctest::Contains("bogus"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("J_sweep = 6, 4\n"), doctest::Contains("ascending"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("eps0 = fast\n"), doctest::Contains("eps0"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("cases = maybe\n"), doctest::Contains("cases"),
                       std::invalid_argument);
  CHECK_THROWS(parse_config_text("norms = 1,2\n"));
  CHECK_THROWS(parse_config_text("just some text\n"));
}

TEST_CASE("norm table CSV: exact header, row count, round trip") {
  std::string header =
      "experiment,case,s,p,q,J,besov_f,tl_f,besov_Tf,tl_Tf,oracle_tl_Tf_lo,oracle_tl_Tf_hi,"
      "K_emp,boundary_ok\n";
  CHECK(norm_table_csv({}) == header);

  NormTableRow row;
  row.experiment = "tl-diverge";
  row.case_tag = "PLT";
  row.s = 0.0;
  row.p = 0.5;
  row.q = INFINITY;
  row.J = 10;
  row.besov_f = 1.234567890123456;
  row.tl_f = 3.3;
  row.besov_tf = 7.0 / 3.0;
  row.tl_tf = 1e-7;
  row.oracle_tl_tf_lo = 0.9;
  row.oracle_tl_tf_hi = 2.1;
  row.k_emp = 2;
  row.boundary_ok = true;
  std::vector<NormTableRow> rows{row};
  std::string csv = norm_table_csv(rows);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);

  auto parsed = parse_norm_table_csv(csv);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].experiment == "tl-diverge");
  CHECK(parsed[0].case_tag == "PLT");
  CHECK(std::isinf(parsed[0].q));
  CHECK(parsed[0].J == 10);
  CHECK(rel_err(parsed[0].besov_f, row.besov_f) <= 1e-11);
  CHECK(rel_err(parsed[0].tl_tf, row.tl_tf) <= 1e-11);
  CHECK(parsed[0].k_emp == 2);
  CHECK(parsed[0].boundary_ok);
}

TEST_CASE("experiments are deterministic given config and seed") {
  ExperimentConfig cfg = parse_config_text(kTinyCfg);
  ExperimentResult a = run_experiment(cfg, "tl-diverge");
  ExperimentResult b = run_experiment(cfg, "tl-diverge");
  CHECK(norm_table_csv(a.rows) == norm_table_csv(b.rows));
  CHECK(report_text(std::vector<ExperimentResult>{a}) ==
        report_text(std::vector<ExperimentResult>{b}));

  ExperimentResult fa = run_experiment(cfg, "family-check");
  ExperimentResult fb = run_experiment(cfg, "family-check");
  REQUIRE(fa.artifacts.size() == fb.artifacts.size());
  for (std::size_t i = 0; i < fa.artifacts.size(); ++i) {
    CHECK(fa.artifacts[i].first == fb.artifacts[i].first);
    CHECK(fa.artifacts[i].second == fb.artifacts[i].second);
  }
}

TEST_CASE("tl-diverge emits one row per (config, J) pair") {
  ExperimentConfig cfg = parse_config_text(kTinyCfg);
  ExperimentResult r = run_experiment(cfg, "tl-diverge");
  CHECK(r.rows.size() == cfg.norms.size() * cfg.j_sweep.size());
  for (const auto& row : r.rows) {
    CHECK(row.oracle_tl_tf_lo <= row.oracle_tl_tf_hi);
    CHECK(row.boundary_ok);
  }
}

TEST_CASE("infeasible geometry surfaces the constituent module's error") {
  ExperimentConfig cfg = parse_config_text(kTinyCfg);
  cfg.jmax = 12;  // Nyquist of N = 32768 at L = 64 resolves only band 7
  CHECK_THROWS_WITH_AS(run_experiment(cfg, "family-check"), doctest::Contains("Nyquist"),
                       std::invalid_argument);
  cfg.jmax = 7;
  cfg.spacing = 8.0;  // translations spill out of the half-period
  CHECK_THROWS_WITH_AS(run_experiment(cfg, "tl-diverge"), doctest::Contains("half-period"),
                       std::invalid_argument);
}

TEST_CASE("tl-diverge marks p = q not applicable instead of failing") {
  ExperimentConfig cfg = parse_config_text(kTinyCfg);
  cfg.norms = {{0.0, 2.0, 2.0}};
  ExperimentResult r = run_experiment(cfg, "tl-diverge");
  REQUIRE(r.properties.size() == 1);
  CHECK(r.properties[0].pass);
  CHECK(r.properties[0].note == "not applicable (p=q)");
  CHECK(r.rows.empty());
}

TEST_CASE("run_experiment rejects unknown experiment names") {
  ExperimentConfig cfg = parse_config_text(kTinyCfg);
  CHECK_THROWS_WITH_AS(run_experiment(cfg, "frobnicate"), doctest::Contains("frobnicate"),
                       std::invalid_argument);
}

TEST_CASE("report text carries one line per property with PASS/FAIL") {
  ExperimentConfig cfg = parse_config_text(kTinyCfg);
  std::vector<ExperimentResult> rs{run_experiment(cfg, "family-check")};
  std::string rep = report_text(rs);
  CHECK(rep.find("family.telescoping_max_err: measured=") != std::string::npos);
  CHECK(rep.find("PASS") != std::string::npos);
  CHECK(rep.find("== summary ==") != std::string::npos);
}
