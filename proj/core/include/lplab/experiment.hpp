#pragma once

#include <cstdint>
#include <string>

#include "lplab/counterexample.hpp"
#include "lplab/rng.hpp"

namespace lplab {

struct NormTriple {
  double s = 0.0;
  double p = 1.0;
  double q = 2.0;
};

// Flat key-value experiment configuration. Defaults give the desk-scale
// setup: 1D torus of period 64 at N = 2^20 (Nyquist 8192, resolving
// band 12), spacing-2 translations (mu0 = 1).
struct ExperimentConfig {
  int n = 1;
  double L = 64.0;
  std::int64_t N = 1 << 20;
  int jmax = 12;
  double eps0 = 0.1;
  double spacing = 2.0;
  std::vector<NormTriple> norms = {
      {0.0, 1.0, 2.0}, {0.0, 0.5, 1.0}, {0.0, 2.0, 1.0}, {0.0, INFINITY, 1.0}};
  std::string cases = "both";  // PLT | PGT | both
  std::vector<int> j_sweep = {4, 6, 8, 10};
  std::string out_dir = "out";
  std::uint64_t seed = 1u;
};

// Parse "key = value" lines ('#' comments, blank lines allowed) on top of
// the defaults. Unknown keys are hard errors naming the key. Recognized
// keys: n, L, N, Jmax, eps0, spacing, norms, cases, J_sweep, out, seed.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

struct NormTableRow {
  std::string experiment;
  std::string case_tag;  // PLT | PGT | RND
  double s = 0.0, p = 0.0, q = 0.0;
  int J = 0;
  double besov_f = 0.0, tl_f = 0.0, besov_tf = 0.0, tl_tf = 0.0;
  double oracle_tl_tf_lo = 0.0, oracle_tl_tf_hi = 0.0;
  int k_emp = -1;  // -1 when not applicable
  bool boundary_ok = true;
};

struct PropertyResult {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool upper = true;  // pass iff measured <= bound (else measured >= bound)
  bool pass = false;
  std::string note;   // extra context, e.g. "not applicable (p=q)"
};

struct ExperimentResult {
  std::string name;
  std::vector<NormTableRow> rows;
  std::vector<PropertyResult> properties;
  std::vector<std::pair<std::string, std::string>> artifacts;  // filename -> CSV payload
  bool all_pass() const;
  const PropertyResult* find(const std::string& property) const;
};

// family-check decay besov-bound tl-diverge multiplier disjoint-sum
// conv-ineq vector-valued
std::span<const std::string> experiment_names();

ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& name);
std::vector<ExperimentResult> run_all(const ExperimentConfig& cfg);

// NormTable CSV (fixed header, floats at 12 significant digits).
std::string norm_table_csv(std::span<const NormTableRow> rows);
std::vector<NormTableRow> parse_norm_table_csv(const std::string& csv);

// One line per property: name, measured, bound, PASS/FAIL.
std::string report_text(std::span<const ExperimentResult> results);

// Write norm_table.csv, report.txt, and per-experiment artifacts into
// out_dir (created if missing). Returns the report text.
std::string write_artifacts(std::span<const ExperimentResult> results, const std::string& out_dir);

}  // namespace lplab
