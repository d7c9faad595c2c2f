// Experiment driver: run named experiments against a key-value config and
// emit deterministic CSV tables plus a pass/fail report. Exit code 0 iff
// every enabled check passes.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "lplab/experiment.hpp"

namespace {

int run(const std::string& experiment, const std::string& config_path, const std::string& out_dir,
        std::uint64_t seed, bool have_seed) {
  lplab::ExperimentConfig cfg;
  if (!config_path.empty()) cfg = lplab::parse_config_file(config_path);
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (have_seed) cfg.seed = seed;

  std::vector<lplab::ExperimentResult> results;
  if (experiment == "all") {
    results = lplab::run_all(cfg);
  } else {
    results.push_back(lplab::run_experiment(cfg, experiment));
  }
  std::string report = lplab::write_artifacts(results, cfg.out_dir);
  std::cout << report;

  for (const auto& r : results)
    if (!r.all_pass()) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Littlewood-Paley / Besov / Triebel-Lizorkin numerical laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "key = value config file");
  app.add_option("--out", out_dir, "output directory (overrides the config's 'out')");
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized checks (overrides config)");

  std::vector<std::string> names(lplab::experiment_names().begin(),
                                 lplab::experiment_names().end());
  names.push_back("all");
  for (const auto& name : names) {
    app.add_subcommand(name, "run the '" + name + "' experiment")->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    std::string chosen = app.get_subcommands().front()->get_name();
    return run(chosen, config_path, out_dir, seed, seed_opt->count() > 0);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
