// Command-line front end: run single experiments, sweeps, summaries and the
// fast invariant/oracle checks.
//
// Exit codes: 0 success, 1 usage error, 2 numeric divergence, 3 config error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>
#include <filesystem>
#include <iostream>

#include "csac/harness/runner.hpp"
#include "csac/harness/selfcheck.hpp"
#include "csac/harness/sweep.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"Continuing soft actor-critic experiment harness"};
  app.require_subcommand(1);

  // run
  std::string run_config;
  std::uint64_t run_seed = 0;
  bool run_seed_set = false;
  long run_steps = 0;
  std::string run_out;
  std::string resume_path;
  auto* run_cmd = app.add_subcommand("run", "Execute one experiment");
  run_cmd->add_option("config", run_config, "Config file")->required();
  run_cmd->add_option("--seed", run_seed, "Seed (overrides config)")
      ->each([&run_seed_set](const std::string&) { run_seed_set = true; });
  run_cmd->add_option("--steps", run_steps, "Total steps (overrides config)");
  run_cmd->add_option("--out", run_out, "Output directory (overrides config)");
  run_cmd->add_option("--resume", resume_path, "Resume from a checkpoint file");

  // sweep
  std::string sweep_config;
  std::vector<std::string> grid_args;
  int sweep_seeds = 5;
  std::string sweep_out;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  auto* sweep_cmd = app.add_subcommand("sweep", "Cross-product parameter sweep");
  sweep_cmd->add_option("config", sweep_config, "Config file")->required();
  sweep_cmd->add_option("--grid", grid_args, "Axis key=v1,v2,... (repeatable)")->required();
  sweep_cmd->add_option("--seeds", sweep_seeds, "Number of seeds (0..N-1)");
  sweep_cmd->add_option("--out", sweep_out, "Output root directory");
  sweep_cmd->add_option("--jobs", jobs, "Parallel worker threads");

  // summarize
  std::string summ_dir;
  auto* summ_cmd = app.add_subcommand("summarize", "Aggregate run artifacts in a directory");
  summ_cmd->add_option("dir", summ_dir, "Directory containing run outputs")->required();

  // check
  std::string check_dir;
  auto* check_cmd = app.add_subcommand("check", "Run the fast invariant/oracle suites");
  check_cmd->add_option("--workdir", check_dir, "Scratch directory for run-based checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run_cmd) {
      std::vector<std::pair<std::string, std::string>> overrides;
      if (run_steps > 0) overrides.emplace_back("run.total_steps", std::to_string(run_steps));
      const auto cfg = csac::harness::load_config_file(run_config, overrides);
      const std::uint64_t seed = run_seed_set ? run_seed : cfg.seed;
      const fs::path out = run_out.empty() ? fs::path(cfg.out_dir) : fs::path(run_out);
      std::optional<fs::path> resume;
      if (!resume_path.empty()) resume = fs::path(resume_path);
      const auto art = csac::harness::run_experiment(cfg, seed, out, resume);
      std::printf("run complete: dir=%s fingerprint=%s seed=%llu average_performance=%g\n",
                  art.dir.string().c_str(), art.fingerprint.c_str(),
                  static_cast<unsigned long long>(art.seed), art.average_performance);
      return 0;
    }
    if (*sweep_cmd) {
      std::vector<csac::harness::GridAxis> grid;
      for (const auto& g : grid_args) grid.push_back(csac::harness::parse_grid_axis(g));
      std::vector<std::uint64_t> seeds;
      for (int s = 0; s < sweep_seeds; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
      std::ifstream in(sweep_config);
      if (!in) throw csac::ConfigError("cannot open config file: " + sweep_config);
      std::stringstream ss;
      ss << in.rdbuf();
      const fs::path out = sweep_out.empty() ? fs::path("sweep_out") : fs::path(sweep_out);
      const auto result = csac::harness::run_sweep(ss.str(), grid, seeds, out, jobs);
      long failures = 0;
      for (const auto& c : result.cells)
        if (!c.ok) ++failures;
      std::printf("sweep complete: %zu cells, %ld failures, summary at %s\n",
                  result.cells.size(), failures, (out / "sweep_summary.csv").string().c_str());
      return 0;
    }
    if (*summ_cmd) {
      const auto groups = csac::harness::summarize_dir(summ_dir);
      for (const auto& g : groups) {
        std::printf("config %s  (%zu runs)\n", g.fingerprint.c_str(), g.runs.size());
        std::printf("  min    seed=%llu  avg=%g  (%s)\n",
                    static_cast<unsigned long long>(g.aggregate.min_run.seed),
                    g.aggregate.min_run.average_performance, g.aggregate.min_run.dir.c_str());
        std::printf("  median seed=%llu  avg=%g  (%s)\n",
                    static_cast<unsigned long long>(g.aggregate.median_run.seed),
                    g.aggregate.median_run.average_performance, g.aggregate.median_run.dir.c_str());
        std::printf("  max    seed=%llu  avg=%g  (%s)\n",
                    static_cast<unsigned long long>(g.aggregate.max_run.seed),
                    g.aggregate.max_run.average_performance, g.aggregate.max_run.dir.c_str());
      }
      return 0;
    }
    if (*check_cmd) {
      const fs::path workdir = check_dir.empty()
                                   ? fs::temp_directory_path() / "csac_check"
                                   : fs::path(check_dir);
      const auto results = csac::harness::run_fast_checks(workdir);
      bool all = true;
      for (const auto& r : results) {
        std::printf("%s  %2d: %s  [%s]\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
        all = all && r.passed;
      }
      return all ? 0 : 1;
    }
  } catch (const csac::NumericError& e) {
    std::fprintf(stderr, "numeric divergence: %s\n", e.what());
    return 2;
  } catch (const csac::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
