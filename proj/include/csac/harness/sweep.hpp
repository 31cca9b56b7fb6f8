#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "csac/harness/config.hpp"
#include "csac/harness/runner.hpp"
#include "csac/metrics/metrics.hpp"

namespace csac::harness {

struct GridAxis {
  std::string key;
  std::vector<std::string> values;
};

/// "key=v1,v2,v3" -> axis. Keys resolve like config keys.
GridAxis parse_grid_axis(const std::string& text);

struct SweepCellResult {
  std::vector<std::pair<std::string, std::string>> assignment;  // grid key -> value
  std::uint64_t seed = 0;
  std::string fingerprint;
  double average_performance = 0.0;
  bool ok = false;
  std::string error;
  std::string dir;
};

struct SweepResult {
  std::vector<SweepCellResult> cells;
};

/// Cross product of grid axes x seeds; independent cells may run on worker
/// threads. A failing cell is recorded and the sweep continues. Results are
/// written under out_root (per-cell run dirs plus sweep_summary.csv).
SweepResult run_sweep(const std::string& config_text, const std::vector<GridAxis>& grid,
                      const std::vector<std::uint64_t>& seeds,
                      const std::filesystem::path& out_root, int jobs);

/// Scans `dir` recursively for run manifests, groups by config fingerprint
/// and reports min/median/max runs per group. Also writes summary.csv.
struct SummaryGroup {
  std::string fingerprint;
  std::vector<metrics::RunSummary> runs;
  metrics::RunAggregate aggregate;
};
std::vector<SummaryGroup> summarize_dir(const std::filesystem::path& dir);

}  // namespace csac::harness
