#include "csac/metrics/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace csac::metrics {

MetricSeries window_average_reward(const std::vector<double>& rewards, long cadence) {
  MetricSeries out;
  out.name = "window_average_reward";
  WindowAverage acc(cadence);
  long step = 0;
  for (double r : rewards) acc.observe(++step, r, out);
  return out;
}

std::vector<std::pair<long, double>> episode_returns(const std::vector<double>& original_rewards,
                                                     const std::vector<long>& reset_steps) {
  std::vector<std::pair<long, double>> out;
  EpisodeReturns acc;
  std::size_t next_reset = 0;
  for (std::size_t i = 0; i < original_rewards.size(); ++i) {
    const long step = static_cast<long>(i) + 1;
    const bool reset = next_reset < reset_steps.size() && reset_steps[next_reset] == step;
    if (reset) ++next_reset;
    acc.observe(step, original_rewards[i], reset, out);
  }
  return out;
}

MetricSeries state_variance(const std::vector<Vec>& observations, long block) {
  MetricSeries out;
  out.name = "state_variance";
  if (observations.empty()) return out;
  BlockVariance acc(static_cast<int>(observations.front().size()), block);
  long step = 0;
  for (const Vec& o : observations) acc.observe(++step, o, out);
  return out;
}

RunAggregate aggregate_runs(std::vector<RunSummary> runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate_runs: no runs");
  std::stable_sort(runs.begin(), runs.end(), [](const RunSummary& a, const RunSummary& b) {
    return a.average_performance < b.average_performance;
  });
  const std::size_t n = runs.size();
  const std::size_t median_idx = (n + 1) / 2 - 1;  // ceil(n/2), 1-based -> 0-based
  return RunAggregate{runs.front(), runs[median_idx], runs.back()};
}

}  // namespace csac::metrics
