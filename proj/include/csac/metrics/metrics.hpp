#pragma once

#include <string>
#include <utility>
#include <vector>

#include "csac/common.hpp"

namespace csac::metrics {

/// (step, value) points at a fixed cadence.
struct MetricSeries {
  std::string name;
  std::vector<std::pair<long, double>> points;
};

/// Mean reward over each complete trailing window, emitted every `cadence`
/// steps; the value at step c*k covers steps (c*(k-1), c*k]. Incomplete
/// trailing windows are dropped.
MetricSeries window_average_reward(const std::vector<double>& rewards, long cadence = 1000);

/// Undiscounted sum of original rewards between consecutive resets, one
/// entry per reset (the trailing partial segment is dropped). `reset_steps`
/// are 1-based step indices, sorted ascending.
std::vector<std::pair<long, double>> episode_returns(const std::vector<double>& original_rewards,
                                                     const std::vector<long>& reset_steps);

/// Per-dimension sample variance (n-1 denominator) within non-overlapping
/// blocks, summed across dimensions; one value per complete block.
MetricSeries state_variance(const std::vector<Vec>& observations, long block = 1000);

struct RunSummary {
  std::uint64_t seed = 0;
  std::string config_fingerprint;
  double average_performance = 0.0;
  std::string dir;
};

/// Sorts ascending by whole-period average performance and reports the
/// first, ceil(n/2)-th and last run (so the 5th of 10).
struct RunAggregate {
  RunSummary min_run, median_run, max_run;
};
RunAggregate aggregate_runs(std::vector<RunSummary> runs);

// ---- Streaming counterparts ----------------------------------------------
// The run loop records through these so full streams never need to stay in
// memory; they must produce output identical to the batch functions above.

class WindowAverage {
 public:
  explicit WindowAverage(long cadence) : cadence_(cadence) {}
  void observe(long step, double reward, MetricSeries& out) {
    sum_ += reward;
    count_ += 1;
    if (count_ == cadence_) {
      out.points.emplace_back(step, sum_ / static_cast<double>(cadence_));
      sum_ = 0.0;
      count_ = 0;
    }
  }
  double sum() const { return sum_; }
  long count() const { return count_; }
  void restore(double sum, long count) { sum_ = sum; count_ = count; }

 private:
  long cadence_;
  double sum_ = 0.0;
  long count_ = 0;
};

class EpisodeReturns {
 public:
  void observe(long step, double original_reward, bool reset,
               std::vector<std::pair<long, double>>& out) {
    sum_ += original_reward;
    if (reset) {
      out.emplace_back(step, sum_);
      sum_ = 0.0;
    }
  }
  double pending() const { return sum_; }
  void restore(double sum) { sum_ = sum; }

 private:
  double sum_ = 0.0;
};

class BlockVariance {
 public:
  BlockVariance(int dim, long block) : block_(block), sum_(Vec::Zero(dim)), sumsq_(Vec::Zero(dim)) {}
  void observe(long step, const Vec& obs, MetricSeries& out) {
    sum_ += obs;
    sumsq_ += obs.cwiseProduct(obs);
    count_ += 1;
    if (count_ == block_) {
      const double n = static_cast<double>(block_);
      // sum over dims of (sum x^2 - n mean^2) / (n - 1)
      const double total =
          ((sumsq_.array() - sum_.array().square() / n) / (n - 1.0)).sum();
      out.points.emplace_back(step, total);
      sum_.setZero();
      sumsq_.setZero();
      count_ = 0;
    }
  }
  void save(Vec& sum, Vec& sumsq, long& count) const { sum = sum_; sumsq = sumsq_; count = count_; }
  void restore(const Vec& sum, const Vec& sumsq, long count) { sum_ = sum; sumsq_ = sumsq; count_ = count; }

 private:
  long block_;
  Vec sum_, sumsq_;
  long count_ = 0;
};

}  // namespace csac::metrics
