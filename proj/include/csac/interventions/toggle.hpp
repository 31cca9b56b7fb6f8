#pragma once

#include <vector>

#include "csac/common.hpp"

namespace csac::interventions {

/// Temperature-toggle bookkeeping. Performance is averaged over
/// non-overlapping reward periods; whenever the last complete period did
/// not improve on the one before it, the policy objective switches to the
/// fixed temperature and temperature learning pauses. The decision is
/// recomputed only at period boundaries.
struct ToggleState {
  long period_length = 100;
  double reward_accum = 0.0;
  long steps_in_period = 0;
  double prev_period_avg = 0.0;
  double last_period_avg = 0.0;
  int complete_periods = 0;
  bool hold_fixed = false;  // current decision
  double eta_q = 1.0;       // Q-scale EMA, >= 1 by construction

  /// Feed one learning reward; rolls the period over at the boundary.
  void observe_reward(double r) {
    reward_accum += r;
    steps_in_period += 1;
    if (steps_in_period >= period_length) {
      prev_period_avg = last_period_avg;
      last_period_avg = reward_accum / static_cast<double>(period_length);
      complete_periods += 1;
      reward_accum = 0.0;
      steps_in_period = 0;
      if (complete_periods >= 2) {
        hold_fixed = last_period_avg <= prev_period_avg;  // tie = not improving
      }
    }
  }
};

struct ToggleDecision {
  double alpha_hat;
  double lr_alpha_hat;
};

/// alpha-hat and the effective temperature step size for the current
/// period. Before two complete periods exist, the learned temperature and
/// its normal step size are used.
inline ToggleDecision toggle_decide(const ToggleState& t, double learned_alpha,
                                    double fixed_alpha, double lr_alpha) {
  if (t.complete_periods >= 2 && t.hold_fixed) return {fixed_alpha, 0.0};
  return {learned_alpha, lr_alpha};
}

/// Percentile by linear interpolation between order statistics
/// (position k/100 * (n-1) on the sorted values).
double percentile_linear(std::vector<double> values, double k);

/// eta' = 0.99 eta + 0.01 * max(P95 - P5, 1) over the batch of min-critic
/// values.
double update_qscale(double eta, const Vec& q_values);

}  // namespace csac::interventions
