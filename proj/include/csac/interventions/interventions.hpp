#pragma once

#include <cmath>
#include <optional>

#include "csac/agent/sac_agent.hpp"
#include "csac/interventions/rnd.hpp"
#include "csac/interventions/toggle.hpp"

namespace csac::interventions {

using agent::PolicyObjectiveResult;
using agent::SacAgent;

// ---- Action penalties (Bjorck-style) -------------------------------------

/// r' = r - tau * ||a||_2^2, applied to the learning reward every step.
inline double action_penalty_reward(double reward, const Vec& action, double tau) {
  return reward - tau * action.squaredNorm();
}

// The ||a||_2 policy-objective penalty is folded into the policy objective
// via PolicyObjectiveSpec::action_l2_penalty (gradient -lambda a/||a||).

// ---- Intervention-specific policy objectives ------------------------------

/// J = mean[min Q / eta_Q - alpha_hat log pi / |A|]. `eta_q` must already
/// reflect this step's batch (update_qscale runs first).
inline PolicyObjectiveResult scaled_policy_objective(const SacAgent& a, const Mat& states,
                                                     const Mat& noise, double eta_q,
                                                     double alpha_hat,
                                                     double action_l2_penalty = 0.0) {
  agent::PolicyObjectiveSpec spec;
  spec.q_coef = 1.0 / eta_q;
  spec.entropy_coef = alpha_hat / static_cast<double>(a.cfg.action_dim);
  spec.action_l2_penalty = action_l2_penalty;
  return agent::policy_objective_core(a, states, noise, spec);
}

/// Entropy-only objective J = mean[-alpha^s log pi] with
/// alpha^s = alpha * sign(mean(log pi) + target); sign(0) = +1.
inline PolicyObjectiveResult entropy_only_objective(const SacAgent& a, const Mat& states,
                                                    const Mat& noise, double entropy_target) {
  agent::PolicyObjectiveSpec spec;
  spec.include_q = false;
  spec.entropy_coef = a.alpha();
  spec.entropy_sign_target = entropy_target;
  return agent::policy_objective_core(a, states, noise, spec);
}

// ---- Q-function probes ----------------------------------------------------

enum class QProbeMode { Learned, Fixed, ReinitEveryStep };

// ---- Fixed-distribution behavior override ---------------------------------

struct FixedDistConfig {
  bool enabled = false;
  double mu = 0.0;
  double sigma = 0.3;
};

/// Behavior action drawn as tanh(N(mu, sigma)) per dimension, ignoring the
/// policy outputs. Learning machinery is unaffected.
inline Vec fixed_dist_action(const FixedDistConfig& f, int action_dim, Rng& rng) {
  Vec a(action_dim);
  for (int d = 0; d < action_dim; ++d) a(d) = std::tanh(rng.normal(f.mu, f.sigma));
  return a;
}

// ---- Periodic network resets ----------------------------------------------

enum class NetResetVariant { None, Plain, ResetAlpha, ResetTargetEntropy };

struct NetResetConfig {
  NetResetVariant variant = NetResetVariant::None;
  long period = 10000;
};

/// Re-initializes actor, critics, targets and their optimizer states; the
/// replay buffer is preserved. Variants additionally touch the temperature:
///   Plain              - temperature untouched
///   ResetAlpha         - alpha ~ U[0.01, 1], auto-tuning paused afterwards
///   ResetTargetEntropy - Hbar ~ U[-|A|, 0.675 |A|], auto-tuning stays on
void network_reset(SacAgent& agent, NetResetVariant variant, Rng& init_rng);

// ---- Aggregate config snapshot used by the trainer ------------------------

struct ToggleConfig {
  bool enabled = false;
  double fixed_alpha = 0.02;
  long period = 100;
  double lr_alpha = 1e-3;
  // Substitute alpha-hat into the critic target as well. With the paused
  // temperature held at its initial value, leaving the learned alpha in the
  // target keeps a large entropy penalty inside Q and can freeze learning.
  bool alpha_in_target = true;
};

struct PenaltyConfig {
  double reward_tau = 0.0;    // ||a||^2 penalty on the reward
  double policy_lambda = 0.0; // ||a|| penalty inside the policy objective
};

enum class ObjectiveMode { Standard, EntropyOnly };

struct InterventionConfig {
  ToggleConfig toggle;
  RndConfig rnd;
  PenaltyConfig penalty;
  QProbeMode probe = QProbeMode::Learned;
  ObjectiveMode objective = ObjectiveMode::Standard;
  double entropy_only_target = -2.0;
  FixedDistConfig fixed_dist;
  NetResetConfig net_reset;
};

}  // namespace csac::interventions
