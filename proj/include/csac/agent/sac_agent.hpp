#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "csac/agent/gaussian_policy.hpp"
#include "csac/agent/replay_buffer.hpp"
#include "csac/approx/adam.hpp"
#include "csac/approx/mlp.hpp"

namespace csac::agent {

using approx::AdamState;
using approx::MlpGrads;
using approx::MlpParams;
using approx::NormMode;
using approx::ScalarAdam;

enum class AlgoMode { Episodic, Continuing };

struct SacConfig {
  int obs_dim = 0;
  int action_dim = 0;
  int hidden_layers = 2;
  int hidden_units = 256;
  NormMode actor_norm = NormMode::None;
  NormMode critic_norm = NormMode::None;
  AlgoMode mode = AlgoMode::Continuing;

  double gamma = 0.99;
  double tau = 0.005;
  double lr_actor = 3e-4;
  double lr_critic = 1e-4;
  double lr_alpha = 1e-4;
  double avg_reward_step = 3e-4;  // alpha_Rbar
  double init_alpha = 1.0;
  double target_entropy = std::numeric_limits<double>::quiet_NaN();  // NaN: use -action_dim

  int batch_size = 256;
  std::size_t buffer_capacity = 1'000'000;
  int warmup_steps = 1000;

  PolicyHeadConfig head;
};

/// All learnable state of one agent. Targets trail the critics by Polyak
/// averaging only.
struct SacAgent {
  SacConfig cfg;

  MlpParams actor, q1, q2, q1_target, q2_target;
  AdamState actor_opt, q1_opt, q2_opt;
  double log_alpha = 0.0;
  ScalarAdam alpha_opt;
  double avg_reward = 0.0;  // Rbar, init 0
  double target_entropy = 0.0;

  ReplayBuffer buffer;

  long env_steps = 0;
  long update_steps = 0;
  bool alpha_tuning_paused = false;  // set by the net-reset-alpha variant

  explicit SacAgent(const SacConfig& c, Rng& init_rng);

  double alpha() const { return std::exp(log_alpha); }

  /// Behavior action from the current policy.
  ActionSample act(const Vec& obs, Rng& rng) const;

  void reinit_networks(Rng& init_rng);  // actor+critics+targets+optimizers
  void reinit_critics(Rng& init_rng);   // fresh random critics (Q probes)
};

/// Rbar EMA: (1 - step) * rbar + step * reward.
double update_average_reward(double rbar, double reward, double step_size);

/// Builds the transition stored in continuing mode when a state-based reset
/// fires: next state is the post-reset observation, no terminal flag, and
/// the failure state itself is discarded.
Transition rewrite_reset_transition(const Vec& s_prev, const Vec& a_prev,
                                    double reward_with_penalty, const Vec& s_post_reset);

// ---- Losses -------------------------------------------------------------

struct CriticLossResult {
  double loss = 0.0;
  MlpGrads d_q1, d_q2;
  Vec targets;  // per-sample TD targets (diagnostics / oracles)
};

/// Squared differential TD loss, both critics, semi-gradient (nothing flows
/// through the target term). `next_noise` (A x B) drives the fresh next
/// action sample; `intrinsic` is an optional per-sample bonus added to the
/// stored rewards inside the target; `alpha_override` replaces the learned
/// temperature inside the target when set (used by the temperature toggle).
CriticLossResult critic_loss(const SacAgent& agent, const Batch& batch, const Mat& next_noise,
                             const Vec* intrinsic = nullptr,
                             const double* alpha_override = nullptr);

/// What the generic policy objective should contain:
///   J = mean[ q_coef * min_j Q_j(s, a) - entropy_coef * log pi(a|s)
///             - action_l2_penalty * ||a||_2 ]
/// with a drawn by reparameterization from the actor.
struct PolicyObjectiveSpec {
  bool include_q = true;
  double q_coef = 1.0;
  double entropy_coef = 0.0;                 // alpha-like coefficient
  std::optional<double> entropy_sign_target; // signed alpha^s mode (entropy-only probe)
  double action_l2_penalty = 0.0;
  /// When set, called with this batch's fresh-action min-critic values
  /// before the objective is formed; its return value replaces q_coef.
  /// Lets the Q-scale EMA update on the batch that the objective then uses.
  std::function<double(const Vec& q_min)> q_coef_hook;
};

struct PolicyObjectiveResult {
  double objective = 0.0;      // value of J (ascent direction)
  MlpGrads d_actor;            // gradient of J w.r.t. actor params
  Vec log_probs;               // per-sample log pi of the fresh actions
  double mean_log_prob = 0.0;
  Vec q_min;                   // per-sample min-critic values (empty if !include_q)
};

PolicyObjectiveResult policy_objective_core(const SacAgent& agent, const Mat& states,
                                            const Mat& noise, const PolicyObjectiveSpec& spec);

/// Standard SAC policy objective: J = mean[min Q - alpha log pi].
PolicyObjectiveResult policy_objective(const SacAgent& agent, const Mat& states,
                                       const Mat& noise);

struct TemperatureObjective {
  double objective = 0.0;   // J(alpha) = mean[-alpha (log pi + Hbar)]
  double d_alpha = 0.0;     // dJ/d alpha = -mean(log pi + Hbar)
};

TemperatureObjective temperature_objective(double alpha, const Vec& log_probs,
                                           double target_entropy);

}  // namespace csac::agent
