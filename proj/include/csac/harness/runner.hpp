#pragma once

#include <filesystem>
#include <memory>
#include <optional>

#include "csac/harness/config.hpp"
#include "csac/metrics/metrics.hpp"

namespace csac::harness {

using agent::SacAgent;
using interventions::InterventionConfig;

/// Streaming metric recorder for one run. Serializable so a resumed run
/// reproduces the complete CSVs bit-exactly.
class RunRecorder {
 public:
  RunRecorder(int obs_dim, long cadence);

  void observe_step(long step, const Vec& state, double reward_original, double reward_learn,
                    envs::ResetEvent event, const SacAgent& agent, double eta_q);

  const metrics::MetricSeries& avg_reward() const { return avg_reward_; }
  const metrics::MetricSeries& avg_reward_original() const { return avg_reward_original_; }
  const metrics::MetricSeries& rbar() const { return rbar_; }
  const metrics::MetricSeries& alpha() const { return alpha_; }
  const metrics::MetricSeries& eta_q() const { return eta_q_; }
  const metrics::MetricSeries& variance() const { return state_variance_; }
  const std::vector<std::pair<long, double>>& returns() const { return returns_; }
  long reset_count() const { return reset_count_; }

  /// Mean of the complete original-reward windows (whole-period average
  /// performance).
  double average_performance() const;

  nlohmann::json to_json() const;
  void from_json(const nlohmann::json& j);

 private:
  long cadence_;
  metrics::WindowAverage learn_acc_, orig_acc_;
  metrics::EpisodeReturns return_acc_;
  metrics::BlockVariance var_acc_;
  metrics::MetricSeries avg_reward_, avg_reward_original_, rbar_, alpha_, eta_q_, state_variance_;
  std::vector<std::pair<long, double>> returns_;
  long reset_count_ = 0;
};

/// One Algorithm-1 style training loop binding agent, environment,
/// interventions and metrics. Strictly sequential; all randomness flows
/// through the named streams.
class Trainer {
 public:
  Trainer(const ExperimentConfig& cfg, std::uint64_t seed);

  /// Execute one environment step plus (post warm-up) one update sweep.
  void step(RunRecorder* recorder);

  long steps_done() const { return t_; }
  const ExperimentConfig& config() const { return cfg_; }
  SacAgent& agent() { return *agent_; }
  envs::Env& env() { return *env_; }
  RngStreams& streams() { return streams_; }
  interventions::ToggleState& toggle() { return toggle_; }
  std::optional<interventions::RndState>& rnd() { return rnd_; }
  const Vec& current_obs() const { return obs_; }

  // Last-update diagnostics (for divergence dumps and tests).
  double last_critic_loss() const { return last_critic_loss_; }
  double last_policy_objective() const { return last_policy_objective_; }

  nlohmann::json checkpoint_json(const RunRecorder* recorder) const;
  void restore_checkpoint(const nlohmann::json& j, RunRecorder* recorder);

 private:
  void update_sweep();

  ExperimentConfig cfg_;
  RngStreams streams_;
  std::unique_ptr<envs::Env> env_;
  std::unique_ptr<SacAgent> agent_;
  interventions::ToggleState toggle_;
  std::optional<interventions::RndState> rnd_;
  Vec obs_;
  long t_ = 0;

  // per-step scratch published to the recorder
  double last_reward_original_ = 0.0, last_reward_learn_ = 0.0;
  envs::ResetEvent last_event_ = envs::ResetEvent::None;
  Vec last_state_;
  double last_critic_loss_ = 0.0, last_policy_objective_ = 0.0;
};

struct RunArtifacts {
  std::filesystem::path dir;
  std::string fingerprint;
  std::uint64_t seed = 0;
  double average_performance = 0.0;
};

/// Executes a full run, streaming metrics and writing CSVs, manifest and
/// checkpoint under `out_dir`. Deterministic given (config, seed). On
/// numeric divergence writes a diagnostic dump and rethrows NumericError.
RunArtifacts run_experiment(const ExperimentConfig& cfg, std::uint64_t seed,
                            const std::filesystem::path& out_dir,
                            const std::optional<std::filesystem::path>& resume_from = {});

void write_checkpoint(const std::filesystem::path& file, const Trainer& trainer,
                      const RunRecorder& recorder);

}  // namespace csac::harness
