#pragma once

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "csac/common.hpp"
#include "csac/rng.hpp"

namespace csac::envs {

enum class ResetEvent { None, TimeBased, StateBased };

inline const char* to_string(ResetEvent e) {
  switch (e) {
    case ResetEvent::TimeBased: return "time_based";
    case ResetEvent::StateBased: return "state_based";
    default: return "none";
  }
}

/// Result of one environment step. `reward_modified` is the learning reward
/// after the configured transformation; `reward_original` is what return
/// reporting uses. `post_reset_observation` is present iff a reset fired.
struct StepOutcome {
  Vec next_observation;
  double reward_modified = 0.0;
  double reward_original = 0.0;
  ResetEvent reset_event = ResetEvent::None;
  std::optional<Vec> post_reset_observation;
};

struct ReacherParams {
  double dt = 0.05;
  double link1 = 0.1, link2 = 0.1;
  double torque_gain = 12.0;   // joint acceleration per unit action
  double damping = 1.0;        // velocity decay rate (1/s)
  double vel_limit = 6.0;      // |joint velocity| cap (rad/s)
  double base_joint_limit = 3.0;
  double d_thresh = 0.04;      // success: fingertip-goal distance (m)
  double v_thresh = 0.15;      // success: fingertip speed (m/s)
  double reach_reward = 100.0;
  double goal_radius_max = 0.19;  // goals stay strictly inside the workspace
  double init_noise = 0.1;
};

struct CorridorParams {
  double dt = 0.02;
  double half_width = 0.5;
  double accel_gain = 2.0;     // longitudinal acceleration per unit action
  double yaw_gain = 2.0;       // heading rate per unit action (rad/s)
  double damping = 1.0;
  double flip_impact_speed = 0.3;  // lateral speed at wall contact that flips
  double ctrl_cost = 0.1;
  double alive_bonus = 1.0;    // the removable constant reward term
  double init_noise = 0.1;
};

struct PendulumParams {
  double dt = 0.02;
  double gravity = 9.81;
  double torque_gain = 20.0;
  double damping = 0.1;
  double vel_limit = 8.0;
  double balance_threshold = 0.2;  // radians from vertical for reward 1
  double init_noise = 0.1;
};

struct EnvConfig {
  std::string task = "pendulum";  // pendulum | reacher | corridor
  long time_reset_period = 0;     // 0 disables time-based resets
  bool state_reset_enabled = true;
  double reset_penalty = 0.0;
  bool remove_constant_term = false;
  ReacherParams reacher;
  CorridorParams corridor;
  PendulumParams pendulum;
};

/// reward_modified = reward_original - constant_term (if configured)
///                   - reset_penalty (state-based resets only).
double transform_reward(double reward_original, ResetEvent event, const EnvConfig& cfg,
                        double constant_term);

/// Success predicate of the reaching task: both the fingertip-goal distance
/// and the fingertip speed must be under their thresholds.
bool reach_success(double fingertip_goal_distance, double fingertip_speed,
                   const ReacherParams& p);

class Env {
 public:
  virtual ~Env() = default;
  virtual int obs_dim() const = 0;
  virtual int action_dim() const = 0;

  /// Full initialization (embodiment + world entities such as goals).
  virtual void init(Rng& rng) = 0;
  virtual Vec observation() const = 0;

  /// Advance one step. `step_index` is 1-based; time resets fire exactly
  /// when step_index % period == 0. State-based resets preempt time-based
  /// ones on the same step. Out-of-range action components are clamped and
  /// counted, not rejected.
  virtual StepOutcome step(const Vec& action, long step_index, Rng& rng) = 0;

  /// Value of the removable constant reward term (0 when the task has none).
  virtual double constant_reward_term() const { return 0.0; }

  virtual nlohmann::json state_to_json() const = 0;
  virtual void state_from_json(const nlohmann::json& j) = 0;

  long clamp_warnings() const { return clamp_warnings_; }

 protected:
  Vec clamp_action(const Vec& a) {
    Vec c = a;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      if (c(i) < -1.0 || c(i) > 1.0) {
        c(i) = std::min(1.0, std::max(-1.0, c(i)));
        ++clamp_warnings_;
      }
    }
    return c;
  }
  long clamp_warnings_ = 0;
};

std::unique_ptr<Env> make_env(const EnvConfig& cfg);

}  // namespace csac::envs
