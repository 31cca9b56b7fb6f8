#include "csac/envs/env.hpp"

#include <cmath>

namespace csac::envs {

double transform_reward(double reward_original, ResetEvent event, const EnvConfig& cfg,
                        double constant_term) {
  double r = reward_original;
  if (cfg.remove_constant_term) r -= constant_term;
  if (event == ResetEvent::StateBased) r -= cfg.reset_penalty;
  return r;
}

bool reach_success(double fingertip_goal_distance, double fingertip_speed,
                   const ReacherParams& p) {
  return fingertip_goal_distance < p.d_thresh && fingertip_speed < p.v_thresh;
}

namespace {

double wrap_pi(double a) {
  a = std::fmod(a + M_PI, 2.0 * M_PI);
  if (a < 0) a += 2.0 * M_PI;
  return a - M_PI;
}

// ---- Reacher ------------------------------------------------------------
//
// Two-link planar arm, torque-scaled joint accelerations with viscous
// damping, semi-implicit Euler. The base joint tracks a cumulative angle
// hard-clamped to [-limit, limit]; the elbow is unbounded. The goal lives
// in the reachable disc and moves only on successful reaches.
class ReacherEnv final : public Env {
 public:
  explicit ReacherEnv(const EnvConfig& cfg) : cfg_(cfg), p_(cfg.reacher) {}

  int obs_dim() const override { return 11; }
  int action_dim() const override { return 2; }

  void init(Rng& rng) override {
    reset_embodiment(rng);
    sample_goal(rng);
  }

  Vec observation() const override {
    Vec o(11);
    const auto tip = fingertip();
    o << std::cos(q_(0)), std::sin(q_(0)), std::cos(q_(1)), std::sin(q_(1)),
        qd_(0) / p_.vel_limit, qd_(1) / p_.vel_limit,
        goal_(0) / 0.2, goal_(1) / 0.2,
        (tip(0) - goal_(0)) / 0.2, (tip(1) - goal_(1)) / 0.2,
        q_(0) / p_.base_joint_limit;
    return o;
  }

  StepOutcome step(const Vec& action, long step_index, Rng& rng) override {
    const Vec a = clamp_action(action);
    for (int i = 0; i < 2; ++i) {
      qd_(i) += (p_.torque_gain * a(i) - p_.damping * qd_(i)) * p_.dt;
      qd_(i) = std::min(p_.vel_limit, std::max(-p_.vel_limit, qd_(i)));
    }
    q_ += qd_ * p_.dt;
    if (q_(0) > p_.base_joint_limit) {
      q_(0) = p_.base_joint_limit;
      qd_(0) = 0.0;
    } else if (q_(0) < -p_.base_joint_limit) {
      q_(0) = -p_.base_joint_limit;
      qd_(0) = 0.0;
    }

    double reward = 0.0;
    const auto tip = fingertip();
    const double dist = (tip - goal_).norm();
    const double speed = fingertip_speed();
    if (reach_success(dist, speed, p_)) {
      reward = p_.reach_reward;
      sample_goal(rng);  // goal relocates only here, never on resets
    }

    StepOutcome out;
    out.reward_original = reward;
    out.next_observation = observation();
    if (cfg_.time_reset_period > 0 && step_index % cfg_.time_reset_period == 0) {
      out.reset_event = ResetEvent::TimeBased;
      reset_embodiment(rng);
      out.post_reset_observation = observation();
    }
    out.reward_modified = transform_reward(reward, out.reset_event, cfg_, 0.0);
    return out;
  }

  nlohmann::json state_to_json() const override {
    return {{"q", {q_(0), q_(1)}},
            {"qd", {qd_(0), qd_(1)}},
            {"goal", {goal_(0), goal_(1)}},
            {"clamp_warnings", clamp_warnings_}};
  }
  void state_from_json(const nlohmann::json& j) override {
    q_ << j["q"][0], j["q"][1];
    qd_ << j["qd"][0], j["qd"][1];
    goal_ << j["goal"][0], j["goal"][1];
    clamp_warnings_ = j["clamp_warnings"];
  }

 private:
  Eigen::Vector2d fingertip() const {
    const double q0 = q_(0), q01 = q_(0) + q_(1);
    return {p_.link1 * std::cos(q0) + p_.link2 * std::cos(q01),
            p_.link1 * std::sin(q0) + p_.link2 * std::sin(q01)};
  }
  double fingertip_speed() const {
    const double q0 = q_(0), q01 = q_(0) + q_(1);
    const double vx = -p_.link1 * std::sin(q0) * qd_(0) -
                      p_.link2 * std::sin(q01) * (qd_(0) + qd_(1));
    const double vy = p_.link1 * std::cos(q0) * qd_(0) +
                      p_.link2 * std::cos(q01) * (qd_(0) + qd_(1));
    return std::hypot(vx, vy);
  }
  void reset_embodiment(Rng& rng) {
    for (int i = 0; i < 2; ++i) {
      q_(i) = rng.uniform(-p_.init_noise, p_.init_noise);
      qd_(i) = rng.uniform(-p_.init_noise, p_.init_noise);
    }
  }
  void sample_goal(Rng& rng) {
    const double rmax = std::min(p_.goal_radius_max, p_.link1 + p_.link2);
    while (true) {
      const double x = rng.uniform(-rmax, rmax);
      const double y = rng.uniform(-rmax, rmax);
      if (x * x + y * y <= rmax * rmax) {
        goal_ << x, y;
        return;
      }
    }
  }

  EnvConfig cfg_;
  ReacherParams p_;
  Eigen::Vector2d q_{0, 0}, qd_{0, 0}, goal_{0.1, 0.1};
};

// ---- Corridor -----------------------------------------------------------
//
// Planar point-mass runner between two infinite walls. Action 0 accelerates
// along the heading, action 1 turns. Hitting a wall clamps the lateral
// position; an impact above the flip speed "flips" the runner, which either
// triggers a state-based reset or (with state resets disabled) zeroes speed
// and control authority until the next time-based reset.
class CorridorEnv final : public Env {
 public:
  explicit CorridorEnv(const EnvConfig& cfg) : cfg_(cfg), p_(cfg.corridor) {}

  int obs_dim() const override { return 5; }
  int action_dim() const override { return 2; }

  void init(Rng& rng) override { reset_embodiment(rng); }

  Vec observation() const override {
    Vec o(5);
    o << pos_(1) / p_.half_width, vel_(0) / 2.0, vel_(1) / 2.0,
        std::cos(heading_), std::sin(heading_);
    return o;
  }

  double constant_reward_term() const override { return p_.alive_bonus; }

  StepOutcome step(const Vec& action, long step_index, Rng& rng) override {
    const Vec a = clamp_action(action);
    bool flipped_now = false;
    if (!flipped_) {
      vel_(0) += (p_.accel_gain * a(0) * std::cos(heading_) - p_.damping * vel_(0)) * p_.dt;
      vel_(1) += (p_.accel_gain * a(0) * std::sin(heading_) - p_.damping * vel_(1)) * p_.dt;
      pos_ += vel_ * p_.dt;
      heading_ = wrap_pi(heading_ + p_.yaw_gain * a(1) * p_.dt);
      if (std::abs(pos_(1)) > p_.half_width) {
        pos_(1) = (pos_(1) > 0) ? p_.half_width : -p_.half_width;
        if (std::abs(vel_(1)) > p_.flip_impact_speed) {
          flipped_now = true;
        }
        vel_(1) = 0.0;
      }
    }

    const double reward =
        p_.alive_bonus + vel_(0) - p_.ctrl_cost * a.squaredNorm();

    StepOutcome out;
    out.reward_original = reward;
    if (flipped_now && cfg_.state_reset_enabled) {
      out.reset_event = ResetEvent::StateBased;  // wins over a time reset
    } else if (cfg_.time_reset_period > 0 && step_index % cfg_.time_reset_period == 0) {
      out.reset_event = ResetEvent::TimeBased;
    } else if (flipped_now) {
      flipped_ = true;  // no state resets: stay down, control zeroed
      vel_.setZero();
    }
    out.next_observation = observation();
    if (out.reset_event != ResetEvent::None) {
      reset_embodiment(rng);
      out.post_reset_observation = observation();
    }
    out.reward_modified = transform_reward(reward, out.reset_event, cfg_, p_.alive_bonus);
    return out;
  }

  nlohmann::json state_to_json() const override {
    return {{"pos", {pos_(0), pos_(1)}},
            {"vel", {vel_(0), vel_(1)}},
            {"heading", heading_},
            {"flipped", flipped_},
            {"clamp_warnings", clamp_warnings_}};
  }
  void state_from_json(const nlohmann::json& j) override {
    pos_ << j["pos"][0], j["pos"][1];
    vel_ << j["vel"][0], j["vel"][1];
    heading_ = j["heading"];
    flipped_ = j["flipped"];
    clamp_warnings_ = j["clamp_warnings"];
  }

 private:
  void reset_embodiment(Rng& rng) {
    pos_ << rng.uniform(-p_.init_noise, p_.init_noise),
        rng.uniform(-p_.init_noise, p_.init_noise);
    vel_.setZero();
    heading_ = rng.uniform(-p_.init_noise, p_.init_noise);
    flipped_ = false;
  }

  EnvConfig cfg_;
  CorridorParams p_;
  Eigen::Vector2d pos_{0, 0}, vel_{0, 0};
  double heading_ = 0.0;
  bool flipped_ = false;
};

// ---- Pendulum -----------------------------------------------------------
//
// Torque-actuated pendulum, angle measured from the upright position.
// Reward 1 while within the balance threshold of vertical. Resets hang it
// back down near pi.
class PendulumEnv final : public Env {
 public:
  explicit PendulumEnv(const EnvConfig& cfg) : cfg_(cfg), p_(cfg.pendulum) {}

  int obs_dim() const override { return 3; }
  int action_dim() const override { return 1; }

  void init(Rng& rng) override { reset_embodiment(rng); }

  Vec observation() const override {
    Vec o(3);
    o << std::cos(theta_), std::sin(theta_), omega_ / p_.vel_limit;
    return o;
  }

  StepOutcome step(const Vec& action, long step_index, Rng& rng) override {
    const Vec a = clamp_action(action);
    omega_ += (p_.gravity * std::sin(theta_) + p_.torque_gain * a(0) -
               p_.damping * omega_) * p_.dt;
    omega_ = std::min(p_.vel_limit, std::max(-p_.vel_limit, omega_));
    theta_ = wrap_pi(theta_ + omega_ * p_.dt);

    const double reward = (std::abs(theta_) < p_.balance_threshold) ? 1.0 : 0.0;

    StepOutcome out;
    out.reward_original = reward;
    out.next_observation = observation();
    if (cfg_.time_reset_period > 0 && step_index % cfg_.time_reset_period == 0) {
      out.reset_event = ResetEvent::TimeBased;
      reset_embodiment(rng);
      out.post_reset_observation = observation();
    }
    out.reward_modified = transform_reward(reward, out.reset_event, cfg_, 0.0);
    return out;
  }

  nlohmann::json state_to_json() const override {
    return {{"theta", theta_}, {"omega", omega_}, {"clamp_warnings", clamp_warnings_}};
  }
  void state_from_json(const nlohmann::json& j) override {
    theta_ = j["theta"];
    omega_ = j["omega"];
    clamp_warnings_ = j["clamp_warnings"];
  }

 private:
  void reset_embodiment(Rng& rng) {
    theta_ = wrap_pi(M_PI + rng.uniform(-p_.init_noise, p_.init_noise));
    omega_ = rng.uniform(-p_.init_noise, p_.init_noise);
  }

  EnvConfig cfg_;
  PendulumParams p_;
  double theta_ = M_PI, omega_ = 0.0;
};

}  // namespace

std::unique_ptr<Env> make_env(const EnvConfig& cfg) {
  if (cfg.task == "reacher") return std::make_unique<ReacherEnv>(cfg);
  if (cfg.task == "corridor") return std::make_unique<CorridorEnv>(cfg);
  if (cfg.task == "pendulum") return std::make_unique<PendulumEnv>(cfg);
  throw ConfigError("unknown task: " + cfg.task);
}

}  // namespace csac::envs
