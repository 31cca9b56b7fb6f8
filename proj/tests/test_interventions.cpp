#include <doctest.h>

#include <cmath>

#include "csac/interventions/interventions.hpp"

using namespace csac;
using namespace csac::interventions;
using agent::SacAgent;
using agent::SacConfig;
using approx::MlpParams;

namespace {

Mat normal_mat(int r, int c, Rng& rng) {
  Mat m(r, c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i) m(i, j) = rng.normal();
  return m;
}

SacAgent tiny_agent(std::uint64_t seed, int obs = 2, int act = 2, int width = 4) {
  Rng rng(seed);
  SacConfig cfg;
  cfg.obs_dim = obs;
  cfg.action_dim = act;
  cfg.hidden_layers = 1;
  cfg.hidden_units = width;
  return SacAgent(cfg, rng);
}

}  // namespace

TEST_CASE("action_penalty_reward examples") {
  Vec zero = Vec::Zero(2);
  CHECK(action_penalty_reward(0.7, zero, 1.0) == 0.7);
  Vec ones = Vec::Constant(2, 1.0);
  CHECK(action_penalty_reward(0.0, ones, 1.0) == doctest::Approx(-2.0).epsilon(1e-15));
  Vec half = Vec::Constant(1, 0.5);
  CHECK(action_penalty_reward(0.0, half, 1e-5) == doctest::Approx(-2.5e-6).epsilon(1e-12));
}

TEST_CASE("policy ||a|| penalty: zero actions leave the objective unchanged") {
  SacAgent agent = tiny_agent(3);
  // saturate mu to ~0 via zero actor and tiny sigma
  for (auto& w : agent.actor.weights) w.setZero();
  for (auto& b : agent.actor.biases) b.setZero();
  agent.actor.biases.back().tail(2).setConstant(-19.0);  // log sigma tiny
  Rng rng(4);
  const Mat states = normal_mat(2, 5, rng);
  const Mat noise = normal_mat(2, 5, rng);
  agent::PolicyObjectiveSpec plain;
  plain.entropy_coef = agent.alpha();
  agent::PolicyObjectiveSpec pen = plain;
  pen.action_l2_penalty = 0.1;
  const double a = agent::policy_objective_core(agent, states, noise, plain).objective;
  const double b = agent::policy_objective_core(agent, states, noise, pen).objective;
  CHECK(std::abs(a - b) < 1e-8);  // ||a|| ~ 1e-9 at sigma = e^-19
}

TEST_CASE("policy ||a|| penalty: unit-norm actions subtract lambda") {
  // J' = J - lambda * mean ||a||; with all ||a|| == 1 the shift is lambda.
  SacAgent agent = tiny_agent(5, 2, 1);
  for (auto& w : agent.actor.weights) w.setZero();
  for (auto& b : agent.actor.biases) b.setZero();
  agent.actor.biases.back()(0) = 25.0;   // mu large -> a = tanh ~ 1
  agent.actor.biases.back()(1) = -19.0;  // sigma tiny
  Rng rng(6);
  const Mat states = normal_mat(2, 4, rng);
  const Mat noise = normal_mat(1, 4, rng);
  agent::PolicyObjectiveSpec plain;
  plain.entropy_coef = 0.0;
  agent::PolicyObjectiveSpec pen = plain;
  pen.action_l2_penalty = 0.1;
  const double a = agent::policy_objective_core(agent, states, noise, plain).objective;
  const double b = agent::policy_objective_core(agent, states, noise, pen).objective;
  CHECK(a - b == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("toggle_decide: tie counts as not improving") {
  ToggleState t;
  t.period_length = 100;
  for (int p = 0; p < 2; ++p)
    for (int s = 0; s < 100; ++s) t.observe_reward(1.0);  // equal averages
  const auto dec = toggle_decide(t, 0.5, 0.02, 1e-3);
  CHECK(dec.alpha_hat == 0.02);
  CHECK(dec.lr_alpha_hat == 0.0);
}

TEST_CASE("toggle_decide: improvement restores the learned temperature") {
  ToggleState t;
  t.period_length = 10;
  for (int s = 0; s < 10; ++s) t.observe_reward(0.0);
  for (int s = 0; s < 10; ++s) t.observe_reward(1.0);  // improved
  const auto dec = toggle_decide(t, 0.5, 0.02, 1e-3);
  CHECK(dec.alpha_hat == 0.5);
  CHECK(dec.lr_alpha_hat == 1e-3);
}

TEST_CASE("toggle_decide: defaults before two complete periods") {
  ToggleState t;
  t.period_length = 10;
  for (int s = 0; s < 15; ++s) t.observe_reward(-3.0);  // 1.5 periods
  const auto dec = toggle_decide(t, 0.5, 0.02, 1e-3);
  CHECK(dec.alpha_hat == 0.5);
  CHECK(dec.lr_alpha_hat == 1e-3);
}

TEST_CASE("update_qscale: identical values keep eta at exactly 1") {
  Vec q = Vec::Constant(256, -7.3);
  double eta = 1.0;
  for (int i = 0; i < 20; ++i) eta = update_qscale(eta, q);
  CHECK(eta == 1.0);
}

TEST_CASE("update_qscale: uniform grid oracle via sort-and-interpolate") {
  Vec q(256);
  for (int i = 0; i < 256; ++i) q(i) = static_cast<double>(i);
  // P95 at position 0.95*255 = 242.25 -> 242.25; P5 at 12.75
  const double spread = 242.25 - 12.75;
  const double expected = 0.99 + 0.01 * std::max(spread, 1.0);
  CHECK(update_qscale(1.0, q) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("update_qscale: geometric convergence to a constant spread") {
  Vec q(100);
  for (int i = 0; i < 100; ++i) q(i) = 0.01 * i;  // spread 0.89, below the floor
  double eta = 1.0;
  for (int i = 0; i < 100; ++i) eta = update_qscale(eta, q);
  CHECK(eta == 1.0);  // max(spread, 1) clamps to the floor

  Vec wide(100);
  for (int i = 0; i < 100; ++i) wide(i) = 0.08 * i;  // spread 7.92 * 0.9
  std::vector<double> v(wide.data(), wide.data() + wide.size());
  const double m = std::max(percentile_linear(v, 95.0) - percentile_linear(v, 5.0), 1.0);
  eta = 1.0;
  for (int i = 0; i < 300; ++i) eta = update_qscale(eta, wide);
  CHECK(std::abs(eta - (m + std::pow(0.99, 300) * (1.0 - m))) < 1e-9);
}

TEST_CASE("eta_q never drops below 1 (fuzz)") {
  Rng rng(7);
  double eta = 1.0;
  for (int i = 0; i < 2000; ++i) {
    Vec q(32);
    for (int j = 0; j < 32; ++j) q(j) = rng.normal(0.0, rng.uniform(0.001, 5.0));
    eta = update_qscale(eta, q);
    REQUIRE(eta >= 1.0);
  }
}

TEST_CASE("scaled objective reduces to the plain one at eta=1, alpha_hat=alpha, |A|=1") {
  SacAgent agent = tiny_agent(9, 3, 1);
  Rng rng(10);
  const Mat states = normal_mat(3, 6, rng);
  const Mat noise = normal_mat(1, 6, rng);
  const auto plain = agent::policy_objective(agent, states, noise);
  const auto scaled = scaled_policy_objective(agent, states, noise, 1.0, agent.alpha());
  CHECK(plain.objective == scaled.objective);
  for (std::size_t l = 0; l < plain.d_actor.d_weights.size(); ++l) {
    CHECK((plain.d_actor.d_weights[l] - scaled.d_actor.d_weights[l]).cwiseAbs().maxCoeff() ==
          0.0);
  }
}

TEST_CASE("scaled objective: converged eta makes the gradient scale-invariant") {
  // Doubling every Q value while eta converges to the doubled spread leaves
  // the policy gradient direction unchanged (up to the exact 2x in eta).
  SacAgent agent = tiny_agent(11, 2, 2);
  Rng rng(12);
  const Mat states = normal_mat(2, 8, rng);
  const Mat noise = normal_mat(2, 8, rng);

  const auto g1 = scaled_policy_objective(agent, states, noise, 2.3, 0.0);
  // scale both critics by 2 (weights of the linear output layer)
  agent.q1.weights.back() *= 2.0;
  agent.q1.biases.back() *= 2.0;
  agent.q2.weights.back() *= 2.0;
  agent.q2.biases.back() *= 2.0;
  const auto g2 = scaled_policy_objective(agent, states, noise, 4.6, 0.0);
  for (std::size_t l = 0; l < g1.d_actor.d_weights.size(); ++l) {
    CHECK((g1.d_actor.d_weights[l] - g2.d_actor.d_weights[l]).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("scaled objective uses the fixed temperature when toggled") {
  SacAgent agent = tiny_agent(13, 2, 2);
  Rng rng(14);
  const Mat states = normal_mat(2, 5, rng);
  const Mat noise = normal_mat(2, 5, rng);
  // alpha-hat = 0.02 regardless of the learned alpha
  const auto a = scaled_policy_objective(agent, states, noise, 1.0, 0.02);
  agent.log_alpha = std::log(7.0);  // learned alpha irrelevant
  const auto b = scaled_policy_objective(agent, states, noise, 1.0, 0.02);
  CHECK(a.objective == b.objective);
}

TEST_CASE("rnd_intrinsic: c_int = 0 reduces the critic target to plain SAC") {
  SacAgent agent = tiny_agent(15, 2, 1);
  Rng rng(16);
  agent::Batch b;
  b.states = normal_mat(2, 4, rng);
  b.actions = normal_mat(1, 4, rng).array().tanh().matrix();
  b.next_states = normal_mat(2, 4, rng);
  b.rewards = normal_mat(1, 4, rng).row(0).transpose();
  b.terminal = Vec::Zero(4);
  const Mat noise = normal_mat(1, 4, rng);
  const Vec zero_intrinsic = Vec::Zero(4);
  const auto plain = agent::critic_loss(agent, b, noise);
  const auto with = agent::critic_loss(agent, b, noise, &zero_intrinsic);
  CHECK(plain.loss == with.loss);
}

TEST_CASE("rnd predictor training decreases the raw intrinsic reward on a fixed batch") {
  Rng rng(17);
  RndConfig rc;
  rc.predictor_hidden_layers = 2;
  rc.target_hidden_layers = 1;
  rc.hidden_units = 8;
  rc.output_dim = 6;
  rc.lr = 1e-3;
  auto rnd = make_rnd(rc, 3, rng);
  const Mat xs = normal_mat(3, 16, rng);
  const std::vector<std::uint8_t> all_on(16, 1);
  const double before = rnd_intrinsic_raw(rnd, xs).mean();
  for (int i = 0; i < 400; ++i) {
    const auto res = rnd_loss(rnd, xs, all_on, 3);
    approx::adam_step(rnd.predictor, res.d_predictor, rnd.predictor_opt, rc.lr);
  }
  const double after = rnd_intrinsic_raw(rnd, xs).mean();
  CHECK(after < 0.2 * before);
}

TEST_CASE("rnd target parameters never change during training") {
  Rng rng(19);
  RndConfig rc;
  rc.predictor_hidden_layers = 1;
  rc.target_hidden_layers = 1;
  rc.hidden_units = 4;
  rc.output_dim = 3;
  auto rnd = make_rnd(rc, 2, rng);
  const MlpParams snapshot = rnd.target;
  const Mat xs = normal_mat(2, 8, rng);
  const std::vector<std::uint8_t> all_on(8, 1);
  for (int i = 0; i < 50; ++i) {
    const auto res = rnd_loss(rnd, xs, all_on, 2);
    approx::adam_step(rnd.predictor, res.d_predictor, rnd.predictor_opt, rc.lr);
  }
  for (std::size_t l = 0; l < snapshot.weights.size(); ++l) {
    CHECK((rnd.target.weights[l] - snapshot.weights[l]).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("running moments: normalizing the observed stream standardizes it") {
  Rng rng(21);
  RunningMoments m(3);
  std::vector<Vec> xs;
  for (int i = 0; i < 5000; ++i) {
    Vec x(3);
    x << rng.normal(2.0, 3.0), rng.normal(-1.0, 0.5), rng.normal(0.0, 10.0);
    xs.push_back(x);
    m.update(x);
  }
  Vec mean = Vec::Zero(3), var = Vec::Zero(3);
  for (const auto& x : xs) mean += m.normalize(x);
  mean /= xs.size();
  for (const auto& x : xs) var += (m.normalize(x) - mean).cwiseAbs2();
  var /= xs.size();
  for (int d = 0; d < 3; ++d) {
    CHECK(std::abs(mean(d)) < 1e-10);
    CHECK(std::abs(var(d) - 1.0) < 1e-2);
  }
}

TEST_CASE("entropy-only objective: sign of alpha^s follows the batch statistic") {
  SacAgent agent = tiny_agent(23, 2, 1);
  Rng rng(24);
  const Mat states = normal_mat(2, 6, rng);
  const Mat noise = normal_mat(1, 6, rng);
  // Hugely negative target: mean(log pi) + target < 0 -> alpha^s = -alpha,
  // so the objective equals +alpha * mean(log pi).
  const auto neg = entropy_only_objective(agent, states, noise, -1000.0);
  CHECK(neg.objective == doctest::Approx(agent.alpha() * neg.mean_log_prob).epsilon(1e-12));
  // Hugely positive target: alpha^s = +alpha.
  const auto pos = entropy_only_objective(agent, states, noise, 1000.0);
  CHECK(pos.objective == doctest::Approx(-agent.alpha() * pos.mean_log_prob).epsilon(1e-12));
}

TEST_CASE("fixed-distribution override saturates as specified") {
  FixedDistConfig f;
  f.enabled = true;
  f.mu = 0.0;
  f.sigma = 1e-6;
  Rng rng(25);
  for (int i = 0; i < 10; ++i) {
    const Vec a = fixed_dist_action(f, 2, rng);
    CHECK(a.cwiseAbs().maxCoeff() < 1e-5);
  }
  f.mu = 10.0;
  const Vec a = fixed_dist_action(f, 1, rng);
  CHECK(a(0) > 0.999);
}

TEST_CASE("network_reset variants") {
  Rng init(27);
  SacConfig cfg;
  cfg.obs_dim = 2;
  cfg.action_dim = 2;
  cfg.hidden_layers = 1;
  cfg.hidden_units = 4;
  SacAgent agent(cfg, init);

  SUBCASE("plain keeps the temperature") {
    agent.log_alpha = std::log(0.33);
    const MlpParams before = agent.actor;
    network_reset(agent, NetResetVariant::Plain, init);
    CHECK(agent.alpha() == doctest::Approx(0.33).epsilon(1e-12));
    CHECK_FALSE(agent.alpha_tuning_paused);
    // networks re-initialized
    CHECK((agent.actor.weights[0] - before.weights[0]).cwiseAbs().maxCoeff() > 0.0);
    // targets re-tied to the fresh critics
    CHECK((agent.q1_target.weights[0] - agent.q1.weights[0]).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("reset_alpha draws U[0.01, 1] and pauses tuning") {
    network_reset(agent, NetResetVariant::ResetAlpha, init);
    CHECK(agent.alpha() >= 0.01);
    CHECK(agent.alpha() <= 1.0);
    CHECK(agent.alpha_tuning_paused);
  }
  SUBCASE("reset_target_entropy draws U[-|A|, 0.675 |A|] with tuning on") {
    for (int i = 0; i < 20; ++i) {
      network_reset(agent, NetResetVariant::ResetTargetEntropy, init);
      CHECK(agent.target_entropy >= -2.0);
      CHECK(agent.target_entropy <= 1.35);
      CHECK_FALSE(agent.alpha_tuning_paused);
    }
  }
}
