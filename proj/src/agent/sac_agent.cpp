#include "csac/agent/sac_agent.hpp"

#include <cmath>

namespace csac::agent {

using approx::make_adam;
using approx::make_mlp;
using approx::mlp_backward;
using approx::mlp_forward;
using approx::MlpCache;

SacAgent::SacAgent(const SacConfig& c, Rng& init_rng) : cfg(c), buffer(c.buffer_capacity) {
  const int qa_in = c.obs_dim + c.action_dim;
  actor = make_mlp(c.obs_dim, c.hidden_layers, c.hidden_units, 2 * c.action_dim,
                   c.actor_norm, init_rng);
  q1 = make_mlp(qa_in, c.hidden_layers, c.hidden_units, 1, c.critic_norm, init_rng);
  q2 = make_mlp(qa_in, c.hidden_layers, c.hidden_units, 1, c.critic_norm, init_rng);
  q1_target = q1;
  q2_target = q2;
  actor_opt = make_adam(actor);
  q1_opt = make_adam(q1);
  q2_opt = make_adam(q2);
  log_alpha = std::log(c.init_alpha);
  target_entropy = std::isnan(c.target_entropy) ? -static_cast<double>(c.action_dim)
                                                 : c.target_entropy;
}

ActionSample SacAgent::act(const Vec& obs, Rng& rng) const {
  return sample_action(mlp_forward(actor, obs), cfg.head, rng);
}

void SacAgent::reinit_networks(Rng& init_rng) {
  const int qa_in = cfg.obs_dim + cfg.action_dim;
  actor = make_mlp(cfg.obs_dim, cfg.hidden_layers, cfg.hidden_units, 2 * cfg.action_dim,
                   cfg.actor_norm, init_rng);
  q1 = make_mlp(qa_in, cfg.hidden_layers, cfg.hidden_units, 1, cfg.critic_norm, init_rng);
  q2 = make_mlp(qa_in, cfg.hidden_layers, cfg.hidden_units, 1, cfg.critic_norm, init_rng);
  q1_target = q1;
  q2_target = q2;
  actor_opt = make_adam(actor);
  q1_opt = make_adam(q1);
  q2_opt = make_adam(q2);
}

void SacAgent::reinit_critics(Rng& init_rng) {
  const int qa_in = cfg.obs_dim + cfg.action_dim;
  q1 = make_mlp(qa_in, cfg.hidden_layers, cfg.hidden_units, 1, cfg.critic_norm, init_rng);
  q2 = make_mlp(qa_in, cfg.hidden_layers, cfg.hidden_units, 1, cfg.critic_norm, init_rng);
}

double update_average_reward(double rbar, double reward, double step_size) {
  return (1.0 - step_size) * rbar + step_size * reward;
}

Transition rewrite_reset_transition(const Vec& s_prev, const Vec& a_prev,
                                    double reward_with_penalty, const Vec& s_post_reset) {
  Transition t;
  t.state = s_prev;
  t.action = a_prev;
  t.reward = reward_with_penalty;
  t.next_state = s_post_reset;
  t.terminal = false;
  return t;
}

namespace {

Mat concat_rows(const Mat& top, const Mat& bottom) {
  Mat out(top.rows() + bottom.rows(), top.cols());
  out.topRows(top.rows()) = top;
  out.bottomRows(bottom.rows()) = bottom;
  return out;
}

}  // namespace

CriticLossResult critic_loss(const SacAgent& agent, const Batch& batch, const Mat& next_noise,
                             const Vec* intrinsic, const double* alpha_override) {
  const Eigen::Index B = batch.size();
  const double alpha = alpha_override ? *alpha_override : agent.alpha();

  // Fresh next actions from the current policy; everything here stays out of
  // the gradient (semi-gradient TD).
  const Mat pol_out = mlp_forward(agent.actor, batch.next_states);
  const SquashedSample next = squash_sample(pol_out, next_noise, agent.cfg.head);

  const Mat next_in = concat_rows(batch.next_states, next.actions);
  const Vec qt1 = mlp_forward(agent.q1_target, next_in).row(0).transpose();
  const Vec qt2 = mlp_forward(agent.q2_target, next_in).row(0).transpose();

  Vec targets(B);
  const bool continuing = agent.cfg.mode == AlgoMode::Continuing;
  for (Eigen::Index j = 0; j < B; ++j) {
    const double qmin = std::min(qt1(j), qt2(j));
    const double soft_next = qmin - alpha * next.log_prob(j);
    double r = batch.rewards(j);
    if (intrinsic) r += (*intrinsic)(j);
    if (continuing) {
      targets(j) = r - agent.avg_reward + agent.cfg.gamma * soft_next;
    } else {
      targets(j) = r + agent.cfg.gamma * (1.0 - batch.terminal(j)) * soft_next;
    }
  }

  const Mat in = concat_rows(batch.states, batch.actions);
  CriticLossResult res;
  res.targets = targets;
  const double inv_b = 1.0 / static_cast<double>(B);

  MlpCache cache1, cache2;
  const Vec v1 = mlp_forward(agent.q1, in, &cache1).row(0).transpose();
  const Vec v2 = mlp_forward(agent.q2, in, &cache2).row(0).transpose();
  const Vec e1 = v1 - targets;
  const Vec e2 = v2 - targets;
  res.loss = 0.5 * inv_b * (e1.squaredNorm() + e2.squaredNorm());
  // d loss / d Q_i(s,a) = (Q_i - y) / B
  res.d_q1 = mlp_backward(agent.q1, cache1, (inv_b * e1).transpose());
  res.d_q2 = mlp_backward(agent.q2, cache2, (inv_b * e2).transpose());
  return res;
}

PolicyObjectiveResult policy_objective_core(const SacAgent& agent, const Mat& states,
                                            const Mat& noise, const PolicyObjectiveSpec& spec) {
  const Eigen::Index B = states.cols();
  const Eigen::Index A = agent.cfg.action_dim;
  const double inv_b = 1.0 / static_cast<double>(B);

  MlpCache actor_cache;
  const Mat pol_out = mlp_forward(agent.actor, states, &actor_cache);
  const SquashedSample s = squash_sample(pol_out, noise, agent.cfg.head);

  PolicyObjectiveResult res;
  res.log_probs = s.log_prob;
  res.mean_log_prob = s.log_prob.mean();

  // Effective coefficient on log pi inside J. In signed mode the sign is a
  // batch statistic treated as a constant by the gradient.
  double ent_coef = spec.entropy_coef;
  if (spec.entropy_sign_target) {
    const double arg = res.mean_log_prob + *spec.entropy_sign_target;
    ent_coef = (arg >= 0.0) ? spec.entropy_coef : -spec.entropy_coef;
  }

  Mat d_action = Mat::Zero(A, B);  // dJ/da per sample (before the 1/B mean)
  double obj = 0.0;

  if (spec.include_q) {
    const Mat in = concat_rows(states, s.actions);
    MlpCache c1, c2;
    const Vec v1 = mlp_forward(agent.q1, in, &c1).row(0).transpose();
    const Vec v2 = mlp_forward(agent.q2, in, &c2).row(0).transpose();
    res.q_min.resize(B);
    std::vector<bool> first_is_min(static_cast<std::size_t>(B));
    for (Eigen::Index j = 0; j < B; ++j) {
      const bool first = v1(j) <= v2(j);
      first_is_min[static_cast<std::size_t>(j)] = first;
      res.q_min(j) = first ? v1(j) : v2(j);
    }
    const double q_coef = spec.q_coef_hook ? spec.q_coef_hook(res.q_min) : spec.q_coef;
    Mat d_out1 = Mat::Zero(1, B), d_out2 = Mat::Zero(1, B);
    for (Eigen::Index j = 0; j < B; ++j) {
      if (first_is_min[static_cast<std::size_t>(j)])
        d_out1(0, j) = q_coef;
      else
        d_out2(0, j) = q_coef;
    }
    obj += q_coef * res.q_min.mean();
    // Only the input gradient of the critics is needed here.
    Mat d_in1, d_in2;
    mlp_backward(agent.q1, c1, d_out1, &d_in1, /*want_param_grads=*/false);
    mlp_backward(agent.q2, c2, d_out2, &d_in2, /*want_param_grads=*/false);
    d_action += d_in1.bottomRows(A) + d_in2.bottomRows(A);
  }

  obj -= ent_coef * res.mean_log_prob;

  if (spec.action_l2_penalty != 0.0) {
    double pen = 0.0;
    for (Eigen::Index j = 0; j < B; ++j) {
      const double n = s.actions.col(j).norm();
      pen += n;
      if (n > 0.0) d_action.col(j) -= spec.action_l2_penalty * s.actions.col(j) / n;
    }
    obj -= spec.action_l2_penalty * pen * inv_b;
  }

  // Chain to the raw policy outputs; the mean over the batch supplies 1/B.
  const Vec coef_logp = Vec::Constant(B, -ent_coef);
  Mat d_polout = policy_output_grad(s, noise, d_action, coef_logp, agent.cfg.head);
  d_polout *= inv_b;
  res.d_actor = mlp_backward(agent.actor, actor_cache, d_polout);
  res.objective = obj;
  return res;
}

PolicyObjectiveResult policy_objective(const SacAgent& agent, const Mat& states,
                                       const Mat& noise) {
  PolicyObjectiveSpec spec;
  spec.entropy_coef = agent.alpha();
  return policy_objective_core(agent, states, noise, spec);
}

TemperatureObjective temperature_objective(double alpha, const Vec& log_probs,
                                           double target_entropy) {
  TemperatureObjective t;
  const double mean_term = (log_probs.array() + target_entropy).mean();
  t.objective = -alpha * mean_term;
  t.d_alpha = -mean_term;
  return t;
}

}  // namespace csac::agent
