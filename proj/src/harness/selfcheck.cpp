#include "csac/harness/selfcheck.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "csac/approx/grad_check.hpp"
#include "csac/harness/csv.hpp"
#include "csac/harness/runner.hpp"
#include "csac/harness/sweep.hpp"
#include "csac/interventions/interventions.hpp"

namespace csac::harness {

namespace {

using agent::Batch;
using agent::SacAgent;
using agent::SacConfig;
using approx::GradReport;
using approx::MlpGrads;
using approx::MlpParams;

Mat normal_mat(Eigen::Index r, Eigen::Index c, Rng& rng) {
  Mat m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = rng.normal();
  return m;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Small agent with random weights and a random batch, for loss-level checks.
struct Fixture {
  SacAgent agent;
  Batch batch;
  Mat noise;       // policy-sample noise, frozen
  Mat next_noise;  // next-action noise for the critic target

  static Fixture make(std::uint64_t seed, int obs_dim = 3, int action_dim = 2, int width = 6,
                      int batch_size = 5) {
    Rng rng(seed);
    SacConfig cfg;
    cfg.obs_dim = obs_dim;
    cfg.action_dim = action_dim;
    cfg.hidden_layers = 2;
    cfg.hidden_units = width;
    cfg.batch_size = batch_size;
    SacAgent a(cfg, rng);
    a.avg_reward = 0.13;
    Batch b;
    b.states = normal_mat(obs_dim, batch_size, rng);
    b.actions = normal_mat(action_dim, batch_size, rng).array().tanh().matrix();
    b.next_states = normal_mat(obs_dim, batch_size, rng);
    b.rewards = normal_mat(1, batch_size, rng).row(0).transpose();
    b.terminal = Vec::Zero(batch_size);
    Mat noise = normal_mat(action_dim, batch_size, rng);
    Mat next_noise = normal_mat(action_dim, batch_size, rng);
    return Fixture{std::move(a), std::move(b), std::move(noise), std::move(next_noise)};
  }
};

// Plain-loop MLP forward, independent of approx::mlp_forward (oracle route;
// no normalization modes).
Vec naive_forward(const MlpParams& p, const Vec& x) {
  Vec h = x;
  for (int l = 0; l < p.num_layers(); ++l) {
    Vec z(p.biases[l].size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      double acc = p.biases[l](i);
      for (Eigen::Index k = 0; k < h.size(); ++k) acc += p.weights[l](i, k) * h(k);
      z(i) = acc;
    }
    if (l + 1 < p.num_layers())
      for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = std::max(0.0, z(i));
    h = z;
  }
  return h;
}

CheckResult check_gradient_suite() {
  CheckResult r{1, "gradient suite (J(phi), J(theta), J^atilde, J(alpha), J^H, J(psi), penalties)",
                false, ""};
  double worst = 0.0;
  std::string worst_name;
  auto track = [&](const std::string& name, double err) {
    if (err > worst) {
      worst = err;
      worst_name = name;
    }
  };

  // Critic loss gradients w.r.t. each critic.
  {
    auto fx = Fixture::make(11);
    for (int which = 0; which < 2; ++which) {
      auto loss = [&fx, which](const MlpParams& p, MlpGrads* g) {
        SacAgent& a = fx.agent;
        MlpParams saved = which == 0 ? a.q1 : a.q2;
        (which == 0 ? a.q1 : a.q2) = p;
        const auto res = agent::critic_loss(a, fx.batch, fx.next_noise);
        (which == 0 ? a.q1 : a.q2) = saved;
        if (g) *g = which == 0 ? res.d_q1 : res.d_q2;
        return res.loss;
      };
      const GradReport rep =
          approx::grad_check(loss, which == 0 ? fx.agent.q1 : fx.agent.q2, 1e-5);
      track("J(phi" + std::to_string(which + 1) + ")", rep.max_rel_error);
    }
  }

  // Policy objective J(theta).
  {
    auto fx = Fixture::make(12);
    auto loss = [&fx](const MlpParams& p, MlpGrads* g) {
      SacAgent& a = fx.agent;
      MlpParams saved = a.actor;
      a.actor = p;
      const auto res = agent::policy_objective(a, fx.batch.states, fx.noise);
      a.actor = saved;
      if (g) *g = res.d_actor;
      return res.objective;
    };
    track("J(theta)", approx::grad_check(loss, fx.agent.actor, 1e-5).max_rel_error);
  }

  // Scaled objective J^atilde(theta) with eta != 1 and fixed alpha-hat.
  {
    auto fx = Fixture::make(13);
    auto loss = [&fx](const MlpParams& p, MlpGrads* g) {
      SacAgent& a = fx.agent;
      MlpParams saved = a.actor;
      a.actor = p;
      const auto res =
          interventions::scaled_policy_objective(a, fx.batch.states, fx.noise, 1.7, 0.02);
      a.actor = saved;
      if (g) *g = res.d_actor;
      return res.objective;
    };
    track("J^atilde(theta)", approx::grad_check(loss, fx.agent.actor, 1e-5).max_rel_error);
  }

  // Policy objective with the ||a||_2 penalty (its gradient flows through theta).
  {
    auto fx = Fixture::make(14);
    auto loss = [&fx](const MlpParams& p, MlpGrads* g) {
      SacAgent& a = fx.agent;
      MlpParams saved = a.actor;
      a.actor = p;
      agent::PolicyObjectiveSpec spec;
      spec.entropy_coef = a.alpha();
      spec.action_l2_penalty = 0.05;
      const auto res = agent::policy_objective_core(a, fx.batch.states, fx.noise, spec);
      a.actor = saved;
      if (g) *g = res.d_actor;
      return res.objective;
    };
    track("penalty(pi)", approx::grad_check(loss, fx.agent.actor, 1e-5).max_rel_error);
  }

  // Entropy-only objective J^H(theta).
  {
    auto fx = Fixture::make(15);
    auto loss = [&fx](const MlpParams& p, MlpGrads* g) {
      SacAgent& a = fx.agent;
      MlpParams saved = a.actor;
      a.actor = p;
      const auto res =
          interventions::entropy_only_objective(a, fx.batch.states, fx.noise, -1.0);
      a.actor = saved;
      if (g) *g = res.d_actor;
      return res.objective;
    };
    track("J^H(theta)", approx::grad_check(loss, fx.agent.actor, 1e-5).max_rel_error);
  }

  // RND predictor objective J(psi).
  {
    Rng rng(16);
    interventions::RndConfig rc;
    rc.predictor_hidden_layers = 2;
    rc.target_hidden_layers = 1;
    rc.hidden_units = 6;
    rc.output_dim = 4;
    auto rnd = interventions::make_rnd(rc, 3, rng);
    const Mat xs = normal_mat(3, 6, rng);
    const std::vector<std::uint8_t> masks = {1, 0, 1, 1, 0, 1};
    auto loss = [&rnd, &xs, &masks](const MlpParams& p, MlpGrads* g) {
      MlpParams saved = rnd.predictor;
      rnd.predictor = p;
      const auto res = interventions::rnd_loss(rnd, xs, masks, 3);
      rnd.predictor = saved;
      if (g) *g = res.d_predictor;
      return res.loss;
    };
    track("J(psi)", approx::grad_check(loss, rnd.predictor, 1e-5).max_rel_error);
  }

  // Temperature objective J(alpha): closed-form gradient vs FD in alpha.
  {
    Rng rng(17);
    Vec logp(4);
    for (int i = 0; i < 4; ++i) logp(i) = rng.normal(-2.0, 0.5);
    const double alpha = 0.37, hbar = -2.0, h = 1e-6;
    const auto tj = agent::temperature_objective(alpha, logp, hbar);
    const double fd = (agent::temperature_objective(alpha + h, logp, hbar).objective -
                       agent::temperature_objective(alpha - h, logp, hbar).objective) /
                      (2.0 * h);
    track("J(alpha)", std::abs(tj.d_alpha - fd) / std::max({1.0, std::abs(fd)}));
  }

  // Reward penalty r - tau ||a||^2: gradient w.r.t. the action is -2 tau a.
  {
    Rng rng(18);
    Vec a(3);
    for (int i = 0; i < 3; ++i) a(i) = rng.uniform(-0.9, 0.9);
    const double tau = 0.3, h = 1e-6;
    for (int d = 0; d < 3; ++d) {
      Vec ap = a, am = a;
      ap(d) += h;
      am(d) -= h;
      const double fd = (interventions::action_penalty_reward(0.0, ap, tau) -
                         interventions::action_penalty_reward(0.0, am, tau)) /
                        (2.0 * h);
      track("penalty(R)", std::abs(-2.0 * tau * a(d) - fd) / std::max(1.0, std::abs(fd)));
    }
  }

  r.passed = worst < 1e-4;
  std::ostringstream os;
  os << "max rel err " << worst << " (" << worst_name << ")";
  r.detail = os.str();
  return r;
}

CheckResult check_rbar_closed_form() {
  CheckResult r{2, "Rbar EMA closed form", false, ""};
  const double c = 0.7, step = 3e-4;
  double rbar = 0.0;
  const int t = 10000;
  for (int i = 0; i < t; ++i) rbar = agent::update_average_reward(rbar, c, step);
  const double closed = c * (1.0 - std::pow(1.0 - step, t));
  const double err = std::abs(rbar - closed);
  r.passed = err < 1e-12;
  r.detail = "err " + format_double(err);
  return r;
}

CheckResult check_eta_fixed_points() {
  CheckResult r{3, "eta_Q fixed points and geometric convergence", false, ""};
  // Identical Q values: spread 0 -> max(,1)=1 -> eta stays exactly 1.
  Vec same = Vec::Constant(256, 4.2);
  double eta = 1.0;
  for (int i = 0; i < 50; ++i) eta = interventions::update_qscale(eta, same);
  const bool exact_one = eta == 1.0;

  // Constant spread d > 1: eta_k = m + 0.99^k (1 - m), m = max(spread, 1).
  Vec grid(256);
  for (int i = 0; i < 256; ++i) grid(i) = 3.0 * static_cast<double>(i) / 255.0;
  std::vector<double> v(grid.data(), grid.data() + grid.size());
  const double spread =
      interventions::percentile_linear(v, 95.0) - interventions::percentile_linear(v, 5.0);
  const double m = std::max(spread, 1.0);
  double eta2 = 1.0;
  const int k = 500;
  for (int i = 0; i < k; ++i) eta2 = interventions::update_qscale(eta2, grid);
  const double closed = m + std::pow(0.99, k) * (1.0 - m);
  const double err = std::abs(eta2 - closed);
  r.passed = exact_one && err < 1e-9;
  r.detail = "eta(const)=" + format_double(eta) + ", |eta-closed|=" + format_double(err);
  return r;
}

CheckResult check_toggle_machine() {
  CheckResult r{4, "toggle state machine (exhaustive period sequences)", false, ""};
  const double learned = 0.5, fixed = 0.02, lr = 1e-3;
  bool ok = true;
  const double levels[] = {0.0, 1.0, 2.0};
  for (double a1 : levels)
    for (double a2 : levels)
      for (double a3 : levels)
        for (double a4 : levels) {
          interventions::ToggleState t;
          t.period_length = 100;
          const double seq[] = {a1, a2, a3, a4};
          std::vector<double> completed;
          for (double avg : seq) {
            for (int s = 0; s < 100; ++s) {
              // Mid-period the decision must not move.
              const auto before = interventions::toggle_decide(t, learned, fixed, lr);
              t.observe_reward(avg);
              if (s < 99) {
                const auto after = interventions::toggle_decide(t, learned, fixed, lr);
                ok = ok && before.alpha_hat == after.alpha_hat &&
                     before.lr_alpha_hat == after.lr_alpha_hat;
              }
            }
            completed.push_back(avg);
            const auto dec = interventions::toggle_decide(t, learned, fixed, lr);
            if (completed.size() < 2) {
              ok = ok && dec.alpha_hat == learned && dec.lr_alpha_hat == lr;
            } else {
              const double last = completed[completed.size() - 1];
              const double prev = completed[completed.size() - 2];
              if (last <= prev)
                ok = ok && dec.alpha_hat == fixed && dec.lr_alpha_hat == 0.0;
              else
                ok = ok && dec.alpha_hat == learned && dec.lr_alpha_hat == lr;
            }
          }
          if (!ok) break;
        }
  r.passed = ok;
  r.detail = ok ? "81 sequences verified" : "decision mismatch";
  return r;
}

// Deterministic environment used for reset-semantics checks: reward 1 every
// step, a state-based failure every `state_fail_every` steps, observations
// tagged so pre- and post-reset states are distinguishable.
class StubEnv final : public envs::Env {
 public:
  StubEnv(envs::EnvConfig cfg, long state_fail_every)
      : cfg_(std::move(cfg)), fail_every_(state_fail_every) {}

  int obs_dim() const override { return 2; }
  int action_dim() const override { return 1; }
  void init(Rng&) override { k_ = 0; }
  Vec observation() const override {
    Vec o(2);
    o << static_cast<double>(k_), post_reset_ ? 1.0 : 0.0;
    return o;
  }
  envs::StepOutcome step(const Vec&, long step_index, Rng&) override {
    ++k_;
    post_reset_ = false;
    envs::StepOutcome out;
    out.reward_original = 1.0;
    const bool fail = fail_every_ > 0 && k_ % fail_every_ == 0;
    if (fail && cfg_.state_reset_enabled)
      out.reset_event = envs::ResetEvent::StateBased;
    else if (cfg_.time_reset_period > 0 && step_index % cfg_.time_reset_period == 0)
      out.reset_event = envs::ResetEvent::TimeBased;
    out.next_observation = observation();
    if (out.reset_event != envs::ResetEvent::None) {
      post_reset_ = true;
      out.post_reset_observation = observation();
    }
    out.reward_modified = envs::transform_reward(out.reward_original, out.reset_event, cfg_, 0.0);
    return out;
  }
  nlohmann::json state_to_json() const override { return {{"k", k_}, {"post", post_reset_}}; }
  void state_from_json(const nlohmann::json& j) override {
    k_ = j.at("k").get<long>();
    post_reset_ = j.at("post").get<bool>();
  }

 private:
  envs::EnvConfig cfg_;
  long fail_every_;
  long k_ = 0;
  bool post_reset_ = false;
};

CheckResult check_reset_semantics() {
  CheckResult r{5, "reset transition semantics in continuing mode", false, ""};
  envs::EnvConfig ec;
  ec.reset_penalty = 50.0;
  ec.state_reset_enabled = true;
  ec.time_reset_period = 5;
  StubEnv env(ec, 7);

  SacConfig ac;
  ac.obs_dim = 2;
  ac.action_dim = 1;
  ac.hidden_layers = 1;
  ac.hidden_units = 4;
  ac.warmup_steps = 1 << 20;  // no updates; buffer semantics only
  ac.mode = agent::AlgoMode::Continuing;
  Rng init(3);
  SacAgent agent(ac, init);

  Rng act_rng(5), env_rng(6);
  env.init(env_rng);
  Vec obs = env.observation();
  const long steps = 70;
  long state_resets = 0;
  bool ok = true;
  for (long t = 1; t <= steps; ++t) {
    Vec a(1);
    a << act_rng.uniform(-1.0, 1.0);
    const auto out = env.step(a, t, env_rng);
    const Vec& next = out.post_reset_observation ? *out.post_reset_observation
                                                 : out.next_observation;
    if (out.reset_event == envs::ResetEvent::StateBased) {
      agent.buffer.push(agent::rewrite_reset_transition(obs, a, out.reward_modified, next));
      ++state_resets;
    } else {
      agent.buffer.push({obs, a, out.reward_modified, next, false});
    }
    obs = next;
  }

  long penalized = 0;
  for (std::size_t i = 0; i < agent.buffer.size(); ++i) {
    const auto& tr = agent.buffer.at(i);
    ok = ok && !tr.terminal;  // no terminal flags in continuing mode
    if (tr.reward < 0.0) {
      ++penalized;
      ok = ok && tr.reward == 1.0 - 50.0;
      ok = ok && tr.next_state(1) == 1.0;  // post-reset observation stored
    }
  }
  ok = ok && penalized == state_resets && state_resets > 0;
  // time-based resets: stream transition stored, no penalty, next state is
  // the post-reset observation
  long time_resets_checked = 0;
  for (std::size_t i = 0; i < agent.buffer.size(); ++i) {
    const auto& tr = agent.buffer.at(i);
    if (tr.reward == 1.0 && tr.next_state(1) == 1.0) ++time_resets_checked;
  }
  ok = ok && time_resets_checked > 0;
  r.passed = ok;
  r.detail = "state resets " + std::to_string(state_resets) + ", penalized transitions " +
             std::to_string(penalized);
  return r;
}

CheckResult check_policy_normalization() {
  CheckResult r{6, "squashed-Gaussian density integrates to 1; log-probs finite at saturation",
                false, ""};
  agent::PolicyHeadConfig head;
  Vec pol(2);
  pol << 0.3, std::log(0.8);
  // integral over actions of exp(log pi(a)) via x-substitution, da = (1-tanh^2 x) dx
  const double lo = 0.3 - 10.0 * 0.8, hi = 0.3 + 10.0 * 0.8;
  const int n = 20000;  // Simpson, even interval count
  const double dx = (hi - lo) / n;
  double integral = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = lo + i * dx;
    Vec pre(1);
    pre << x;
    const double t = std::tanh(x);
    const double f = std::exp(agent::log_prob_pre_tanh(pol, pre, head)) * (1.0 - t * t);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    integral += w * f;
  }
  integral *= dx / 3.0;
  const bool integ_ok = std::abs(integral - 1.0) < 1e-3;

  bool finite_ok = true;
  Rng rng(9);
  for (double mu : {-10.0, 10.0}) {
    Vec p(2);
    p << mu, head.log_sig_min;
    const auto s = agent::sample_action(p, head, rng);
    finite_ok = finite_ok && std::isfinite(s.log_prob) && std::abs(s.action(0)) < 1.0;
  }
  r.passed = integ_ok && finite_ok;
  r.detail = "integral " + format_double(integral);
  return r;
}

CheckResult check_rnd() {
  CheckResult r{7, "RND: stub zero intrinsic, zero-mask guard, masked-loss recomputation",
                false, ""};
  Rng rng(21);
  interventions::RndConfig rc;
  rc.predictor_hidden_layers = 2;
  rc.target_hidden_layers = 2;
  rc.hidden_units = 5;
  rc.output_dim = 4;
  auto rnd = interventions::make_rnd(rc, 3, rng);

  // Identical networks -> intrinsic reward exactly zero.
  rnd.predictor = rnd.target;
  const Mat xs = normal_mat(3, 8, rng);
  const Vec raw = interventions::rnd_intrinsic_raw(rnd, xs);
  const bool zero_ok = raw.cwiseAbs().maxCoeff() == 0.0;

  // Fresh (different) predictor for the loss checks.
  rnd = interventions::make_rnd(rc, 3, rng);
  const std::vector<std::uint8_t> none(8, 0);
  const auto z = interventions::rnd_loss(rnd, xs, none, 3);
  bool guard_ok = z.loss == 0.0;
  for (const auto& w : z.d_predictor.d_weights) guard_ok = guard_ok && w.cwiseAbs().maxCoeff() == 0.0;

  std::vector<std::uint8_t> masks = {1, 0, 1, 1, 0, 0, 1, 0};
  const auto res = interventions::rnd_loss(rnd, xs, masks, 3);
  // Independent recomputation through plain-loop forwards.
  double direct = 0.0, msum = 0.0;
  for (int j = 0; j < 8; ++j) {
    msum += masks[static_cast<std::size_t>(j)];
    if (!masks[static_cast<std::size_t>(j)]) continue;
    const Vec fp = naive_forward(rnd.predictor, xs.col(j));
    const Vec ft = naive_forward(rnd.target, xs.col(j));
    direct += (fp - ft).squaredNorm() / 3.0;
  }
  direct /= std::max(msum, 1.0);
  const double err = std::abs(direct - res.loss);
  r.passed = zero_ok && guard_ok && err < 1e-12;
  r.detail = "recomputation err " + format_double(err);
  return r;
}

CheckResult check_reductions(const std::filesystem::path& workdir) {
  CheckResult r{8, "reduction tests (interventions off, J^atilde==J, continuing==episodic)",
                false, ""};
  bool ok = true;
  std::string detail;

  // (a) every intervention explicitly off == plain defaults, bit-exact CSVs.
  {
    const std::string base = "task = pendulum\n"
                             "total_steps = 2500\nmetric_cadence = 250\n"
                             "agent.hidden_units = 8\nagent.batch_size = 16\n"
                             "agent.warmup_steps = 500\n";
    const std::string off = base +
                            "toggle.enabled = false\nrnd.enabled = false\n"
                            "penalty.reward_tau = 0\npenalty.policy_lambda = 0\n"
                            "probe.q_mode = learned\nobjective.mode = standard\n"
                            "fixed_dist.enabled = false\nnet_reset.variant = none\n";
    const auto cfg_a = parse_config(base);
    const auto cfg_b = parse_config(off);
    ok = ok && cfg_a.fingerprint() == cfg_b.fingerprint();
    const auto art_a = run_experiment(cfg_a, 7, workdir / "red_a");
    const auto art_b = run_experiment(cfg_b, 7, workdir / "red_b");
    for (const char* f : {"avg_reward.csv", "avg_reward_original.csv", "rbar.csv", "alpha.csv",
                          "state_variance.csv", "returns.csv"}) {
      ok = ok && read_file(workdir / "red_a" / f) == read_file(workdir / "red_b" / f);
    }
    if (!ok) detail += "interventions-off mismatch; ";
    (void)art_a;
    (void)art_b;
  }

  // (b) eta=1, alpha_hat=alpha, |A|=1 -> J^atilde == J.
  {
    auto fx = Fixture::make(31, /*obs*/ 3, /*act*/ 1, /*width*/ 6, /*batch*/ 7);
    const auto j0 = agent::policy_objective(fx.agent, fx.batch.states, fx.noise);
    const auto j1 = interventions::scaled_policy_objective(fx.agent, fx.batch.states, fx.noise,
                                                           1.0, fx.agent.alpha());
    const double diff = std::abs(j0.objective - j1.objective);
    ok = ok && diff <= 1e-15 * std::max(1.0, std::abs(j0.objective));
    if (diff != 0.0) detail += "J^atilde diff " + format_double(diff) + "; ";
  }

  // (c) Rbar=0 + no terminals -> continuing critic loss == episodic.
  {
    auto fx = Fixture::make(32);
    fx.agent.avg_reward = 0.0;
    fx.agent.cfg.mode = agent::AlgoMode::Continuing;
    const auto c1 = agent::critic_loss(fx.agent, fx.batch, fx.next_noise);
    fx.agent.cfg.mode = agent::AlgoMode::Episodic;
    const auto c2 = agent::critic_loss(fx.agent, fx.batch, fx.next_noise);
    const double diff = std::abs(c1.loss - c2.loss);
    ok = ok && diff == 0.0;
    if (diff != 0.0) detail += "critic-loss diff " + format_double(diff) + "; ";
  }

  r.passed = ok;
  r.detail = detail.empty() ? "all reductions exact" : detail;
  return r;
}

CheckResult check_determinism(const std::filesystem::path& workdir) {
  CheckResult r{9, "rerun determinism (bit-identical metric CSVs)", false, ""};
  const std::string cfg_text = "task = pendulum\n"
                               "total_steps = 2000\nmetric_cadence = 200\n"
                               "agent.hidden_units = 8\nagent.batch_size = 16\n"
                               "agent.warmup_steps = 400\n";
  const auto cfg = parse_config(cfg_text);
  run_experiment(cfg, 123, workdir / "det_a");
  run_experiment(cfg, 123, workdir / "det_b");
  bool ok = true;
  for (const char* f : {"avg_reward.csv", "avg_reward_original.csv", "rbar.csv", "alpha.csv",
                        "state_variance.csv", "returns.csv"}) {
    ok = ok && read_file(workdir / "det_a" / f) == read_file(workdir / "det_b" / f);
  }
  r.passed = ok;
  r.detail = ok ? "CSV bytes identical" : "CSV mismatch";
  return r;
}

}  // namespace

std::vector<CheckResult> run_fast_checks(const std::filesystem::path& workdir) {
  std::filesystem::create_directories(workdir);
  std::vector<CheckResult> out;
  out.push_back(check_gradient_suite());
  out.push_back(check_rbar_closed_form());
  out.push_back(check_eta_fixed_points());
  out.push_back(check_toggle_machine());
  out.push_back(check_reset_semantics());
  out.push_back(check_policy_normalization());
  out.push_back(check_rnd());
  out.push_back(check_reductions(workdir));
  out.push_back(check_determinism(workdir));
  return out;
}

}  // namespace csac::harness
