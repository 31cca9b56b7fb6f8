#include "csac/harness/runner.hpp"

#include <charconv>
#include <chrono>
#include <fstream>

#include "csac/harness/csv.hpp"

namespace csac::harness {

using approx::adam_step;
using agent::AlgoMode;
using approx::polyak_update;
using interventions::QProbeMode;
using nlohmann::json;

namespace {

Mat normal_mat(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
  return m;
}

// ---- JSON <-> numeric state helpers --------------------------------------

json vec_to_json(const Vec& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}
Vec vec_from_json(const json& j) {
  const auto d = j.get<std::vector<double>>();
  return Eigen::Map<const Vec>(d.data(), static_cast<Eigen::Index>(d.size()));
}

json mat_to_json(const Mat& m) {
  return {{"r", m.rows()},
          {"c", m.cols()},
          {"d", std::vector<double>(m.data(), m.data() + m.size())}};
}
Mat mat_from_json(const json& j) {
  const auto d = j.at("d").get<std::vector<double>>();
  return Eigen::Map<const Mat>(d.data(), j.at("r").get<Eigen::Index>(),
                               j.at("c").get<Eigen::Index>());
}

json mlp_to_json(const approx::MlpParams& p) {
  json w = json::array(), b = json::array();
  for (const auto& m : p.weights) w.push_back(mat_to_json(m));
  for (const auto& v : p.biases) b.push_back(vec_to_json(v));
  return {{"w", w}, {"b", b}, {"norm", static_cast<int>(p.norm)}, {"ln_eps", p.layer_norm_eps}};
}
approx::MlpParams mlp_from_json(const json& j) {
  approx::MlpParams p;
  for (const auto& m : j.at("w")) p.weights.push_back(mat_from_json(m));
  for (const auto& v : j.at("b")) p.biases.push_back(vec_from_json(v));
  p.norm = static_cast<approx::NormMode>(j.at("norm").get<int>());
  p.layer_norm_eps = j.at("ln_eps").get<double>();
  return p;
}

json adam_to_json(const approx::AdamState& s) {
  json mw = json::array(), vw = json::array(), mb = json::array(), vb = json::array();
  for (const auto& m : s.m_w) mw.push_back(mat_to_json(m));
  for (const auto& m : s.v_w) vw.push_back(mat_to_json(m));
  for (const auto& v : s.m_b) mb.push_back(vec_to_json(v));
  for (const auto& v : s.v_b) vb.push_back(vec_to_json(v));
  return {{"mw", mw}, {"vw", vw}, {"mb", mb}, {"vb", vb}, {"step", s.step}};
}
approx::AdamState adam_from_json(const json& j) {
  approx::AdamState s;
  for (const auto& m : j.at("mw")) s.m_w.push_back(mat_from_json(m));
  for (const auto& m : j.at("vw")) s.v_w.push_back(mat_from_json(m));
  for (const auto& v : j.at("mb")) s.m_b.push_back(vec_from_json(v));
  for (const auto& v : j.at("vb")) s.v_b.push_back(vec_from_json(v));
  s.step = j.at("step").get<long>();
  return s;
}

json moments_to_json(const interventions::RunningMoments& m) {
  return {{"count", m.count()}, {"mean", vec_to_json(m.mean())}, {"m2", vec_to_json(m.raw_m2())}};
}
void moments_from_json(const json& j, interventions::RunningMoments& m) {
  m.restore(j.at("count").get<double>(), vec_from_json(j.at("mean")), vec_from_json(j.at("m2")));
}

json series_to_json(const metrics::MetricSeries& s) {
  json pts = json::array();
  for (const auto& [step, v] : s.points) pts.push_back({step, v});
  return {{"name", s.name}, {"points", pts}};
}
void series_from_json(const json& j, metrics::MetricSeries& s) {
  s.name = j.at("name").get<std::string>();
  s.points.clear();
  for (const auto& p : j.at("points")) s.points.emplace_back(p[0].get<long>(), p[1].get<double>());
}

}  // namespace

// ---- RunRecorder ----------------------------------------------------------

RunRecorder::RunRecorder(int obs_dim, long cadence)
    : cadence_(cadence),
      learn_acc_(cadence),
      orig_acc_(cadence),
      var_acc_(obs_dim, cadence) {
  avg_reward_.name = "avg_reward";
  avg_reward_original_.name = "avg_reward_original";
  rbar_.name = "rbar";
  alpha_.name = "alpha";
  eta_q_.name = "eta_q";
  state_variance_.name = "state_variance";
}

void RunRecorder::observe_step(long step, const Vec& state, double reward_original,
                               double reward_learn, envs::ResetEvent event,
                               const SacAgent& agent, double eta_q) {
  learn_acc_.observe(step, reward_learn, avg_reward_);
  orig_acc_.observe(step, reward_original, avg_reward_original_);
  var_acc_.observe(step, state, state_variance_);
  const bool reset = event != envs::ResetEvent::None;
  if (reset) ++reset_count_;
  return_acc_.observe(step, reward_original, reset, returns_);
  if (step % cadence_ == 0) {
    rbar_.points.emplace_back(step, agent.avg_reward);
    alpha_.points.emplace_back(step, agent.alpha());
    eta_q_.points.emplace_back(step, eta_q);
  }
}

double RunRecorder::average_performance() const {
  if (avg_reward_original_.points.empty()) return 0.0;
  double s = 0.0;
  for (const auto& [step, v] : avg_reward_original_.points) s += v;
  return s / static_cast<double>(avg_reward_original_.points.size());
}

json RunRecorder::to_json() const {
  Vec vs, vss;
  long vc = 0;
  var_acc_.save(vs, vss, vc);
  json ret = json::array();
  for (const auto& [step, v] : returns_) ret.push_back({step, v});
  return {{"cadence", cadence_},
          {"learn_sum", learn_acc_.sum()},
          {"learn_count", learn_acc_.count()},
          {"orig_sum", orig_acc_.sum()},
          {"orig_count", orig_acc_.count()},
          {"return_pending", return_acc_.pending()},
          {"var_sum", vec_to_json(vs)},
          {"var_sumsq", vec_to_json(vss)},
          {"var_count", vc},
          {"avg_reward", series_to_json(avg_reward_)},
          {"avg_reward_original", series_to_json(avg_reward_original_)},
          {"rbar", series_to_json(rbar_)},
          {"alpha", series_to_json(alpha_)},
          {"eta_q", series_to_json(eta_q_)},
          {"state_variance", series_to_json(state_variance_)},
          {"returns", ret},
          {"reset_count", reset_count_}};
}

void RunRecorder::from_json(const json& j) {
  learn_acc_.restore(j.at("learn_sum").get<double>(), j.at("learn_count").get<long>());
  orig_acc_.restore(j.at("orig_sum").get<double>(), j.at("orig_count").get<long>());
  return_acc_.restore(j.at("return_pending").get<double>());
  var_acc_.restore(vec_from_json(j.at("var_sum")), vec_from_json(j.at("var_sumsq")),
                   j.at("var_count").get<long>());
  series_from_json(j.at("avg_reward"), avg_reward_);
  series_from_json(j.at("avg_reward_original"), avg_reward_original_);
  series_from_json(j.at("rbar"), rbar_);
  series_from_json(j.at("alpha"), alpha_);
  series_from_json(j.at("eta_q"), eta_q_);
  series_from_json(j.at("state_variance"), state_variance_);
  returns_.clear();
  for (const auto& p : j.at("returns")) returns_.emplace_back(p[0].get<long>(), p[1].get<double>());
  reset_count_ = j.at("reset_count").get<long>();
}

// ---- Trainer ----------------------------------------------------------------

Trainer::Trainer(const ExperimentConfig& cfg, std::uint64_t seed) : cfg_(cfg), streams_(seed) {
  env_ = envs::make_env(cfg.env);
  agent::SacConfig ac = cfg.agent;
  ac.obs_dim = env_->obs_dim();
  ac.action_dim = env_->action_dim();
  agent_ = std::make_unique<SacAgent>(ac, streams_.init());
  toggle_.period_length = cfg.iv.toggle.period;
  if (cfg.iv.rnd.enabled)
    rnd_ = interventions::make_rnd(cfg.iv.rnd, env_->obs_dim(), streams_.init());
  env_->init(streams_.env());
  obs_ = env_->observation();
}

void Trainer::step(RunRecorder* recorder) {
  ++t_;
  const int A = env_->action_dim();
  const Vec s = obs_;

  Vec a(A);
  if (cfg_.iv.fixed_dist.enabled) {
    a = interventions::fixed_dist_action(cfg_.iv.fixed_dist, A, streams_.policy());
  } else if (t_ <= cfg_.agent.warmup_steps) {
    for (int d = 0; d < A; ++d) a(d) = streams_.policy().uniform(-1.0, 1.0);
  } else {
    a = agent_->act(s, streams_.policy()).action;
  }

  const envs::StepOutcome out = env_->step(a, t_, streams_.env());
  double r_learn = out.reward_modified;
  if (cfg_.iv.penalty.reward_tau > 0.0)
    r_learn = interventions::action_penalty_reward(r_learn, a, cfg_.iv.penalty.reward_tau);

  agent_->avg_reward =
      agent::update_average_reward(agent_->avg_reward, r_learn, agent_->cfg.avg_reward_step);
  if (!std::isfinite(agent_->avg_reward))
    throw NumericError("average reward diverged at step " + std::to_string(t_));

  const Vec& stream_next =
      out.post_reset_observation ? *out.post_reset_observation : out.next_observation;
  const bool continuing = agent_->cfg.mode == AlgoMode::Continuing;
  if (continuing) {
    if (out.reset_event == envs::ResetEvent::StateBased) {
      agent_->buffer.push(agent::rewrite_reset_transition(s, a, r_learn, stream_next));
    } else {
      agent_->buffer.push({s, a, r_learn, stream_next, false});
    }
  } else {
    if (out.reset_event == envs::ResetEvent::StateBased) {
      agent_->buffer.push({s, a, r_learn, out.next_observation, true});
    } else {
      agent_->buffer.push({s, a, r_learn, stream_next, false});
    }
  }
  obs_ = stream_next;
  agent_->env_steps = t_;

  if (cfg_.iv.toggle.enabled && t_ > cfg_.agent.warmup_steps) toggle_.observe_reward(r_learn);

  if (t_ > cfg_.agent.warmup_steps &&
      agent_->buffer.size() >= static_cast<std::size_t>(agent_->cfg.batch_size)) {
    update_sweep();
  }

  const auto& nr = cfg_.iv.net_reset;
  if (nr.variant != interventions::NetResetVariant::None && nr.period > 0 &&
      t_ % nr.period == 0) {
    interventions::network_reset(*agent_, nr.variant, streams_.init());
  }

  last_state_ = s;
  last_reward_original_ = out.reward_original;
  last_reward_learn_ = r_learn;
  last_event_ = out.reset_event;
  if (recorder)
    recorder->observe_step(t_, s, out.reward_original, r_learn, out.reset_event, *agent_,
                           toggle_.eta_q);
}

void Trainer::update_sweep() {
  const Eigen::Index A = env_->action_dim();
  const Eigen::Index B = agent_->cfg.batch_size;
  agent::Batch batch = agent_->buffer.sample(static_cast<std::size_t>(B), streams_.buffer());

  const QProbeMode probe = cfg_.iv.probe;
  if (probe == QProbeMode::ReinitEveryStep) agent_->reinit_critics(streams_.probe());
  const bool critics_learn = probe == QProbeMode::Learned;

  // Temperature decision first: the toggle may substitute alpha-hat into
  // both the policy objective and (optionally) the critic target.
  interventions::ToggleDecision dec{agent_->alpha(), agent_->cfg.lr_alpha};
  if (cfg_.iv.toggle.enabled)
    dec = interventions::toggle_decide(toggle_, agent_->alpha(), cfg_.iv.toggle.fixed_alpha,
                                       cfg_.iv.toggle.lr_alpha);

  // RND: moments update, then intrinsic rewards for the critic target.
  Vec intrinsic;
  const Vec* intrinsic_ptr = nullptr;
  if (rnd_) {
    rnd_->obs_moments.update_batch(batch.next_states);
    const Mat s_norm = rnd_->obs_moments.normalize_batch(batch.states);
    const Vec raw = interventions::rnd_intrinsic_raw(*rnd_, s_norm);
    Vec one(1);
    for (Eigen::Index j = 0; j < raw.size(); ++j) {
      one(0) = raw(j);
      rnd_->intrinsic_moments.update(one);
    }
    const double im = rnd_->intrinsic_moments.mean()(0);
    const double istd = rnd_->intrinsic_moments.stddev()(0);
    intrinsic = (cfg_.iv.rnd.c_int * (raw.array() - im) / istd).matrix();
    intrinsic_ptr = &intrinsic;
  }

  if (critics_learn) {
    const Mat next_noise = normal_mat(A, B, streams_.policy());
    const double* alpha_override =
        (cfg_.iv.toggle.enabled && cfg_.iv.toggle.alpha_in_target) ? &dec.alpha_hat : nullptr;
    const auto cl = agent::critic_loss(*agent_, batch, next_noise, intrinsic_ptr, alpha_override);
    if (!std::isfinite(cl.loss))
      throw NumericError("critic loss diverged at step " + std::to_string(t_));
    last_critic_loss_ = cl.loss;
    adam_step(agent_->q1, cl.d_q1, agent_->q1_opt, agent_->cfg.lr_critic);
    adam_step(agent_->q2, cl.d_q2, agent_->q2_opt, agent_->cfg.lr_critic);
  }

  if (rnd_) {
    std::vector<std::uint8_t> masks(static_cast<std::size_t>(B));
    for (auto& m : masks)
      m = streams_.rnd().bernoulli(cfg_.iv.rnd.update_proportion) ? 1 : 0;
    const Mat next_norm = rnd_->obs_moments.normalize_batch(batch.next_states);
    const auto rl = interventions::rnd_loss(*rnd_, next_norm, masks, env_->obs_dim());
    adam_step(rnd_->predictor, rl.d_predictor, rnd_->predictor_opt, cfg_.iv.rnd.lr);
  }

  const Mat noise = normal_mat(A, B, streams_.policy());
  agent::PolicyObjectiveResult pr;
  if (probe != QProbeMode::Learned) {
    agent::PolicyObjectiveSpec spec;  // action-value term only
    spec.entropy_coef = 0.0;
    spec.action_l2_penalty = cfg_.iv.penalty.policy_lambda;
    pr = agent::policy_objective_core(*agent_, batch.states, noise, spec);
  } else if (cfg_.iv.objective == interventions::ObjectiveMode::EntropyOnly) {
    pr = interventions::entropy_only_objective(*agent_, batch.states, noise,
                                               cfg_.iv.entropy_only_target);
  } else if (cfg_.iv.toggle.enabled) {
    agent::PolicyObjectiveSpec spec;
    spec.entropy_coef = dec.alpha_hat / static_cast<double>(A);
    spec.action_l2_penalty = cfg_.iv.penalty.policy_lambda;
    spec.q_coef_hook = [this](const Vec& q_min) {
      toggle_.eta_q = interventions::update_qscale(toggle_.eta_q, q_min);
      return 1.0 / toggle_.eta_q;
    };
    pr = agent::policy_objective_core(*agent_, batch.states, noise, spec);
  } else {
    agent::PolicyObjectiveSpec spec;
    spec.entropy_coef = agent_->alpha();
    spec.action_l2_penalty = cfg_.iv.penalty.policy_lambda;
    pr = agent::policy_objective_core(*agent_, batch.states, noise, spec);
  }
  if (!std::isfinite(pr.objective))
    throw NumericError("policy objective diverged at step " + std::to_string(t_));
  last_policy_objective_ = pr.objective;

  approx::MlpGrads ascent = pr.d_actor;
  ascent.scale(-1.0);  // Adam minimizes; the objective is maximized
  adam_step(agent_->actor, ascent, agent_->actor_opt, agent_->cfg.lr_actor);

  if (probe == QProbeMode::Learned) {
    double lr_alpha = dec.lr_alpha_hat;
    if (agent_->alpha_tuning_paused) lr_alpha = 0.0;
    if (lr_alpha > 0.0) {
      const auto tj =
          agent::temperature_objective(agent_->alpha(), pr.log_probs, agent_->target_entropy);
      const double d_log_alpha = agent_->alpha() * tj.d_alpha;
      agent_->alpha_opt.update(agent_->log_alpha, d_log_alpha, lr_alpha);
    }
  }

  if (critics_learn) {
    polyak_update(agent_->q1_target, agent_->q1, agent_->cfg.tau);
    polyak_update(agent_->q2_target, agent_->q2, agent_->cfg.tau);
  }
  agent_->update_steps += 1;
}

// ---- Checkpointing ----------------------------------------------------------

json Trainer::checkpoint_json(const RunRecorder* recorder) const {
  json buf;
  {
    const auto& b = agent_->buffer;
    json st = json::array(), ac = json::array(), ns = json::array();
    std::vector<double> rw;
    std::vector<int> term;
    rw.reserve(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto& tr = b.at(i);
      st.push_back(vec_to_json(tr.state));
      ac.push_back(vec_to_json(tr.action));
      ns.push_back(vec_to_json(tr.next_state));
      rw.push_back(tr.reward);
      term.push_back(tr.terminal ? 1 : 0);
    }
    buf = {{"states", st}, {"actions", ac}, {"next_states", ns},
           {"rewards", rw}, {"terminal", term}, {"cursor", agent_->buffer.cursor()}};
  }

  json j = {
      {"format", "csac-checkpoint-v1"},
      {"fingerprint", cfg_.fingerprint()},
      {"seed", streams_.root_seed()},
      {"step", t_},
      {"agent",
       {{"actor", mlp_to_json(agent_->actor)},
        {"q1", mlp_to_json(agent_->q1)},
        {"q2", mlp_to_json(agent_->q2)},
        {"q1_target", mlp_to_json(agent_->q1_target)},
        {"q2_target", mlp_to_json(agent_->q2_target)},
        {"actor_opt", adam_to_json(agent_->actor_opt)},
        {"q1_opt", adam_to_json(agent_->q1_opt)},
        {"q2_opt", adam_to_json(agent_->q2_opt)},
        {"log_alpha", agent_->log_alpha},
        {"alpha_opt",
         {{"m", agent_->alpha_opt.m}, {"v", agent_->alpha_opt.v}, {"step", agent_->alpha_opt.step}}},
        {"avg_reward", agent_->avg_reward},
        {"target_entropy", agent_->target_entropy},
        {"alpha_tuning_paused", agent_->alpha_tuning_paused},
        {"env_steps", agent_->env_steps},
        {"update_steps", agent_->update_steps}}},
      {"buffer", buf},
      {"toggle",
       {{"reward_accum", toggle_.reward_accum},
        {"steps_in_period", toggle_.steps_in_period},
        {"prev_period_avg", toggle_.prev_period_avg},
        {"last_period_avg", toggle_.last_period_avg},
        {"complete_periods", toggle_.complete_periods},
        {"hold_fixed", toggle_.hold_fixed},
        {"eta_q", toggle_.eta_q}}},
      {"env", env_->state_to_json()},
      {"obs", vec_to_json(obs_)},
      {"rng", streams_.serialize()},
  };
  if (rnd_) {
    j["rnd"] = {{"predictor", mlp_to_json(rnd_->predictor)},
                {"target", mlp_to_json(rnd_->target)},
                {"predictor_opt", adam_to_json(rnd_->predictor_opt)},
                {"obs_moments", moments_to_json(rnd_->obs_moments)},
                {"intrinsic_moments", moments_to_json(rnd_->intrinsic_moments)}};
  }
  if (recorder) j["recorder"] = recorder->to_json();
  return j;
}

void Trainer::restore_checkpoint(const json& j, RunRecorder* recorder) {
  if (j.at("fingerprint").get<std::string>() != cfg_.fingerprint())
    throw ConfigError("checkpoint belongs to a different config fingerprint");

  t_ = j.at("step").get<long>();
  const json& a = j.at("agent");
  agent_->actor = mlp_from_json(a.at("actor"));
  agent_->q1 = mlp_from_json(a.at("q1"));
  agent_->q2 = mlp_from_json(a.at("q2"));
  agent_->q1_target = mlp_from_json(a.at("q1_target"));
  agent_->q2_target = mlp_from_json(a.at("q2_target"));
  agent_->actor_opt = adam_from_json(a.at("actor_opt"));
  agent_->q1_opt = adam_from_json(a.at("q1_opt"));
  agent_->q2_opt = adam_from_json(a.at("q2_opt"));
  agent_->log_alpha = a.at("log_alpha").get<double>();
  agent_->alpha_opt.m = a.at("alpha_opt").at("m").get<double>();
  agent_->alpha_opt.v = a.at("alpha_opt").at("v").get<double>();
  agent_->alpha_opt.step = a.at("alpha_opt").at("step").get<long>();
  agent_->avg_reward = a.at("avg_reward").get<double>();
  agent_->target_entropy = a.at("target_entropy").get<double>();
  agent_->alpha_tuning_paused = a.at("alpha_tuning_paused").get<bool>();
  agent_->env_steps = a.at("env_steps").get<long>();
  agent_->update_steps = a.at("update_steps").get<long>();

  {
    const json& b = j.at("buffer");
    const auto& st = b.at("states");
    const auto& ac = b.at("actions");
    const auto& ns = b.at("next_states");
    const auto rw = b.at("rewards").get<std::vector<double>>();
    const auto term = b.at("terminal").get<std::vector<int>>();
    std::vector<agent::Transition> storage(rw.size());
    for (std::size_t i = 0; i < rw.size(); ++i) {
      storage[i].state = vec_from_json(st[i]);
      storage[i].action = vec_from_json(ac[i]);
      storage[i].next_state = vec_from_json(ns[i]);
      storage[i].reward = rw[i];
      storage[i].terminal = term[i] != 0;
    }
    agent_->buffer.restore(std::move(storage), b.at("cursor").get<std::size_t>());
  }

  const json& tg = j.at("toggle");
  toggle_.reward_accum = tg.at("reward_accum").get<double>();
  toggle_.steps_in_period = tg.at("steps_in_period").get<long>();
  toggle_.prev_period_avg = tg.at("prev_period_avg").get<double>();
  toggle_.last_period_avg = tg.at("last_period_avg").get<double>();
  toggle_.complete_periods = tg.at("complete_periods").get<int>();
  toggle_.hold_fixed = tg.at("hold_fixed").get<bool>();
  toggle_.eta_q = tg.at("eta_q").get<double>();

  env_->state_from_json(j.at("env"));
  obs_ = vec_from_json(j.at("obs"));
  streams_.deserialize(j.at("seed").get<std::uint64_t>(),
                       j.at("rng").get<std::map<std::string, std::string>>());

  if (j.contains("rnd")) {
    if (!rnd_) throw ConfigError("checkpoint has RND state but RND is disabled");
    rnd_->predictor = mlp_from_json(j.at("rnd").at("predictor"));
    rnd_->target = mlp_from_json(j.at("rnd").at("target"));
    rnd_->predictor_opt = adam_from_json(j.at("rnd").at("predictor_opt"));
    moments_from_json(j.at("rnd").at("obs_moments"), rnd_->obs_moments);
    moments_from_json(j.at("rnd").at("intrinsic_moments"), rnd_->intrinsic_moments);
  }
  if (recorder && j.contains("recorder")) recorder->from_json(j.at("recorder"));
}

void write_checkpoint(const std::filesystem::path& file, const Trainer& trainer,
                      const RunRecorder& recorder) {
  const auto cbor = json::to_cbor(trainer.checkpoint_json(&recorder));
  std::ofstream out(file, std::ios::binary);
  out.write(reinterpret_cast<const char*>(cbor.data()),
            static_cast<std::streamsize>(cbor.size()));
}

// ---- run_experiment ---------------------------------------------------------

RunArtifacts run_experiment(const ExperimentConfig& cfg, std::uint64_t seed,
                            const std::filesystem::path& out_dir,
                            const std::optional<std::filesystem::path>& resume_from) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  Trainer trainer(cfg, seed);
  RunRecorder recorder(trainer.env().obs_dim(), cfg.metric_cadence);

  if (resume_from) {
    std::ifstream in(*resume_from, std::ios::binary);
    if (!in) throw ConfigError("cannot open checkpoint: " + resume_from->string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    trainer.restore_checkpoint(json::from_cbor(bytes), &recorder);
  }

  const auto wall_start = std::chrono::steady_clock::now();
  try {
    while (trainer.steps_done() < cfg.total_steps) {
      trainer.step(&recorder);
      if (cfg.checkpoint_period > 0 && trainer.steps_done() % cfg.checkpoint_period == 0 &&
          trainer.steps_done() < cfg.total_steps) {
        write_checkpoint(out_dir / "checkpoint.cbor", trainer, recorder);
      }
    }
  } catch (const NumericError& e) {
    json dump = {{"error", e.what()},
                 {"step", trainer.steps_done()},
                 {"critic_loss", trainer.last_critic_loss()},
                 {"policy_objective", trainer.last_policy_objective()},
                 {"avg_reward", trainer.agent().avg_reward},
                 {"alpha", trainer.agent().alpha()},
                 {"fingerprint", cfg.fingerprint()},
                 {"seed", seed}};
    std::ofstream(out_dir / "divergence.json") << dump.dump(2) << "\n";
    throw;
  }
  const double wall_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();

  write_series_csv(out_dir / "avg_reward.csv", recorder.avg_reward());
  write_series_csv(out_dir / "avg_reward_original.csv", recorder.avg_reward_original());
  write_series_csv(out_dir / "rbar.csv", recorder.rbar());
  write_series_csv(out_dir / "alpha.csv", recorder.alpha());
  write_series_csv(out_dir / "state_variance.csv", recorder.variance());
  write_pairs_csv(out_dir / "returns.csv", "step,return", recorder.returns());
  if (cfg.iv.toggle.enabled) write_series_csv(out_dir / "eta_q.csv", recorder.eta_q());

  write_checkpoint(out_dir / "checkpoint.cbor", trainer, recorder);

  json series = json::array();
  auto add_series = [&series](const metrics::MetricSeries& s, const std::string& file) {
    series.push_back({{"name", s.name}, {"file", file}, {"points", s.points.size()}});
  };
  add_series(recorder.avg_reward(), "avg_reward.csv");
  add_series(recorder.avg_reward_original(), "avg_reward_original.csv");
  add_series(recorder.rbar(), "rbar.csv");
  add_series(recorder.alpha(), "alpha.csv");
  add_series(recorder.variance(), "state_variance.csv");
  if (cfg.iv.toggle.enabled) add_series(recorder.eta_q(), "eta_q.csv");

  json manifest = {{"task", cfg.task},
                   {"mode", cfg.mode},
                   {"fingerprint", cfg.fingerprint()},
                   {"seed", seed},
                   {"total_steps", cfg.total_steps},
                   {"metric_cadence", cfg.metric_cadence},
                   {"average_performance", recorder.average_performance()},
                   {"reset_count", recorder.reset_count()},
                   {"action_clamp_warnings", trainer.env().clamp_warnings()},
                   {"series", series},
                   {"returns_file", "returns.csv"},
                   {"wall_clock_sec", wall_sec},
                   {"config", cfg.canonical_dump()}};
  std::ofstream(out_dir / "manifest.json") << manifest.dump(2) << "\n";

  return RunArtifacts{out_dir, cfg.fingerprint(), seed, recorder.average_performance()};
}

}  // namespace csac::harness
