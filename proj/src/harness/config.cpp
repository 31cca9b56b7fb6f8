#include "csac/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace csac::harness {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  if (line > 0)
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
  throw ConfigError("config: " + msg);
}

double parse_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) fail(line, "expected a number, got '" + v + "'");
    return d;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "expected a number, got '" + v + "'");
  }
}

long parse_long(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const long l = std::stol(v, &pos);
    if (pos != v.size()) fail(line, "expected an integer, got '" + v + "'");
    return l;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "expected an integer, got '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const unsigned long long u = std::stoull(v, &pos);
    if (pos != v.size()) fail(line, "expected an unsigned integer, got '" + v + "'");
    return u;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "expected an unsigned integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(line, "expected a boolean, got '" + v + "'");
}

approx::NormMode parse_norm(const std::string& v, int line) {
  if (v == "none") return approx::NormMode::None;
  if (v == "layer_norm") return approx::NormMode::LayerNorm;
  if (v == "pnorm") return approx::NormMode::PnormLastHidden;
  fail(line, "norm mode must be none|layer_norm|pnorm, got '" + v + "'");
}

const char* norm_name(approx::NormMode m) {
  switch (m) {
    case approx::NormMode::LayerNorm: return "layer_norm";
    case approx::NormMode::PnormLastHidden: return "pnorm";
    default: return "none";
  }
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, int line)>;

struct Binding {
  Setter set;
};

// One table drives parsing, overrides and ambiguity checks for bare keys.
const std::map<std::string, Binding>& bindings() {
  static const std::map<std::string, Binding> table = [] {
    std::map<std::string, Binding> t;
    auto add = [&t](const std::string& key, Setter s) { t[key] = Binding{std::move(s)}; };

    add("run.task", [](ExperimentConfig& c, const std::string& v, int) { c.task = v; });
    add("run.mode", [](ExperimentConfig& c, const std::string& v, int) { c.mode = v; });
    add("run.total_steps", [](ExperimentConfig& c, const std::string& v, int l) { c.total_steps = parse_long(v, l); });
    add("run.seed", [](ExperimentConfig& c, const std::string& v, int l) { c.seed = parse_u64(v, l); });
    add("run.out_dir", [](ExperimentConfig& c, const std::string& v, int) { c.out_dir = v; });
    add("run.checkpoint_period", [](ExperimentConfig& c, const std::string& v, int l) { c.checkpoint_period = parse_long(v, l); });
    add("run.metric_cadence", [](ExperimentConfig& c, const std::string& v, int l) { c.metric_cadence = parse_long(v, l); });
    add("run.preset", [](ExperimentConfig& c, const std::string& v, int) { c.preset = v; });

    add("env.time_reset_period", [](ExperimentConfig& c, const std::string& v, int l) { c.env.time_reset_period = parse_long(v, l); });
    add("env.state_reset_enabled", [](ExperimentConfig& c, const std::string& v, int l) { c.env.state_reset_enabled = parse_bool(v, l); });
    add("env.reset_penalty", [](ExperimentConfig& c, const std::string& v, int l) { c.env.reset_penalty = parse_double(v, l); });
    add("env.remove_constant_term", [](ExperimentConfig& c, const std::string& v, int l) { c.env.remove_constant_term = parse_bool(v, l); });

    add("reacher.dt", [](ExperimentConfig& c, const std::string& v, int l) { c.env.reacher.dt = parse_double(v, l); });
    add("reacher.link1", [](ExperimentConfig& c, const std::string& v, int l) { c.env.reacher.link1 = parse_double(v, l); });
    add("reacher.link2", [](ExperimentConfig& c, const std::string& v, int l) { c.env.reacher.link2 = parse_double(v, l); });
    add("reacher.torque_gain", [](ExperimentConfig& c, const std::string& v, int l) { c.env.reacher.torque_gain = parse_double(v, l); });
    add("reacher.damping", [](ExperimentConfig& c, const std::string& v, int l) { c.env.reacher.damping = parse_double(v, l); });
    add("reacher.vel_limit", [](ExperimentConfig& c, const std::string& v, int l) { c.env.reacher.vel_limit = parse_double(v, l); });
    add("reacher.base_joint_limit", [](ExperimentConfig& c, const std::string& v, int l) { c.env.reacher.base_joint_limit = parse_double(v, l); });
    add("reacher.d_thresh", [](ExperimentConfig& c, const std::string& v, int l) { c.env.reacher.d_thresh = parse_double(v, l); });
    add("reacher.v_thresh", [](ExperimentConfig& c, const std::string& v, int l) { c.env.reacher.v_thresh = parse_double(v, l); });
    add("reacher.reach_reward", [](ExperimentConfig& c, const std::string& v, int l) { c.env.reacher.reach_reward = parse_double(v, l); });
    add("reacher.goal_radius_max", [](ExperimentConfig& c, const std::string& v, int l) { c.env.reacher.goal_radius_max = parse_double(v, l); });
    add("reacher.init_noise", [](ExperimentConfig& c, const std::string& v, int l) { c.env.reacher.init_noise = parse_double(v, l); });

    add("corridor.dt", [](ExperimentConfig& c, const std::string& v, int l) { c.env.corridor.dt = parse_double(v, l); });
    add("corridor.half_width", [](ExperimentConfig& c, const std::string& v, int l) { c.env.corridor.half_width = parse_double(v, l); });
    add("corridor.accel_gain", [](ExperimentConfig& c, const std::string& v, int l) { c.env.corridor.accel_gain = parse_double(v, l); });
    add("corridor.yaw_gain", [](ExperimentConfig& c, const std::string& v, int l) { c.env.corridor.yaw_gain = parse_double(v, l); });
    add("corridor.damping", [](ExperimentConfig& c, const std::string& v, int l) { c.env.corridor.damping = parse_double(v, l); });
    add("corridor.flip_impact_speed", [](ExperimentConfig& c, const std::string& v, int l) { c.env.corridor.flip_impact_speed = parse_double(v, l); });
    add("corridor.ctrl_cost", [](ExperimentConfig& c, const std::string& v, int l) { c.env.corridor.ctrl_cost = parse_double(v, l); });
    add("corridor.alive_bonus", [](ExperimentConfig& c, const std::string& v, int l) { c.env.corridor.alive_bonus = parse_double(v, l); });
    add("corridor.init_noise", [](ExperimentConfig& c, const std::string& v, int l) { c.env.corridor.init_noise = parse_double(v, l); });

    add("pendulum.dt", [](ExperimentConfig& c, const std::string& v, int l) { c.env.pendulum.dt = parse_double(v, l); });
    add("pendulum.gravity", [](ExperimentConfig& c, const std::string& v, int l) { c.env.pendulum.gravity = parse_double(v, l); });
    add("pendulum.torque_gain", [](ExperimentConfig& c, const std::string& v, int l) { c.env.pendulum.torque_gain = parse_double(v, l); });
    add("pendulum.damping", [](ExperimentConfig& c, const std::string& v, int l) { c.env.pendulum.damping = parse_double(v, l); });
    add("pendulum.vel_limit", [](ExperimentConfig& c, const std::string& v, int l) { c.env.pendulum.vel_limit = parse_double(v, l); });
    add("pendulum.balance_threshold", [](ExperimentConfig& c, const std::string& v, int l) { c.env.pendulum.balance_threshold = parse_double(v, l); });
    add("pendulum.init_noise", [](ExperimentConfig& c, const std::string& v, int l) { c.env.pendulum.init_noise = parse_double(v, l); });

    add("agent.hidden_layers", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.hidden_layers = static_cast<int>(parse_long(v, l)); });
    add("agent.hidden_units", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.hidden_units = static_cast<int>(parse_long(v, l)); });
    add("agent.batch_size", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.batch_size = static_cast<int>(parse_long(v, l)); });
    add("agent.buffer_capacity", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.buffer_capacity = static_cast<std::size_t>(parse_u64(v, l)); });
    add("agent.warmup_steps", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.warmup_steps = static_cast<int>(parse_long(v, l)); });
    add("agent.gamma", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.gamma = parse_double(v, l); });
    add("agent.tau", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.tau = parse_double(v, l); });
    add("agent.lr_actor", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.lr_actor = parse_double(v, l); });
    add("agent.lr_critic", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.lr_critic = parse_double(v, l); });
    add("agent.lr_alpha", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.lr_alpha = parse_double(v, l); });
    add("agent.avg_reward_step", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.avg_reward_step = parse_double(v, l); });
    add("agent.init_alpha", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.init_alpha = parse_double(v, l); });
    add("agent.target_entropy", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.target_entropy = parse_double(v, l); });
    add("agent.actor_norm", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.actor_norm = parse_norm(v, l); });
    add("agent.critic_norm", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.critic_norm = parse_norm(v, l); });
    add("agent.log_sig_min", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.head.log_sig_min = parse_double(v, l); });
    add("agent.log_sig_max", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.head.log_sig_max = parse_double(v, l); });
    add("agent.tanh_eps", [](ExperimentConfig& c, const std::string& v, int l) { c.agent.head.tanh_eps = parse_double(v, l); });

    add("toggle.enabled", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.toggle.enabled = parse_bool(v, l); });
    add("toggle.alpha", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.toggle.fixed_alpha = parse_double(v, l); });
    add("toggle.period", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.toggle.period = parse_long(v, l); });
    add("toggle.lr_alpha", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.toggle.lr_alpha = parse_double(v, l); });
    add("toggle.alpha_in_target", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.toggle.alpha_in_target = parse_bool(v, l); });

    add("rnd.enabled", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.rnd.enabled = parse_bool(v, l); });
    add("rnd.c_int", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.rnd.c_int = parse_double(v, l); });
    add("rnd.update_proportion", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.rnd.update_proportion = parse_double(v, l); });
    add("rnd.lr", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.rnd.lr = parse_double(v, l); });
    add("rnd.predictor_hidden_layers", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.rnd.predictor_hidden_layers = static_cast<int>(parse_long(v, l)); });
    add("rnd.target_hidden_layers", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.rnd.target_hidden_layers = static_cast<int>(parse_long(v, l)); });
    add("rnd.hidden_units", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.rnd.hidden_units = static_cast<int>(parse_long(v, l)); });
    add("rnd.output_dim", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.rnd.output_dim = static_cast<int>(parse_long(v, l)); });

    add("penalty.reward_tau", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.penalty.reward_tau = parse_double(v, l); });
    add("penalty.policy_lambda", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.penalty.policy_lambda = parse_double(v, l); });

    add("probe.q_mode", [](ExperimentConfig& c, const std::string& v, int l) {
      if (v == "learned") c.iv.probe = interventions::QProbeMode::Learned;
      else if (v == "fixed") c.iv.probe = interventions::QProbeMode::Fixed;
      else if (v == "reinit_every_step") c.iv.probe = interventions::QProbeMode::ReinitEveryStep;
      else fail(l, "probe.q_mode must be learned|fixed|reinit_every_step");
    });

    add("objective.mode", [](ExperimentConfig& c, const std::string& v, int l) {
      if (v == "standard") c.iv.objective = interventions::ObjectiveMode::Standard;
      else if (v == "entropy_only") c.iv.objective = interventions::ObjectiveMode::EntropyOnly;
      else fail(l, "objective.mode must be standard|entropy_only");
    });
    add("objective.entropy_target", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.entropy_only_target = parse_double(v, l); });

    add("fixed_dist.enabled", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.fixed_dist.enabled = parse_bool(v, l); });
    add("fixed_dist.mu", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.fixed_dist.mu = parse_double(v, l); });
    add("fixed_dist.sigma", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.fixed_dist.sigma = parse_double(v, l); });

    add("net_reset.variant", [](ExperimentConfig& c, const std::string& v, int l) {
      if (v == "none") c.iv.net_reset.variant = interventions::NetResetVariant::None;
      else if (v == "plain") c.iv.net_reset.variant = interventions::NetResetVariant::Plain;
      else if (v == "reset_alpha") c.iv.net_reset.variant = interventions::NetResetVariant::ResetAlpha;
      else if (v == "reset_target_entropy") c.iv.net_reset.variant = interventions::NetResetVariant::ResetTargetEntropy;
      else fail(l, "net_reset.variant must be none|plain|reset_alpha|reset_target_entropy");
    });
    add("net_reset.period", [](ExperimentConfig& c, const std::string& v, int l) { c.iv.net_reset.period = parse_long(v, l); });

    return t;
  }();
  return table;
}

// Bare keys resolve by unique ".key" suffix match over the table.
std::string resolve_key(const std::string& section, const std::string& key, int line) {
  const auto& table = bindings();
  if (key.find('.') != std::string::npos) {
    if (table.count(key)) return key;
    fail(line, "unknown key '" + key + "'");
  }
  if (!section.empty()) {
    const std::string full = section + "." + key;
    if (table.count(full)) return full;
    fail(line, "unknown key '" + full + "'");
  }
  std::string match;
  for (const auto& [k, b] : table) {
    const auto pos = k.rfind('.');
    if (k.substr(pos + 1) == key) {
      if (!match.empty()) fail(line, "ambiguous key '" + key + "' (use section.key)");
      match = k;
    }
  }
  if (match.empty()) fail(line, "unknown key '" + key + "'");
  return match;
}

struct RawEntry {
  std::string key;
  std::string value;
  int line;
};

std::vector<RawEntry> tokenize(const std::string& text) {
  std::vector<RawEntry> out;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    out.push_back({resolve_key(section, key, line_no), value, line_no});
  }
  return out;
}

void apply_task_defaults(ExperimentConfig& c, const std::vector<RawEntry>& entries) {
  auto explicitly_set = [&entries](const std::string& key) {
    return std::any_of(entries.begin(), entries.end(),
                       [&key](const RawEntry& e) { return e.key == key; });
  };
  if (!explicitly_set("env.time_reset_period")) {
    if (c.task == "reacher") c.env.time_reset_period = 50;
    else if (c.task == "corridor") c.env.time_reset_period = 1000;
    else c.env.time_reset_period = 500;
  }
  if (!explicitly_set("env.state_reset_enabled"))
    c.env.state_reset_enabled = (c.task == "corridor");
  if (!explicitly_set("env.reset_penalty"))
    c.env.reset_penalty = (c.task == "corridor") ? 50.0 : 0.0;
  if (!explicitly_set("env.remove_constant_term"))
    c.env.remove_constant_term = (c.task == "corridor" && c.mode == "continuing");

  if (c.preset == "atoggle_ln") {
    if (!explicitly_set("toggle.enabled")) c.iv.toggle.enabled = true;
    if (!explicitly_set("agent.actor_norm")) c.agent.actor_norm = approx::NormMode::LayerNorm;
    if (!explicitly_set("agent.critic_norm")) c.agent.critic_norm = approx::NormMode::LayerNorm;
  } else if (c.preset != "none") {
    fail(0, "unknown preset '" + c.preset + "'");
  }
}

void validate(const ExperimentConfig& c) {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) fail(0, msg);
  };
  require(c.task == "pendulum" || c.task == "reacher" || c.task == "corridor",
          "task must be pendulum|reacher|corridor");
  require(c.mode == "episodic" || c.mode == "continuing", "mode must be episodic|continuing");
  require(c.total_steps >= 1, "total_steps must be >= 1");
  require(c.metric_cadence >= 1, "metric_cadence must be >= 1");
  require(c.checkpoint_period >= 0, "checkpoint_period must be >= 0");
  require(c.env.time_reset_period >= 0, "time_reset_period must be >= 0");
  require(c.env.reset_penalty >= 0.0, "reset_penalty must be >= 0");
  require(c.agent.gamma > 0.0 && c.agent.gamma <= 1.0, "gamma must be in (0, 1]");
  require(c.agent.tau > 0.0 && c.agent.tau <= 1.0, "tau must be in (0, 1]");
  require(c.agent.lr_actor > 0.0 && c.agent.lr_critic > 0.0 && c.agent.lr_alpha > 0.0,
          "step sizes must be positive");
  require(c.agent.avg_reward_step > 0.0 && c.agent.avg_reward_step < 1.0,
          "avg_reward_step must be in (0, 1)");
  require(c.agent.init_alpha > 0.0, "init_alpha must be positive");
  require(c.agent.hidden_layers >= 1, "hidden_layers must be >= 1");
  require(c.agent.hidden_units >= 2, "hidden_units must be >= 2");
  require(c.agent.batch_size >= 1, "batch_size must be >= 1");
  require(c.agent.buffer_capacity >= static_cast<std::size_t>(c.agent.batch_size),
          "buffer_capacity must be >= batch_size");
  require(c.agent.warmup_steps >= 0, "warmup_steps must be >= 0");
  require(c.agent.head.log_sig_min < c.agent.head.log_sig_max,
          "log_sig_min must be below log_sig_max");
  require(c.agent.head.tanh_eps > 0.0, "tanh_eps must be positive");
  require(c.iv.toggle.period >= 1, "toggle.period must be >= 1");
  require(c.iv.toggle.fixed_alpha > 0.0, "toggle.alpha must be positive");
  require(c.iv.toggle.lr_alpha > 0.0, "toggle.lr_alpha must be positive");
  require(c.iv.rnd.c_int >= 0.0, "rnd.c_int must be >= 0");
  require(c.iv.rnd.update_proportion >= 0.0 && c.iv.rnd.update_proportion <= 1.0,
          "rnd.update_proportion must be in [0, 1]");
  require(c.iv.rnd.lr > 0.0, "rnd.lr must be positive");
  require(c.iv.penalty.reward_tau >= 0.0 && c.iv.penalty.policy_lambda >= 0.0,
          "penalties must be >= 0");
  require(c.iv.fixed_dist.sigma > 0.0, "fixed_dist.sigma must be positive");
  if (c.iv.net_reset.variant != interventions::NetResetVariant::None)
    require(c.iv.net_reset.period >= 1, "net_reset.period must be >= 1");
  require(c.env.reacher.d_thresh > 0.0 && c.env.reacher.v_thresh > 0.0,
          "reacher thresholds must be positive");
  require(c.env.reacher.dt > 0.0 && c.env.corridor.dt > 0.0 && c.env.pendulum.dt > 0.0,
          "dt must be positive");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) { return parse_config(text, {}); }

ExperimentConfig parse_config(const std::string& text,
                              const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::vector<RawEntry> entries = tokenize(text);
  for (const auto& [k, v] : overrides)
    entries.push_back({resolve_key("", k, 0), v, 0});

  ExperimentConfig cfg;
  const auto& table = bindings();
  for (const auto& e : entries) table.at(e.key).set(cfg, e.value, e.line);
  apply_task_defaults(cfg, entries);
  cfg.env.task = cfg.task;
  cfg.agent.mode = (cfg.mode == "continuing") ? agent::AlgoMode::Continuing
                                              : agent::AlgoMode::Episodic;
  if (std::isnan(cfg.agent.target_entropy)) {
    const int action_dim = (cfg.task == "pendulum") ? 1 : 2;
    cfg.agent.target_entropy = -static_cast<double>(action_dim);
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path,
                                  const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::string ExperimentConfig::canonical_dump() const {
  std::ostringstream os;
  os.precision(17);
  auto kv = [&os](const std::string& k, const auto& v) { os << k << "=" << v << "\n"; };
  kv("run.task", task);
  kv("run.mode", mode);
  kv("run.total_steps", total_steps);
  kv("run.metric_cadence", metric_cadence);
  kv("run.preset", preset);
  kv("env.time_reset_period", env.time_reset_period);
  kv("env.state_reset_enabled", env.state_reset_enabled);
  kv("env.reset_penalty", env.reset_penalty);
  kv("env.remove_constant_term", env.remove_constant_term);
  kv("reacher.dt", env.reacher.dt);
  kv("reacher.link1", env.reacher.link1);
  kv("reacher.link2", env.reacher.link2);
  kv("reacher.torque_gain", env.reacher.torque_gain);
  kv("reacher.damping", env.reacher.damping);
  kv("reacher.vel_limit", env.reacher.vel_limit);
  kv("reacher.base_joint_limit", env.reacher.base_joint_limit);
  kv("reacher.d_thresh", env.reacher.d_thresh);
  kv("reacher.v_thresh", env.reacher.v_thresh);
  kv("reacher.reach_reward", env.reacher.reach_reward);
  kv("reacher.goal_radius_max", env.reacher.goal_radius_max);
  kv("reacher.init_noise", env.reacher.init_noise);
  kv("corridor.dt", env.corridor.dt);
  kv("corridor.half_width", env.corridor.half_width);
  kv("corridor.accel_gain", env.corridor.accel_gain);
  kv("corridor.yaw_gain", env.corridor.yaw_gain);
  kv("corridor.damping", env.corridor.damping);
  kv("corridor.flip_impact_speed", env.corridor.flip_impact_speed);
  kv("corridor.ctrl_cost", env.corridor.ctrl_cost);
  kv("corridor.alive_bonus", env.corridor.alive_bonus);
  kv("corridor.init_noise", env.corridor.init_noise);
  kv("pendulum.dt", env.pendulum.dt);
  kv("pendulum.gravity", env.pendulum.gravity);
  kv("pendulum.torque_gain", env.pendulum.torque_gain);
  kv("pendulum.damping", env.pendulum.damping);
  kv("pendulum.vel_limit", env.pendulum.vel_limit);
  kv("pendulum.balance_threshold", env.pendulum.balance_threshold);
  kv("pendulum.init_noise", env.pendulum.init_noise);
  kv("agent.hidden_layers", agent.hidden_layers);
  kv("agent.hidden_units", agent.hidden_units);
  kv("agent.batch_size", agent.batch_size);
  kv("agent.buffer_capacity", agent.buffer_capacity);
  kv("agent.warmup_steps", agent.warmup_steps);
  kv("agent.gamma", agent.gamma);
  kv("agent.tau", agent.tau);
  kv("agent.lr_actor", agent.lr_actor);
  kv("agent.lr_critic", agent.lr_critic);
  kv("agent.lr_alpha", agent.lr_alpha);
  kv("agent.avg_reward_step", agent.avg_reward_step);
  kv("agent.init_alpha", agent.init_alpha);
  kv("agent.target_entropy", agent.target_entropy);
  kv("agent.actor_norm", norm_name(agent.actor_norm));
  kv("agent.critic_norm", norm_name(agent.critic_norm));
  kv("agent.log_sig_min", agent.head.log_sig_min);
  kv("agent.log_sig_max", agent.head.log_sig_max);
  kv("agent.tanh_eps", agent.head.tanh_eps);
  kv("toggle.enabled", iv.toggle.enabled);
  kv("toggle.alpha", iv.toggle.fixed_alpha);
  kv("toggle.period", iv.toggle.period);
  kv("toggle.lr_alpha", iv.toggle.lr_alpha);
  kv("toggle.alpha_in_target", iv.toggle.alpha_in_target);
  kv("rnd.enabled", iv.rnd.enabled);
  kv("rnd.c_int", iv.rnd.c_int);
  kv("rnd.update_proportion", iv.rnd.update_proportion);
  kv("rnd.lr", iv.rnd.lr);
  kv("rnd.predictor_hidden_layers", iv.rnd.predictor_hidden_layers);
  kv("rnd.target_hidden_layers", iv.rnd.target_hidden_layers);
  kv("rnd.hidden_units", iv.rnd.hidden_units);
  kv("rnd.output_dim", iv.rnd.output_dim);
  kv("penalty.reward_tau", iv.penalty.reward_tau);
  kv("penalty.policy_lambda", iv.penalty.policy_lambda);
  kv("probe.q_mode", static_cast<int>(iv.probe));
  kv("objective.mode", static_cast<int>(iv.objective));
  kv("objective.entropy_target", iv.entropy_only_target);
  kv("fixed_dist.enabled", iv.fixed_dist.enabled);
  kv("fixed_dist.mu", iv.fixed_dist.mu);
  kv("fixed_dist.sigma", iv.fixed_dist.sigma);
  kv("net_reset.variant", static_cast<int>(iv.net_reset.variant));
  kv("net_reset.period", iv.net_reset.period);
  return os.str();
}

std::string ExperimentConfig::fingerprint() const {
  const std::uint64_t h = fnv1a64(canonical_dump());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace csac::harness
