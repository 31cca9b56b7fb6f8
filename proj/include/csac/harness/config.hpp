#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csac/agent/sac_agent.hpp"
#include "csac/envs/env.hpp"
#include "csac/interventions/interventions.hpp"

namespace csac::harness {

/// Fully-resolved experiment description. Everything here is serializable;
/// all fields except seed, out_dir and checkpoint_period feed the config
/// fingerprint.
struct ExperimentConfig {
  // [run]
  std::string task = "pendulum";
  std::string mode = "continuing";  // episodic | continuing
  long total_steps = 100000;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  long checkpoint_period = 0;  // 0: checkpoint only at the end
  long metric_cadence = 1000;
  std::string preset = "none";  // none | atoggle_ln

  envs::EnvConfig env;
  agent::SacConfig agent;  // obs/action dims resolved from the task
  interventions::InterventionConfig iv;

  std::string fingerprint() const;
  std::string canonical_dump() const;  // deterministic key=value listing
};

/// Parses key/value text with [section] headers into a resolved config.
/// Unknown keys, type mismatches and constraint violations raise
/// ConfigError with the offending line number.
ExperimentConfig parse_config(const std::string& text);

/// Same, with extra `key=value` overrides applied after the file content
/// (used by CLI flags and sweep grids).
ExperimentConfig parse_config(const std::string& text,
                              const std::vector<std::pair<std::string, std::string>>& overrides);

ExperimentConfig load_config_file(const std::string& path,
                                  const std::vector<std::pair<std::string, std::string>>& overrides = {});

}  // namespace csac::harness
