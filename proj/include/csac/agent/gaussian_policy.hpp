#pragma once

#include "csac/approx/mlp.hpp"
#include "csac/rng.hpp"

namespace csac::agent {

using approx::MlpParams;

/// Squashed-Gaussian head conventions. The policy network emits 2*|A|
/// values per state: means in the first |A| rows, log standard deviations
/// in the last |A| rows (clamped to [log_sig_min, log_sig_max]).
struct PolicyHeadConfig {
  double log_sig_min = -20.0;
  double log_sig_max = 2.0;
  double tanh_eps = 1e-6;  // inside log(1 - tanh^2 + eps)
};

/// Batched reparameterized sample: x = mu + sigma * noise, a = tanh(x).
struct SquashedSample {
  Mat actions;    // (A x B), in (-1, 1)
  Mat pre_tanh;   // x
  Mat mu;         // clamp-applied mean rows
  Mat sigma;      // exp(clamped log sigma)
  Mat log_sigma_raw;  // pre-clamp values, for clamp gradient gating
  Vec log_prob;   // per sample, summed over action dimensions
};

SquashedSample squash_sample(const Mat& policy_out, const Mat& noise,
                             const PolicyHeadConfig& head);

/// Draw one action; noise comes from `rng`.
struct ActionSample {
  Vec action;
  double log_prob;
};
ActionSample sample_action(const Vec& policy_out, const PolicyHeadConfig& head, Rng& rng);

/// Log-density of a given pre-tanh value under the head (used by the
/// quadrature oracle and diagnostics).
double log_prob_pre_tanh(const Vec& policy_out, const Vec& pre_tanh,
                         const PolicyHeadConfig& head);

/// Gradient plumbing for reparameterized objectives. Given per-sample,
/// per-dimension gradients w.r.t. the action (d_action) and a coefficient
/// on log_prob (so the objective contains coef_logp * log pi), accumulates
/// the gradient w.r.t. the raw policy outputs (2A x B).
///
///   d/d mu      = d_action * (1 - tanh^2 x) + coef_logp * dlogp/dx
///   d/d logsig  = (same chain) * sigma * noise - coef_logp   [clamp-gated]
/// with dlogp/dx = 2 tanh(x) (1 - tanh^2 x) / (1 - tanh^2 x + eps).
Mat policy_output_grad(const SquashedSample& s, const Mat& noise, const Mat& d_action,
                       const Vec& coef_logp, const PolicyHeadConfig& head);

}  // namespace csac::agent
