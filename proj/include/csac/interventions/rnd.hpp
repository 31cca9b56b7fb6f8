#pragma once

#include <vector>

#include "csac/approx/adam.hpp"
#include "csac/approx/mlp.hpp"
#include "csac/interventions/running_moments.hpp"
#include "csac/rng.hpp"

namespace csac::interventions {

using approx::AdamState;
using approx::MlpGrads;
using approx::MlpParams;

struct RndConfig {
  bool enabled = false;
  double c_int = 1.0;           // intrinsic reward coefficient
  double update_proportion = 0.25;
  double lr = 3e-4;
  int predictor_hidden_layers = 4;
  int target_hidden_layers = 2;
  int hidden_units = 256;
  int output_dim = 256;
};

/// Predictor/fixed-target pair plus the running statistics used to
/// normalize observations (inputs to both networks) and intrinsic rewards.
struct RndState {
  MlpParams predictor;
  MlpParams target;  // never updated after construction
  AdamState predictor_opt;
  RunningMoments obs_moments;
  RunningMoments intrinsic_moments;
};

RndState make_rnd(const RndConfig& cfg, int obs_dim, Rng& init_rng);

/// Raw intrinsic rewards 0.5 * ||f_psi(s) - f_target(s)||^2 per sample.
/// Inputs must already be normalized by the observation moments.
Vec rnd_intrinsic_raw(const RndState& rnd, const Mat& normalized_states);

struct RndLossResult {
  double loss = 0.0;
  MlpGrads d_predictor;
};

/// Masked, scaled predictor objective:
///   J = sum_i m_i * l_i / max(sum_i m_i, 1),
///   l_i = (1/obs_dim) * ||f_psi(s'_i) - f_target(s'_i)||^2.
/// Masked-out samples contribute zero loss and zero gradient.
RndLossResult rnd_loss(const RndState& rnd, const Mat& normalized_next_states,
                       const std::vector<std::uint8_t>& masks, int obs_dim);

}  // namespace csac::interventions
