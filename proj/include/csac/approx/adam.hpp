#pragma once

#include "csac/approx/mlp.hpp"

namespace csac::approx {

/// Bias-corrected Adam state mirroring the structure of an MlpParams.
struct AdamState {
  std::vector<Mat> m_w, v_w;
  std::vector<Vec> m_b, v_b;
  long step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

AdamState make_adam(const MlpParams& p);

/// One Adam update in place. Rejects non-finite gradients with NumericError
/// before touching params or state.
void adam_step(MlpParams& params, const MlpGrads& grads, AdamState& state, double lr);

/// Adam for a single scalar parameter (the log-temperature).
struct ScalarAdam {
  double m = 0.0, v = 0.0;
  long step = 0;
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

  void update(double& param, double grad, double lr);
};

}  // namespace csac::approx
