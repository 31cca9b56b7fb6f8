#include "csac/approx/adam.hpp"

#include <cmath>

namespace csac::approx {

AdamState make_adam(const MlpParams& p) {
  AdamState s;
  for (std::size_t l = 0; l < p.weights.size(); ++l) {
    s.m_w.emplace_back(Mat::Zero(p.weights[l].rows(), p.weights[l].cols()));
    s.v_w.emplace_back(Mat::Zero(p.weights[l].rows(), p.weights[l].cols()));
    s.m_b.emplace_back(Vec::Zero(p.biases[l].size()));
    s.v_b.emplace_back(Vec::Zero(p.biases[l].size()));
  }
  return s;
}

void adam_step(MlpParams& params, const MlpGrads& grads, AdamState& state, double lr) {
  if (!(lr > 0.0)) throw std::invalid_argument("adam_step: lr must be positive");
  if (!grads.all_finite()) throw NumericError("adam_step: non-finite gradient");

  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    state.m_w[l] = state.beta1 * state.m_w[l] + (1.0 - state.beta1) * grads.d_weights[l];
    state.v_w[l] = state.beta2 * state.v_w[l].array() +
                   (1.0 - state.beta2) * grads.d_weights[l].array().square();
    params.weights[l].array() -=
        lr * (state.m_w[l].array() / bc1) / ((state.v_w[l].array() / bc2).sqrt() + state.eps);

    state.m_b[l] = state.beta1 * state.m_b[l] + (1.0 - state.beta1) * grads.d_biases[l];
    state.v_b[l] = state.beta2 * state.v_b[l].array() +
                   (1.0 - state.beta2) * grads.d_biases[l].array().square();
    params.biases[l].array() -=
        lr * (state.m_b[l].array() / bc1) / ((state.v_b[l].array() / bc2).sqrt() + state.eps);
  }
}

void ScalarAdam::update(double& param, double grad, double lr) {
  if (!std::isfinite(grad)) throw NumericError("ScalarAdam: non-finite gradient");
  step += 1;
  m = beta1 * m + (1.0 - beta1) * grad;
  v = beta2 * v + (1.0 - beta2) * grad * grad;
  const double mhat = m / (1.0 - std::pow(beta1, static_cast<double>(step)));
  const double vhat = v / (1.0 - std::pow(beta2, static_cast<double>(step)));
  param -= lr * mhat / (std::sqrt(vhat) + eps);
}

}  // namespace csac::approx
