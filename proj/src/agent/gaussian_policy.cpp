#include "csac/agent/gaussian_policy.hpp"

#include <cmath>

namespace csac::agent {

namespace {
constexpr double kLogTwoPi = 1.8378770664093453;  // log(2*pi)
}

SquashedSample squash_sample(const Mat& policy_out, const Mat& noise,
                             const PolicyHeadConfig& head) {
  const Eigen::Index A = policy_out.rows() / 2;
  const Eigen::Index B = policy_out.cols();

  SquashedSample s;
  s.mu = policy_out.topRows(A);
  s.log_sigma_raw = policy_out.bottomRows(A);
  Mat log_sigma = s.log_sigma_raw.cwiseMax(head.log_sig_min).cwiseMin(head.log_sig_max);
  s.sigma = log_sigma.array().exp().matrix();
  s.pre_tanh = s.mu + s.sigma.cwiseProduct(noise);
  s.actions = s.pre_tanh.array().tanh().matrix();

  s.log_prob.resize(B);
  for (Eigen::Index j = 0; j < B; ++j) {
    double lp = 0.0;
    for (Eigen::Index d = 0; d < A; ++d) {
      const double t = s.actions(d, j);
      lp += -0.5 * kLogTwoPi - log_sigma(d, j) - 0.5 * noise(d, j) * noise(d, j) -
            std::log(1.0 - t * t + head.tanh_eps);
    }
    s.log_prob(j) = lp;
  }
  return s;
}

ActionSample sample_action(const Vec& policy_out, const PolicyHeadConfig& head, Rng& rng) {
  const Eigen::Index A = policy_out.size() / 2;
  Mat noise(A, 1);
  for (Eigen::Index d = 0; d < A; ++d) noise(d, 0) = rng.normal();
  const SquashedSample s = squash_sample(Mat(policy_out), noise, head);
  return ActionSample{s.actions.col(0), s.log_prob(0)};
}

double log_prob_pre_tanh(const Vec& policy_out, const Vec& pre_tanh,
                         const PolicyHeadConfig& head) {
  const Eigen::Index A = policy_out.size() / 2;
  double lp = 0.0;
  for (Eigen::Index d = 0; d < A; ++d) {
    const double mu = policy_out(d);
    const double log_sigma =
        std::min(std::max(policy_out(A + d), head.log_sig_min), head.log_sig_max);
    const double sigma = std::exp(log_sigma);
    const double z = (pre_tanh(d) - mu) / sigma;
    const double t = std::tanh(pre_tanh(d));
    lp += -0.5 * kLogTwoPi - log_sigma - 0.5 * z * z - std::log(1.0 - t * t + head.tanh_eps);
  }
  return lp;
}

Mat policy_output_grad(const SquashedSample& s, const Mat& noise, const Mat& d_action,
                       const Vec& coef_logp, const PolicyHeadConfig& head) {
  const Eigen::Index A = s.actions.rows();
  const Eigen::Index B = s.actions.cols();
  Mat grad = Mat::Zero(2 * A, B);
  for (Eigen::Index j = 0; j < B; ++j) {
    for (Eigen::Index d = 0; d < A; ++d) {
      const double t = s.actions(d, j);
      const double one_m_t2 = 1.0 - t * t;
      const double c = one_m_t2 + head.tanh_eps;
      const double dlogp_dx = 2.0 * t * one_m_t2 / c;
      const double gx = d_action(d, j) * one_m_t2 + coef_logp(j) * dlogp_dx;
      grad(d, j) = gx;
      const double raw = s.log_sigma_raw(d, j);
      const bool inside = raw > head.log_sig_min && raw < head.log_sig_max;
      if (inside) {
        grad(A + d, j) = gx * s.sigma(d, j) * noise(d, j) - coef_logp(j);
      }
    }
  }
  return grad;
}

}  // namespace csac::agent
