#include "csac/interventions/rnd.hpp"

namespace csac::interventions {

using approx::make_adam;
using approx::make_mlp;
using approx::mlp_backward;
using approx::mlp_forward;
using approx::MlpCache;
using approx::NormMode;

RndState make_rnd(const RndConfig& cfg, int obs_dim, Rng& init_rng) {
  RndState s;
  s.predictor = make_mlp(obs_dim, cfg.predictor_hidden_layers, cfg.hidden_units,
                         cfg.output_dim, NormMode::None, init_rng);
  s.target = make_mlp(obs_dim, cfg.target_hidden_layers, cfg.hidden_units,
                      cfg.output_dim, NormMode::None, init_rng);
  s.predictor_opt = make_adam(s.predictor);
  s.obs_moments = RunningMoments(obs_dim);
  s.intrinsic_moments = RunningMoments(1);
  return s;
}

Vec rnd_intrinsic_raw(const RndState& rnd, const Mat& normalized_states) {
  const Mat fp = mlp_forward(rnd.predictor, normalized_states);
  const Mat ft = mlp_forward(rnd.target, normalized_states);
  const Mat diff = fp - ft;
  Vec out(normalized_states.cols());
  for (Eigen::Index j = 0; j < diff.cols(); ++j) out(j) = 0.5 * diff.col(j).squaredNorm();
  return out;
}

RndLossResult rnd_loss(const RndState& rnd, const Mat& normalized_next_states,
                       const std::vector<std::uint8_t>& masks, int obs_dim) {
  const Eigen::Index B = normalized_next_states.cols();
  double mask_sum = 0.0;
  for (auto m : masks) mask_sum += m ? 1.0 : 0.0;
  const double denom = std::max(mask_sum, 1.0);

  MlpCache cache;
  const Mat fp = mlp_forward(rnd.predictor, normalized_next_states, &cache);
  const Mat ft = mlp_forward(rnd.target, normalized_next_states);
  const Mat diff = fp - ft;

  RndLossResult res;
  const double inv_dim = 1.0 / static_cast<double>(obs_dim);
  Mat d_out = Mat::Zero(fp.rows(), B);
  for (Eigen::Index j = 0; j < B; ++j) {
    if (!masks[static_cast<std::size_t>(j)]) continue;
    res.loss += inv_dim * diff.col(j).squaredNorm();
    d_out.col(j) = (2.0 * inv_dim / denom) * diff.col(j);
  }
  res.loss /= denom;
  res.d_predictor = mlp_backward(rnd.predictor, cache, d_out);
  return res;
}

}  // namespace csac::interventions
