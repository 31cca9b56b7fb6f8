#include "csac/approx/mlp.hpp"

#include <cmath>

namespace csac::approx {

MlpGrads zero_grads(const MlpParams& p) {
  MlpGrads g;
  g.d_weights.reserve(p.weights.size());
  g.d_biases.reserve(p.biases.size());
  for (std::size_t l = 0; l < p.weights.size(); ++l) {
    g.d_weights.emplace_back(Mat::Zero(p.weights[l].rows(), p.weights[l].cols()));
    g.d_biases.emplace_back(Vec::Zero(p.biases[l].size()));
  }
  return g;
}

MlpParams make_mlp(int input_dim, int hidden_layers, int hidden_units, int output_dim,
                   NormMode norm, Rng& rng) {
  if (input_dim < 1 || hidden_layers < 0 || output_dim < 1 ||
      (hidden_layers > 0 && hidden_units < 1)) {
    throw ConfigError("make_mlp: invalid network shape");
  }
  MlpParams p;
  p.norm = norm;
  int in = input_dim;
  for (int l = 0; l < hidden_layers; ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    Mat w(hidden_units, in);
    for (int j = 0; j < w.cols(); ++j)
      for (int i = 0; i < w.rows(); ++i) w(i, j) = rng.uniform(-bound, bound);
    Vec b(hidden_units);
    for (int i = 0; i < b.size(); ++i) b(i) = rng.uniform(-bound, bound);
    p.weights.push_back(std::move(w));
    p.biases.push_back(std::move(b));
    in = hidden_units;
  }
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  Mat w(output_dim, in);
  for (int j = 0; j < w.cols(); ++j)
    for (int i = 0; i < w.rows(); ++i) w(i, j) = rng.uniform(-bound, bound);
  Vec b(output_dim);
  for (int i = 0; i < b.size(); ++i) b(i) = rng.uniform(-bound, bound);
  p.weights.push_back(std::move(w));
  p.biases.push_back(std::move(b));
  return p;
}

Vec layer_norm(const Vec& pre, double eps) {
  if (pre.size() < 2)
    throw std::invalid_argument("layer_norm: vector length must be >= 2");
  const double mean = pre.mean();
  const double var = (pre.array() - mean).square().mean();
  const double inv_std = 1.0 / std::sqrt(var + eps);
  return ((pre.array() - mean) * inv_std).matrix();
}

void layer_norm_batch(Mat& pre, RowVec& inv_std, double eps) {
  const auto n = static_cast<double>(pre.rows());
  inv_std.resize(pre.cols());
  for (Eigen::Index j = 0; j < pre.cols(); ++j) {
    auto col = pre.col(j);
    const double mean = col.mean();
    col.array() -= mean;
    const double var = col.squaredNorm() / n;
    const double s = 1.0 / std::sqrt(var + eps);
    col *= s;
    inv_std(j) = s;
  }
}

Vec pnorm(const Vec& activation) {
  const double n = activation.norm();
  if (n == 0.0) return activation;
  return activation / n;
}

namespace {

void pnorm_batch(Mat& act, RowVec& norms) {
  norms.resize(act.cols());
  for (Eigen::Index j = 0; j < act.cols(); ++j) {
    const double n = act.col(j).norm();
    norms(j) = n;
    if (n > 0.0) act.col(j) /= n;
  }
}

}  // namespace

Mat mlp_forward(const MlpParams& p, const Mat& input, MlpCache* cache) {
  if (input.rows() != p.input_dim())
    throw std::invalid_argument("mlp_forward: input dimension mismatch");

  const int L = p.num_layers();
  if (cache) {
    cache->input = input;
    cache->pre.assign(L, Mat());
    cache->normed.clear();
    cache->act.assign(L - 1, Mat());
    cache->ln_inv_std.assign(L - 1, RowVec());
    if (p.norm == NormMode::LayerNorm) cache->normed.assign(L - 1, Mat());
  }

  Mat h = input;
  for (int l = 0; l < L - 1; ++l) {
    Mat z = (p.weights[l] * h).colwise() + p.biases[l];
    if (cache) cache->pre[l] = z;
    if (p.norm == NormMode::LayerNorm) {
      RowVec inv_std;
      layer_norm_batch(z, inv_std, p.layer_norm_eps);
      if (cache) {
        cache->normed[l] = z;
        cache->ln_inv_std[l] = std::move(inv_std);
      }
    }
    h = z.cwiseMax(0.0);
    if (p.norm == NormMode::PnormLastHidden && l == L - 2) {
      RowVec norms;
      pnorm_batch(h, norms);
      if (cache) cache->pnorm_norms = std::move(norms);
    }
    if (cache) cache->act[l] = h;
  }
  Mat out = (p.weights[L - 1] * h).colwise() + p.biases[L - 1];
  if (cache) cache->pre[L - 1] = out;
  return out;
}

Vec mlp_forward(const MlpParams& p, const Vec& input) {
  return mlp_forward(p, Mat(input), nullptr).col(0);
}

MlpGrads mlp_backward(const MlpParams& p, const MlpCache& cache, const Mat& d_output,
                      Mat* d_input, bool want_param_grads) {
  const int L = p.num_layers();
  MlpGrads g;
  if (want_param_grads) {
    g.d_weights.assign(L, Mat());
    g.d_biases.assign(L, Vec());
  }

  Mat delta = d_output;  // gradient w.r.t. the current layer's output
  for (int l = L - 1; l >= 0; --l) {
    const Mat& layer_in = (l == 0) ? cache.input : cache.act[l - 1];
    if (want_param_grads) {
      g.d_weights[l].noalias() = delta * layer_in.transpose();
      g.d_biases[l] = delta.rowwise().sum();
    }
    if (l == 0 && d_input == nullptr) break;

    Mat d_lower;
    d_lower.noalias() = p.weights[l].transpose() * delta;

    if (l > 0) {
      const int h = l - 1;  // hidden layer index feeding this layer
      if (p.norm == NormMode::PnormLastHidden && h == L - 2) {
        // d_lower is the gradient w.r.t. y = x/||x||; map back to x.
        for (Eigen::Index j = 0; j < d_lower.cols(); ++j) {
          const double n = cache.pnorm_norms(j);
          if (n == 0.0) {
            d_lower.col(j).setZero();
          } else {
            const auto y = cache.act[h].col(j);
            const double dot = d_lower.col(j).dot(y);
            d_lower.col(j) = (d_lower.col(j) - dot * y) / n;
          }
        }
      }
      // ReLU mask on the (possibly normalized) pre-activation.
      const Mat& gate = (p.norm == NormMode::LayerNorm) ? cache.normed[h] : cache.pre[h];
      d_lower.array() *= (gate.array() > 0.0).cast<double>();

      if (p.norm == NormMode::LayerNorm) {
        // y = (z - mean) * inv_std; dz = inv_std * (g - mean(g) - y * mean(g .* y))
        const Mat& y = cache.normed[h];
        const auto n = static_cast<double>(d_lower.rows());
        for (Eigen::Index j = 0; j < d_lower.cols(); ++j) {
          const double gm = d_lower.col(j).sum() / n;
          const double gym = d_lower.col(j).dot(y.col(j)) / n;
          d_lower.col(j) =
              cache.ln_inv_std[h](j) * (d_lower.col(j).array() - gm - y.col(j).array() * gym).matrix();
        }
      }
    }
    delta = std::move(d_lower);
    if (l == 1 && d_input == nullptr && !want_param_grads) break;
  }
  if (d_input) *d_input = delta;
  return g;
}

void polyak_update(MlpParams& dst, const MlpParams& src, double tau) {
  for (std::size_t l = 0; l < dst.weights.size(); ++l) {
    dst.weights[l] = (1.0 - tau) * dst.weights[l] + tau * src.weights[l];
    dst.biases[l] = (1.0 - tau) * dst.biases[l] + tau * src.biases[l];
  }
}

}  // namespace csac::approx
