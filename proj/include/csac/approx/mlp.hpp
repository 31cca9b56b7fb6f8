#pragma once

#include <vector>

#include "csac/common.hpp"
#include "csac/rng.hpp"

namespace csac::approx {

enum class NormMode {
  None,
  LayerNorm,         // normalize pre-activations of every hidden layer
  PnormLastHidden,   // project last hidden activations onto the unit sphere
};

/// Fully-connected ReLU network with a linear output layer.
/// weights[l] has shape (out_l x in_l); samples live in matrix columns.
struct MlpParams {
  std::vector<Mat> weights;
  std::vector<Vec> biases;
  NormMode norm = NormMode::None;
  double layer_norm_eps = 1e-5;

  int num_layers() const { return static_cast<int>(weights.size()); }
  int input_dim() const { return static_cast<int>(weights.front().cols()); }
  int output_dim() const { return static_cast<int>(weights.back().rows()); }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l < weights.size(); ++l)
      n += static_cast<std::size_t>(weights[l].size()) + static_cast<std::size_t>(biases[l].size());
    return n;
  }
};

/// Gradients with the same block structure as MlpParams.
struct MlpGrads {
  std::vector<Mat> d_weights;
  std::vector<Vec> d_biases;

  void scale(double s) {
    for (auto& w : d_weights) w *= s;
    for (auto& b : d_biases) b *= s;
  }
  void add(const MlpGrads& other, double s = 1.0) {
    for (std::size_t l = 0; l < d_weights.size(); ++l) {
      d_weights[l] += s * other.d_weights[l];
      d_biases[l] += s * other.d_biases[l];
    }
  }
  bool all_finite() const {
    for (const auto& w : d_weights)
      if (!w.allFinite()) return false;
    for (const auto& b : d_biases)
      if (!b.allFinite()) return false;
    return true;
  }
};

MlpGrads zero_grads(const MlpParams& p);

/// Uniform fan-in initialization, U[-1/sqrt(fan_in), 1/sqrt(fan_in)] for
/// both weights and biases.
MlpParams make_mlp(int input_dim, int hidden_layers, int hidden_units, int output_dim,
                   NormMode norm, Rng& rng);

/// Everything the backward pass needs from a forward pass.
struct MlpCache {
  Mat input;                  // (in x B)
  std::vector<Mat> pre;       // raw pre-activations per layer
  std::vector<Mat> normed;    // layer-normed pre-activations (LayerNorm only)
  std::vector<Mat> act;       // hidden activations (post-ReLU, post-pnorm)
  std::vector<RowVec> ln_inv_std;  // per hidden layer, per column
  RowVec pnorm_norms;              // per column, PnormLastHidden only
};

Mat mlp_forward(const MlpParams& p, const Mat& input, MlpCache* cache = nullptr);
Vec mlp_forward(const MlpParams& p, const Vec& input);

/// Backward pass from d(loss)/d(output). Fills d_input when non-null.
/// Set want_param_grads=false when only the input gradient is needed
/// (e.g. differentiating a critic w.r.t. its action inputs).
MlpGrads mlp_backward(const MlpParams& p, const MlpCache& cache, const Mat& d_output,
                      Mat* d_input = nullptr, bool want_param_grads = true);

// Standalone normalization ops (also used inside mlp_forward/backward).

/// Per-sample standardization of a pre-activation vector: zero mean, unit
/// variance with eps inside the square root. No learned affine terms; the
/// `affine` hook exists only as a documented switch and is off by default.
Vec layer_norm(const Vec& pre, double eps = 1e-5);
void layer_norm_batch(Mat& pre, RowVec& inv_std, double eps);

/// x / ||x||_2 per sample; the zero vector maps to itself and its gradient
/// is defined as zero there.
Vec pnorm(const Vec& activation);

/// Polyak target update: dst = (1 - tau) * dst + tau * src.
void polyak_update(MlpParams& dst, const MlpParams& src, double tau);

}  // namespace csac::approx
