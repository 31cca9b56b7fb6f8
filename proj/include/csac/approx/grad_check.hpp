#pragma once

#include <functional>

#include "csac/approx/mlp.hpp"

namespace csac::approx {

struct GradReport {
  Eigen::VectorXd analytic;
  Eigen::VectorXd finite_diff;
  double max_rel_error = 0.0;
};

/// Loss evaluated on a parameter set; when `grads` is non-null the analytic
/// gradient must be written into it.
using LossWithGrad = std::function<double(const MlpParams&, MlpGrads* grads)>;

/// Central finite differences per coordinate, (f(p+h) - f(p-h)) / 2h,
/// against the analytic gradient. The relative-error denominator is floored
/// at 1 so near-zero coordinates compare on an absolute scale.
GradReport grad_check(const LossWithGrad& loss, const MlpParams& params, double h);

}  // namespace csac::approx
