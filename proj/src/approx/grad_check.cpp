#include "csac/approx/grad_check.hpp"

#include <cmath>

namespace csac::approx {

namespace {

// Visit every scalar parameter as a mutable reference.
template <typename F>
void for_each_param(MlpParams& p, F&& f) {
  for (std::size_t l = 0; l < p.weights.size(); ++l) {
    for (Eigen::Index j = 0; j < p.weights[l].cols(); ++j)
      for (Eigen::Index i = 0; i < p.weights[l].rows(); ++i) f(p.weights[l](i, j));
    for (Eigen::Index i = 0; i < p.biases[l].size(); ++i) f(p.biases[l](i));
  }
}

}  // namespace

GradReport grad_check(const LossWithGrad& loss, const MlpParams& params, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("grad_check: h must be positive");

  MlpGrads analytic = zero_grads(params);
  MlpParams work = params;
  loss(work, &analytic);

  const std::size_t n = params.parameter_count();
  GradReport report;
  report.analytic.resize(static_cast<Eigen::Index>(n));
  report.finite_diff.resize(static_cast<Eigen::Index>(n));

  Eigen::Index k = 0;
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    for (Eigen::Index j = 0; j < params.weights[l].cols(); ++j)
      for (Eigen::Index i = 0; i < params.weights[l].rows(); ++i)
        report.analytic(k++) = analytic.d_weights[l](i, j);
    for (Eigen::Index i = 0; i < params.biases[l].size(); ++i)
      report.analytic(k++) = analytic.d_biases[l](i);
  }

  k = 0;
  for_each_param(work, [&](double& theta) {
    const double orig = theta;
    theta = orig + h;
    const double fp = loss(work, nullptr);
    theta = orig - h;
    const double fm = loss(work, nullptr);
    theta = orig;
    report.finite_diff(k++) = (fp - fm) / (2.0 * h);
  });

  double max_err = 0.0;
  for (Eigen::Index i = 0; i < report.analytic.size(); ++i) {
    const double a = report.analytic(i);
    const double fd = report.finite_diff(i);
    const double denom = std::max({1.0, std::abs(a), std::abs(fd)});
    max_err = std::max(max_err, std::abs(a - fd) / denom);
  }
  report.max_rel_error = max_err;
  return report;
}

}  // namespace csac::approx
