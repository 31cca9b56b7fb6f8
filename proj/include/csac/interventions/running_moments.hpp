#pragma once

#include "csac/common.hpp"

namespace csac::interventions {

/// Streaming per-dimension mean/variance (Welford).
class RunningMoments {
 public:
  RunningMoments() = default;
  explicit RunningMoments(int dim) : mean_(Vec::Zero(dim)), m2_(Vec::Zero(dim)) {}

  void update(const Vec& x) {
    count_ += 1.0;
    const Vec delta = x - mean_;
    mean_ += delta / count_;
    m2_ += delta.cwiseProduct(x - mean_);
  }

  void update_batch(const Mat& x) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) update(x.col(j));
  }

  double count() const { return count_; }
  const Vec& mean() const { return mean_; }

  /// Population variance (M2 / n); zero before any update.
  Vec variance() const {
    if (count_ < 1.0) return Vec::Zero(mean_.size());
    return m2_ / count_;
  }

  Vec stddev() const { return (variance().array() + 1e-8).sqrt().matrix(); }

  Vec normalize(const Vec& x) const {
    return (x - mean_).cwiseQuotient(stddev());
  }

  Mat normalize_batch(const Mat& x) const {
    const Vec sd = stddev();
    Mat out(x.rows(), x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.col(j) = (x.col(j) - mean_).cwiseQuotient(sd);
    return out;
  }

  Vec raw_m2() const { return m2_; }
  void restore(double count, const Vec& mean, const Vec& m2) {
    count_ = count;
    mean_ = mean;
    m2_ = m2;
  }

 private:
  double count_ = 0.0;
  Vec mean_, m2_;
};

}  // namespace csac::interventions
