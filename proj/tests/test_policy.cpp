#include <doctest.h>

#include <cmath>

#include "csac/agent/gaussian_policy.hpp"

using namespace csac;
using namespace csac::agent;

TEST_CASE("sample_action: tight distribution at the mean gives near-zero actions") {
  PolicyHeadConfig head;
  Vec pol(2);
  pol << 0.0, head.log_sig_min;  // mu 0, sigma e^-20
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto s = sample_action(pol, head, rng);
    CHECK(std::abs(s.action(0)) < 1e-6);
    CHECK(std::isfinite(s.log_prob));
  }
}

TEST_CASE("sample_action: large mean saturates toward +1") {
  PolicyHeadConfig head;
  Vec pol(2);
  pol << 10.0, head.log_sig_min;
  Rng rng(5);
  const auto s = sample_action(pol, head, rng);
  CHECK(s.action(0) > 0.9999);
  CHECK(s.action(0) < 1.0);
  CHECK(std::isfinite(s.log_prob));
}

TEST_CASE("1-D squashed density integrates to 1 by quadrature") {
  PolicyHeadConfig head;
  for (const double mu : {-0.7, 0.0, 1.2}) {
    for (const double sigma : {0.3, 1.0}) {
      Vec pol(2);
      pol << mu, std::log(sigma);
      // Simpson over pre-tanh x; da = (1 - tanh^2 x) dx
      const double lo = mu - 10 * sigma, hi = mu + 10 * sigma;
      const int n = 20000;
      const double dx = (hi - lo) / n;
      double integral = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double x = lo + i * dx;
        Vec pre(1);
        pre << x;
        const double t = std::tanh(x);
        const double f = std::exp(log_prob_pre_tanh(pol, pre, head)) * (1.0 - t * t);
        integral += ((i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0)) * f;
      }
      integral *= dx / 3.0;
      CAPTURE(mu);
      CAPTURE(sigma);
      CHECK(std::abs(integral - 1.0) < 1e-3);
    }
  }
}

TEST_CASE("log_prob is finite for extreme saturation across many draws") {
  PolicyHeadConfig head;
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Vec pol(4);
    pol << rng.uniform(-12, 12), rng.uniform(-12, 12), rng.uniform(-25, 0),
        rng.uniform(-25, 0);
    const auto s = sample_action(pol, head, rng);
    CHECK(std::isfinite(s.log_prob));
    CHECK(s.action.cwiseAbs().maxCoeff() < 1.0);
  }
}

TEST_CASE("squash_sample batch agrees with per-sample log density") {
  PolicyHeadConfig head;
  Rng rng(13);
  const int A = 3, B = 4;
  Mat pol(2 * A, B), noise(A, B);
  for (int j = 0; j < B; ++j) {
    for (int d = 0; d < A; ++d) {
      pol(d, j) = rng.normal();
      pol(A + d, j) = rng.uniform(-2, 0.5);
      noise(d, j) = rng.normal();
    }
  }
  const auto s = squash_sample(pol, noise, head);
  for (int j = 0; j < B; ++j) {
    const double lp = log_prob_pre_tanh(pol.col(j), s.pre_tanh.col(j), head);
    CHECK(s.log_prob(j) == doctest::Approx(lp).epsilon(1e-10));
  }
}
