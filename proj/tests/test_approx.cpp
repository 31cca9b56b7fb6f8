#include <doctest.h>

#include <cmath>

#include "csac/approx/adam.hpp"
#include "csac/approx/grad_check.hpp"
#include "csac/approx/mlp.hpp"

using namespace csac;
using namespace csac::approx;

namespace {

MlpParams tiny_net(int in, int hidden_layers, int width, int out, NormMode norm,
                   std::uint64_t seed) {
  Rng rng(seed);
  return make_mlp(in, hidden_layers, width, out, norm, rng);
}

}  // namespace

TEST_CASE("mlp_forward: zero network maps any input to zero") {
  MlpParams p = tiny_net(3, 2, 4, 2, NormMode::None, 1);
  for (auto& w : p.weights) w.setZero();
  for (auto& b : p.biases) b.setZero();
  Vec x(3);
  x << 0.3, -1.7, 2.0;
  CHECK(mlp_forward(p, x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("mlp_forward: 1x1 identity-like linear net") {
  MlpParams p;
  p.weights.push_back(Mat::Constant(1, 1, 1.0));
  p.biases.push_back(Vec::Zero(1));
  Vec x(1);
  x << 2.0;
  CHECK(mlp_forward(p, x)(0) == 2.0);
}

TEST_CASE("mlp_forward matches a hand-computed 2-3-1 forward pass") {
  // W1 = [[1, 2], [-1, 0.5], [0.25, -0.75]], b1 = (0.1, -0.2, 0.3)
  // input (0.5, -0.5): z = (-0.4, -0.95, 0.8) -> relu (0, 0, 0.8)
  // W2 = [0.5, -1, 2], b2 = 0.25 -> 0.8*2 + 0.25 = 1.85
  MlpParams p;
  Mat w1(3, 2);
  w1 << 1, 2, -1, 0.5, 0.25, -0.75;
  Vec b1(3);
  b1 << 0.1, -0.2, 0.3;
  Mat w2(1, 3);
  w2 << 0.5, -1, 2;
  Vec b2(1);
  b2 << 0.25;
  p.weights = {w1, w2};
  p.biases = {b1, b2};
  Vec x(2);
  x << 0.5, -0.5;
  CHECK(mlp_forward(p, x)(0) == doctest::Approx(1.85).epsilon(1e-15));
}

TEST_CASE("mlp_forward is deterministic") {
  MlpParams p = tiny_net(4, 2, 8, 3, NormMode::LayerNorm, 5);
  Rng rng(7);
  Mat x(4, 6);
  for (int j = 0; j < 6; ++j)
    for (int i = 0; i < 4; ++i) x(i, j) = rng.normal();
  const Mat a = mlp_forward(p, x);
  const Mat b = mlp_forward(p, x);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("mlp_forward rejects dimension mismatches") {
  MlpParams p = tiny_net(3, 1, 4, 1, NormMode::None, 2);
  Vec x(2);
  x << 1.0, 2.0;
  CHECK_THROWS_AS(mlp_forward(p, x), std::invalid_argument);
}

TEST_CASE("parameter count is a pure function of the shape") {
  MlpParams p = tiny_net(3, 2, 8, 2, NormMode::None, 3);
  MlpParams q = tiny_net(3, 2, 8, 2, NormMode::LayerNorm, 99);
  const std::size_t expected = (8 * 3 + 8) + (8 * 8 + 8) + (2 * 8 + 2);
  CHECK(p.parameter_count() == expected);
  CHECK(q.parameter_count() == expected);
}

TEST_CASE("layer_norm examples") {
  Vec ones = Vec::Constant(4, 1.0);
  CHECK(layer_norm(ones).cwiseAbs().maxCoeff() == 0.0);

  Vec pm(2);
  pm << -3.0, 3.0;
  const Vec n = layer_norm(pm);
  CHECK(n(0) == doctest::Approx(-1.0).epsilon(1e-5));
  CHECK(n(1) == doctest::Approx(1.0).epsilon(1e-5));

  Vec v(3);
  v << 1, 2, 3;
  const Vec y = layer_norm(v);
  CHECK(y.mean() == doctest::Approx(0.0).epsilon(1e-12));
  const double var = (y.array() - y.mean()).square().mean();
  CHECK(var == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(y(0) < y(1));
  CHECK(y(1) < y(2));

  Vec single(1);
  single << 5.0;
  CHECK_THROWS_AS(layer_norm(single), std::invalid_argument);
}

TEST_CASE("layer_norm properties on random inputs") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4 + static_cast<int>(rng.uniform_index(12));
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.normal(0.0, 2.0);
    const Vec y = layer_norm(v);
    CHECK(std::abs(y.mean()) < 1e-9);
    CHECK(std::abs((y.array() - y.mean()).square().mean() - 1.0) < 1e-3);
  }
}

TEST_CASE("pnorm examples and norm property") {
  Vec v(2);
  v << 3.0, 4.0;
  const Vec y = pnorm(v);
  CHECK(y(0) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(y(1) == doctest::Approx(0.8).epsilon(1e-12));

  Vec u(3);
  u << 1.0, 0.0, 0.0;
  CHECK((pnorm(u) - u).cwiseAbs().maxCoeff() == 0.0);

  Vec z = Vec::Zero(2);
  CHECK(pnorm(z).cwiseAbs().maxCoeff() == 0.0);

  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    Vec x(5);
    for (int i = 0; i < 5; ++i) x(i) = rng.normal();
    const double n = pnorm(x).norm();
    CHECK((n == 0.0 || std::abs(n - 1.0) < 1e-9));
  }
}

TEST_CASE("adam: zero gradient leaves parameters unchanged") {
  MlpParams p = tiny_net(2, 1, 4, 1, NormMode::None, 17);
  const MlpParams before = p;
  AdamState st = make_adam(p);
  MlpGrads g = zero_grads(p);
  adam_step(p, g, st, 1e-3);
  for (std::size_t l = 0; l < p.weights.size(); ++l) {
    CHECK((p.weights[l] - before.weights[l]).cwiseAbs().maxCoeff() == 0.0);
    CHECK((p.biases[l] - before.biases[l]).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(st.step == 1);
}

TEST_CASE("adam: first step from zero moments moves by about -lr*sign(g)") {
  MlpParams p;
  p.weights.push_back(Mat::Constant(1, 1, 0.5));
  p.biases.push_back(Vec::Zero(1));
  AdamState st = make_adam(p);
  MlpGrads g = zero_grads(p);
  g.d_weights[0](0, 0) = 3.0;
  const double lr = 1e-2;
  adam_step(p, g, st, lr);
  // bias-corrected first step: -lr * g / (|g| + eps)
  CHECK(p.weights[0](0, 0) == doctest::Approx(0.5 - lr).epsilon(1e-6));
}

TEST_CASE("adam: constant gradient descends monotonically") {
  MlpParams p;
  p.weights.push_back(Mat::Constant(1, 1, 1.0));
  p.biases.push_back(Vec::Zero(1));
  AdamState st = make_adam(p);
  MlpGrads g = zero_grads(p);
  g.d_weights[0](0, 0) = 2.0;
  double prev = p.weights[0](0, 0);
  for (int i = 0; i < 5; ++i) {
    adam_step(p, g, st, 1e-3);
    CHECK(p.weights[0](0, 0) < prev);
    prev = p.weights[0](0, 0);
  }
}

TEST_CASE("adam rejects non-finite gradients without touching state") {
  MlpParams p = tiny_net(2, 1, 4, 1, NormMode::None, 19);
  const MlpParams before = p;
  AdamState st = make_adam(p);
  MlpGrads g = zero_grads(p);
  g.d_weights[0](0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(adam_step(p, g, st, 1e-3), NumericError);
  CHECK(st.step == 0);
  CHECK((p.weights[0] - before.weights[0]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("grad_check: quadratic loss") {
  MlpParams p;
  p.weights.push_back(Mat::Constant(1, 1, 3.0));
  p.biases.push_back(Vec::Zero(1));
  auto loss = [](const MlpParams& q, MlpGrads* g) {
    const double theta = q.weights[0](0, 0);
    if (g) {
      *g = zero_grads(q);
      g->d_weights[0](0, 0) = 2.0 * theta;
    }
    return theta * theta;
  };
  const GradReport rep = grad_check(loss, p, 1e-5);
  CHECK(rep.analytic(0) == doctest::Approx(6.0));
  CHECK(rep.finite_diff(0) == doctest::Approx(6.0).epsilon(1e-6));
  CHECK(rep.max_rel_error < 1e-6);
}

TEST_CASE("grad_check: constant loss has zero gradients on both routes") {
  MlpParams p = tiny_net(2, 1, 3, 1, NormMode::None, 23);
  auto loss = [](const MlpParams& q, MlpGrads* g) {
    if (g) *g = zero_grads(q);
    return 4.2;
  };
  const GradReport rep = grad_check(loss, p, 1e-5);
  CHECK(rep.analytic.cwiseAbs().maxCoeff() == 0.0);
  CHECK(rep.finite_diff.cwiseAbs().maxCoeff() < 1e-9);
  CHECK(rep.max_rel_error == 0.0);
}

TEST_CASE("grad_check: squared error of a small MLP, all norm modes") {
  for (const NormMode mode :
       {NormMode::None, NormMode::LayerNorm, NormMode::PnormLastHidden}) {
    MlpParams p = tiny_net(2, 2, 4, 1, mode, 29);
    Rng rng(31);
    Mat x(2, 3);
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 2; ++i) x(i, j) = rng.normal();
    Vec target(3);
    target << 0.5, -0.2, 1.0;

    auto loss = [&x, &target](const MlpParams& q, MlpGrads* g) {
      MlpCache cache;
      const Mat out = mlp_forward(q, x, &cache);
      const Vec err = out.row(0).transpose() - target;
      if (g) {
        const Mat d_out = err.transpose();
        *g = mlp_backward(q, cache, d_out);
      }
      return 0.5 * err.squaredNorm();
    };
    const GradReport rep = grad_check(loss, p, 1e-5);
    CAPTURE(static_cast<int>(mode));
    CHECK(rep.max_rel_error < 1e-4);
  }
}

TEST_CASE("mlp_backward input gradients agree with finite differences") {
  MlpParams p = tiny_net(3, 2, 5, 2, NormMode::LayerNorm, 37);
  Rng rng(41);
  Vec x(3);
  for (int i = 0; i < 3; ++i) x(i) = rng.normal();
  Vec w(2);
  w << 0.7, -0.3;  // fixed projection so the output is a scalar

  MlpCache cache;
  mlp_forward(p, Mat(x), &cache);
  Mat d_in;
  mlp_backward(p, cache, Mat(w), &d_in, false);

  const double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    Vec xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    const double fd =
        (w.dot(mlp_forward(p, xp)) - w.dot(mlp_forward(p, xm))) / (2.0 * h);
    CHECK(d_in(i, 0) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("polyak_update blends parameters") {
  MlpParams a = tiny_net(2, 1, 3, 1, NormMode::None, 43);
  MlpParams b = tiny_net(2, 1, 3, 1, NormMode::None, 47);

  MlpParams t1 = a;
  polyak_update(t1, b, 1.0);
  CHECK((t1.weights[0] - b.weights[0]).cwiseAbs().maxCoeff() == 0.0);

  MlpParams t0 = a;
  polyak_update(t0, b, 0.0);
  CHECK((t0.weights[0] - a.weights[0]).cwiseAbs().maxCoeff() == 0.0);

  MlpParams p;
  p.weights.push_back(Mat::Zero(1, 1));
  p.biases.push_back(Vec::Zero(1));
  MlpParams src;
  src.weights.push_back(Mat::Constant(1, 1, 1.0));
  src.biases.push_back(Vec::Constant(1, 1.0));
  polyak_update(p, src, 0.005);
  CHECK(p.weights[0](0, 0) == doctest::Approx(0.005).epsilon(1e-15));
}
