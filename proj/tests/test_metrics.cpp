#include <doctest.h>

#include <cmath>

#include "csac/metrics/metrics.hpp"
#include "csac/rng.hpp"

using namespace csac;
using namespace csac::metrics;

TEST_CASE("window_average_reward examples") {
  SUBCASE("constant reward") {
    std::vector<double> r(3000, 0.7);
    const auto s = window_average_reward(r, 1000);
    REQUIRE(s.points.size() == 3);
    for (const auto& [step, v] : s.points) CHECK(v == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(s.points[0].first == 1000);
    CHECK(s.points[2].first == 3000);
  }
  SUBCASE("alternating parity") {
    std::vector<double> r;
    for (int i = 0; i < 2000; ++i) r.push_back(i % 2);
    const auto s = window_average_reward(r, 1000);
    for (const auto& [step, v] : s.points) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("window separation") {
    std::vector<double> r(1000, 0.0);
    r.insert(r.end(), 1000, 1.0);
    const auto s = window_average_reward(r, 1000);
    REQUIRE(s.points.size() == 2);
    CHECK(s.points[0] == std::make_pair(1000L, 0.0));
    CHECK(s.points[1] == std::make_pair(2000L, 1.0));
  }
  SUBCASE("incomplete trailing window dropped") {
    std::vector<double> r(1499, 1.0);
    CHECK(window_average_reward(r, 1000).points.size() == 1);
  }
}

TEST_CASE("window averages recombine to the global mean within 1e-12") {
  Rng rng(3);
  std::vector<double> r;
  for (int i = 0; i < 7000; ++i) r.push_back(rng.normal(0.3, 2.0));
  const auto s = window_average_reward(r, 1000);
  double mean_of_windows = 0.0;
  for (const auto& [step, v] : s.points) mean_of_windows += v;
  mean_of_windows /= static_cast<double>(s.points.size());
  double direct = 0.0;
  for (int i = 0; i < 7000; ++i) direct += r[i];
  direct /= 7000.0;
  CHECK(std::abs(mean_of_windows - direct) < 1e-12);
}

TEST_CASE("episode_returns examples") {
  SUBCASE("constant rewards, resets every 50") {
    std::vector<double> r(250, 1.0);
    std::vector<long> resets = {50, 100, 150, 200, 250};
    const auto ret = episode_returns(r, resets);
    REQUIRE(ret.size() == 5);
    for (const auto& [step, v] : ret) CHECK(v == 50.0);
  }
  SUBCASE("no resets: empty result, trailing segment dropped") {
    std::vector<double> r(100, 1.0);
    CHECK(episode_returns(r, {}).empty());
  }
  SUBCASE("penalty only affects the modified stream") {
    // original rewards carry no penalty; returns see 10 per segment
    std::vector<double> orig(20, 1.0);
    const auto ret = episode_returns(orig, {10, 20});
    REQUIRE(ret.size() == 2);
    CHECK(ret[0].second == 10.0);
    CHECK(ret[1].second == 10.0);
  }
}

TEST_CASE("episode_returns conservation: returns plus dropped tail equal the sum") {
  Rng rng(5);
  std::vector<double> r;
  std::vector<long> resets;
  for (int i = 1; i <= 1234; ++i) {
    r.push_back(rng.uniform(-1, 2));
    if (rng.uniform() < 0.02) resets.push_back(i);
  }
  const auto ret = episode_returns(r, resets);
  double sum_ret = 0.0;
  for (const auto& [s, v] : ret) sum_ret += v;
  double tail = 0.0;
  const long last_reset = resets.empty() ? 0 : resets.back();
  for (std::size_t i = static_cast<std::size_t>(last_reset); i < r.size(); ++i) tail += r[i];
  double total = 0.0;
  for (double x : r) total += x;
  CHECK(sum_ret + tail == doctest::Approx(total).epsilon(1e-12));
}

TEST_CASE("state_variance examples") {
  SUBCASE("constant observations give zero") {
    std::vector<Vec> obs(2000, Vec::Constant(3, 1.7));
    const auto s = state_variance(obs, 1000);
    REQUIRE(s.points.size() == 2);
    for (const auto& [step, v] : s.points) CHECK(std::abs(v) < 1e-9);
  }
  SUBCASE("alternating +-1 gives n/(n-1)") {
    std::vector<Vec> obs;
    for (int i = 0; i < 1000; ++i) obs.push_back(Vec::Constant(1, i % 2 == 0 ? 1.0 : -1.0));
    const auto s = state_variance(obs, 1000);
    REQUIRE(s.points.size() == 1);
    CHECK(s.points[0].second == doctest::Approx(1000.0 / 999.0).epsilon(1e-12));
  }
  SUBCASE("constant dimension contributes nothing") {
    std::vector<Vec> obs;
    for (int i = 0; i < 1000; ++i) {
      Vec o(2);
      o << 5.0, (i % 2 == 0 ? 1.0 : -1.0);
      obs.push_back(o);
    }
    const auto s = state_variance(obs, 1000);
    CHECK(s.points[0].second == doctest::Approx(1000.0 / 999.0).epsilon(1e-12));
  }
}

TEST_CASE("state_variance: offset invariance and quadratic scaling") {
  Rng rng(7);
  std::vector<Vec> obs, shifted, scaled;
  for (int i = 0; i < 1000; ++i) {
    Vec o(2);
    o << rng.normal(), rng.normal(0, 3);
    obs.push_back(o);
    shifted.push_back(o + Vec::Constant(2, 13.7));
    scaled.push_back(2.5 * o);
  }
  const double base = state_variance(obs, 1000).points[0].second;
  const double off = state_variance(shifted, 1000).points[0].second;
  const double sc = state_variance(scaled, 1000).points[0].second;
  CHECK(off == doctest::Approx(base).epsilon(1e-9));
  CHECK(sc == doctest::Approx(2.5 * 2.5 * base).epsilon(1e-9));
}

TEST_CASE("aggregate_runs selects min, ceil(n/2)-th and max by average performance") {
  auto mk = [](std::uint64_t seed, double avg) {
    RunSummary r;
    r.seed = seed;
    r.average_performance = avg;
    return r;
  };
  SUBCASE("ten runs: median is the 5th ascending") {
    std::vector<RunSummary> runs;
    for (int i = 10; i >= 1; --i) runs.push_back(mk(i, i));
    const auto agg = aggregate_runs(runs);
    CHECK(agg.min_run.average_performance == 1.0);
    CHECK(agg.median_run.average_performance == 5.0);
    CHECK(agg.max_run.average_performance == 10.0);
  }
  SUBCASE("single run is min, median and max") {
    const auto agg = aggregate_runs({mk(1, 3.3)});
    CHECK(agg.min_run.seed == 1);
    CHECK(agg.median_run.seed == 1);
    CHECK(agg.max_run.seed == 1);
  }
  SUBCASE("three runs") {
    const auto agg = aggregate_runs({mk(1, 7.0), mk(2, 2.0), mk(3, 9.0)});
    CHECK(agg.min_run.average_performance == 2.0);
    CHECK(agg.median_run.average_performance == 7.0);
    CHECK(agg.max_run.average_performance == 9.0);
  }
  SUBCASE("permutation invariance") {
    std::vector<RunSummary> a = {mk(1, 1), mk(2, 5), mk(3, 3), mk(4, 4), mk(5, 2)};
    std::vector<RunSummary> b = {mk(5, 2), mk(3, 3), mk(1, 1), mk(4, 4), mk(2, 5)};
    CHECK(aggregate_runs(a).median_run.seed == aggregate_runs(b).median_run.seed);
  }
}
