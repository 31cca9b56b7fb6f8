#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>

namespace csac {

// Deterministic RNG used everywhere results matter. std::*_distribution is
// implementation-defined, so uniform/normal draws are generated from raw
// mt19937_64 output to keep runs bit-reproducible across standard libraries.
class Rng {
 public:
  Rng() : engine_(0) {}
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller. No spare-value caching so that the
  /// serialized engine state alone captures the generator.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// Uniform integer in [0, n). Modulo bias is ~2^-53 for n below ~2^40,
  /// irrelevant at replay-buffer scale.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n));
  }

  bool bernoulli(double p) { return uniform() < p; }

  std::string serialize() const {
    std::ostringstream os;
    os << engine_;
    return os.str();
  }

  void deserialize(const std::string& s) {
    std::istringstream is(s);
    is >> engine_;
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// One root seed per run, split into named sub-streams so that enabling one
// randomness consumer (e.g. RND masks) never shifts the draws seen by
// another (e.g. the behavior policy).
class RngStreams {
 public:
  RngStreams() = default;
  explicit RngStreams(std::uint64_t root_seed) : root_(root_seed) {}

  Rng& stream(const std::string& name) {
    auto it = streams_.find(name);
    if (it == streams_.end()) {
      it = streams_.emplace(name, Rng(splitmix64(root_ ^ fnv1a64(name)))).first;
    }
    return it->second;
  }

  Rng& env() { return stream("env"); }
  Rng& policy() { return stream("policy"); }
  Rng& init() { return stream("init"); }
  Rng& buffer() { return stream("buffer"); }
  Rng& rnd() { return stream("rnd"); }
  Rng& probe() { return stream("probe"); }

  std::map<std::string, std::string> serialize() const {
    std::map<std::string, std::string> out;
    for (const auto& [name, rng] : streams_) out[name] = rng.serialize();
    return out;
  }

  void deserialize(std::uint64_t root, const std::map<std::string, std::string>& states) {
    root_ = root;
    streams_.clear();
    for (const auto& [name, state] : states) {
      Rng r;
      r.deserialize(state);
      streams_.emplace(name, r);
    }
  }

  std::uint64_t root_seed() const { return root_; }

 private:
  std::uint64_t root_ = 0;
  std::map<std::string, Rng> streams_;
};

}  // namespace csac
