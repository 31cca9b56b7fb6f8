#pragma once

#include <cstddef>
#include <vector>

#include "csac/common.hpp"
#include "csac/rng.hpp"

namespace csac::agent {

/// One experience tuple. Continuing runs never set `terminal`; on a
/// state-based reset the stored next state is the post-reset observation.
struct Transition {
  Vec state;
  Vec action;
  double reward = 0.0;
  Vec next_state;
  bool terminal = false;
};

/// Mini-batch in column-major layout (samples are columns).
struct Batch {
  Mat states;
  Mat actions;
  Vec rewards;
  Mat next_states;
  Vec terminal;  // 0/1 mask
  Eigen::Index size() const { return rewards.size(); }
};

/// Ring buffer with FIFO eviction and uniform sampling over filled slots.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {}

  void push(Transition t) {
    if (storage_.size() < capacity_) {
      storage_.push_back(std::move(t));
    } else {
      storage_[cursor_] = std::move(t);
    }
    cursor_ = (cursor_ + 1) % capacity_;
  }

  std::size_t size() const { return storage_.size(); }
  std::size_t capacity() const { return capacity_; }
  const Transition& at(std::size_t i) const { return storage_[i]; }

  std::vector<std::size_t> sample_indices(std::size_t n, Rng& rng) const {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = rng.uniform_index(storage_.size());
    return idx;
  }

  Batch sample(std::size_t n, Rng& rng) const {
    const auto idx = sample_indices(n, rng);
    return gather(idx);
  }

  Batch gather(const std::vector<std::size_t>& idx) const {
    Batch b;
    const auto B = static_cast<Eigen::Index>(idx.size());
    const auto& first = storage_[idx.front()];
    b.states.resize(first.state.size(), B);
    b.actions.resize(first.action.size(), B);
    b.next_states.resize(first.next_state.size(), B);
    b.rewards.resize(B);
    b.terminal.resize(B);
    for (Eigen::Index j = 0; j < B; ++j) {
      const Transition& t = storage_[idx[static_cast<std::size_t>(j)]];
      b.states.col(j) = t.state;
      b.actions.col(j) = t.action;
      b.next_states.col(j) = t.next_state;
      b.rewards(j) = t.reward;
      b.terminal(j) = t.terminal ? 1.0 : 0.0;
    }
    return b;
  }

 std::size_t cursor() const { return cursor_; }
  void restore(std::vector<Transition> storage, std::size_t cursor) {
    storage_ = std::move(storage);
    cursor_ = cursor;
  }

 private:
  std::size_t capacity_;
  std::size_t cursor_ = 0;
  std::vector<Transition> storage_;
};

}  // namespace csac::agent
