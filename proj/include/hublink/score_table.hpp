#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "metrics.hpp"

namespace hublink {

/// Collision-free accumulator keyed by vertex id: a dense value array of
/// length N plus the list of keys touched since the last drain. Zero marks
/// an absent entry, so erased keys stay in the key list and are skipped.
///
/// Untouched slots hold +0.0 and erased slots hold -0.0; both compare equal
/// to zero, but only +0.0 means "not yet in the key list".
///
/// One table per worker; never shared.
class ScoreTable {
 public:
  explicit ScoreTable(std::size_t n = 0) : values_(n, score_t(0)) {}

  std::size_t capacity() const noexcept { return values_.size(); }
  std::size_t key_count() const noexcept { return keys_.size(); }
  std::span<const vertex_t> keys() const noexcept { return keys_; }
  bool empty() const noexcept { return keys_.empty(); }

  /// Value stored at c (0 if absent).
  score_t at(vertex_t c) const {
    check(c);
    return values_[c];
  }

  void accumulate(vertex_t c, score_t delta) {
    check(c);
    accumulate_unchecked(c, delta);
  }
  void accumulate_unchecked(vertex_t c, score_t delta) noexcept {
    auto& slot = values_[c];
    if (std::bit_cast<std::uint64_t>(slot) == 0) keys_.push_back(c);
    slot += delta;
    // x + (-x) rounds to +0.0; keep the slot marked as listed.
    if (std::bit_cast<std::uint64_t>(slot) == 0) slot = -score_t(0);
  }

  /// Zeroes c's entry without removing it from the key list.
  void erase(vertex_t c) {
    check(c);
    erase_unchecked(c);
  }
  void erase_unchecked(vertex_t c) noexcept {
    // Never-touched slots stay +0.0 so they are not mistaken for keys.
    if (std::bit_cast<std::uint64_t>(values_[c]) != 0) values_[c] = -score_t(0);
  }

  /// Calls f(key, value) for each live key exactly once, then resets the
  /// table. Cost is O(key_count), never O(N).
  template <class F>
  void drain(F&& f) {
    std::size_t writes = 0;
    for (vertex_t c : keys_) {
      score_t v = values_[c];
      values_[c] = score_t(0);
      ++writes;
      if (v != score_t(0)) f(c, v);
    }
    keys_.clear();
    last_drain_writes_ = writes + 1;
  }

  std::vector<std::pair<vertex_t, score_t>> drain() {
    std::vector<std::pair<vertex_t, score_t>> out;
    out.reserve(keys_.size());
    drain([&](vertex_t c, score_t v) { out.emplace_back(c, v); });
    return out;
  }

  /// Number of writes the most recent drain performed (value resets plus the
  /// key-list clear). Instrumentation only.
  std::size_t last_drain_writes() const noexcept { return last_drain_writes_; }

 private:
  void check(vertex_t c) const {
    if (c >= values_.size())
      throw std::out_of_range("score table key " + std::to_string(c) + " out of range [0, " +
                              std::to_string(values_.size()) + ")");
  }

  std::vector<score_t> values_;
  std::vector<vertex_t> keys_;
  std::size_t last_drain_writes_ = 0;
};

}  // namespace hublink
