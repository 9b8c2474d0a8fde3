#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "metrics.hpp"

namespace hublink {

/// A scored candidate edge, canonical (u < v).
struct Prediction {
  vertex_t u;
  vertex_t v;
  score_t score;

  bool operator==(const Prediction&) const = default;
};

/// How score ties are ordered.
///  - Fast: ties compare equal; which tied edges survive is unspecified.
///  - Deterministic: total order by (score desc, u asc, v asc).
enum class TieBreak { Fast, Deterministic };

/// True when `a` ranks strictly ahead of `b`.
inline bool ranks_before(const Prediction& a, const Prediction& b, TieBreak tb) noexcept {
  if (a.score != b.score) return a.score > b.score;
  if (tb == TieBreak::Fast) return false;
  if (a.u != b.u) return a.u < b.u;
  return a.v < b.v;
}

/// Bounded list of the best `capacity` predictions seen so far. Items are
/// appended until the list is full, then turned into a heap whose root is
/// the weakest retained prediction.
class PredictionList {
 public:
  explicit PredictionList(std::size_t capacity = 0, TieBreak tb = TieBreak::Fast)
      : capacity_(capacity), tie_break_(tb) {}

  std::size_t size() const noexcept { return items_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  bool empty() const noexcept { return items_.empty(); }
  bool heapified() const noexcept { return heapified_; }
  TieBreak tie_break() const noexcept { return tie_break_; }
  std::span<const Prediction> items() const noexcept { return items_; }

  /// Weakest retained prediction; only meaningful once heapified.
  const Prediction& root() const noexcept { return items_.front(); }

  void offer(const Prediction& p) {
    if (capacity_ == 0) return;
    auto cmp = heap_cmp();
    if (items_.size() < capacity_) {
      items_.push_back(p);
      if (items_.size() == capacity_) {
        std::make_heap(items_.begin(), items_.end(), cmp);
        heapified_ = true;
      }
      return;
    }
    // A tying newcomer may replace the root in fast mode.
    bool admit = tie_break_ == TieBreak::Fast ? p.score >= items_.front().score
                                              : ranks_before(p, items_.front(), tie_break_);
    if (!admit) return;
    std::pop_heap(items_.begin(), items_.end(), cmp);
    items_.back() = p;
    std::push_heap(items_.begin(), items_.end(), cmp);
  }

  /// Sorts weakest-first so the best prediction sits at the back, ready to
  /// be popped by the merge. No offers are allowed afterwards.
  void sort_for_merge() {
    auto tb = tie_break_;
    std::sort(items_.begin(), items_.end(), [tb](const auto& a, const auto& b) { return ranks_before(b, a, tb); });
    heapified_ = false;
  }

  /// Sorted best-first copy.
  std::vector<Prediction> sorted() const {
    std::vector<Prediction> out(items_.begin(), items_.end());
    auto tb = tie_break_;
    std::sort(out.begin(), out.end(), [tb](const auto& a, const auto& b) { return ranks_before(a, b, tb); });
    return out;
  }

 private:
  friend std::vector<Prediction> merge(std::span<PredictionList> lists, std::size_t n_p, TieBreak tb);

  // "Less than" for the std heap: x < y when x ranks ahead of y, so the
  // root is the weakest element.
  struct HeapCmp {
    TieBreak tb;
    bool operator()(const Prediction& x, const Prediction& y) const noexcept { return ranks_before(x, y, tb); }
  };
  HeapCmp heap_cmp() const noexcept { return {tie_break_}; }

  std::vector<Prediction> items_;
  std::size_t capacity_;
  TieBreak tie_break_;
  bool heapified_ = false;
};

/// Combines per-worker lists into the global top-`n_p`, best first. Each
/// list is sorted on its own, then a max-heap of list heads repeatedly
/// yields the best remaining head. Lists are consumed.
inline std::vector<Prediction> merge(std::span<PredictionList> lists, std::size_t n_p, TieBreak tb) {
  struct Head {
    std::size_t list;
    Prediction top;
  };
  std::vector<Head> heads;
  heads.reserve(lists.size());
  std::size_t total = 0;
  for (std::size_t t = 0; t < lists.size(); ++t) {
    auto& l = lists[t];
    l.tie_break_ = tb;
    l.sort_for_merge();
    total += l.items_.size();
    if (!l.items_.empty()) heads.push_back({t, l.items_.back()});
  }
  // Max-heap on head rank: root is the best head.
  auto cmp = [tb](const Head& x, const Head& y) { return ranks_before(y.top, x.top, tb); };
  std::make_heap(heads.begin(), heads.end(), cmp);

  std::vector<Prediction> out;
  out.reserve(std::min(n_p, total));
  while (!heads.empty() && out.size() < n_p) {
    std::pop_heap(heads.begin(), heads.end(), cmp);
    auto t = heads.back().list;
    heads.pop_back();
    auto& items = lists[t].items_;
    out.push_back(items.back());
    items.pop_back();
    if (!items.empty()) {
      heads.push_back({t, items.back()});
      std::push_heap(heads.begin(), heads.end(), cmp);
    }
  }
  return out;
}

}  // namespace hublink
