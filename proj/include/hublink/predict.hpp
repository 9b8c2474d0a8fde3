#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "graph.hpp"
#include "metrics.hpp"
#include "score_table.hpp"
#include "topk.hpp"

namespace hublink {

/// Largest degree of a first-order neighbor whose neighborhood is still
/// scanned. Unlimited means every first-order neighbor is scanned.
class HubLimit {
 public:
  static constexpr HubLimit unlimited() noexcept { return HubLimit(std::numeric_limits<std::size_t>::max()); }
  static HubLimit of(std::size_t limit) {
    if (limit == 0) throw std::invalid_argument("hub limit must be >= 1");
    return HubLimit(limit);
  }
  static HubLimit for_metric(Metric m) { return of(default_hub_limit(m)); }

  constexpr bool is_unlimited() const noexcept { return value_ == std::numeric_limits<std::size_t>::max(); }
  constexpr std::size_t value() const noexcept { return value_; }
  constexpr bool admits(std::size_t degree) const noexcept { return degree <= value_; }

  std::string to_string() const { return is_unlimited() ? "inf" : std::to_string(value_); }

  constexpr bool operator==(const HubLimit&) const = default;

 private:
  constexpr explicit HubLimit(std::size_t v) noexcept : value_(v) {}
  std::size_t value_;
};

struct PredictConfig {
  Metric metric = Metric::CN;
  std::size_t max_predictions = 1;
  /// Predictions need a score strictly above this.
  score_t score_threshold = 0;
  HubLimit hub_limit = HubLimit::unlimited();
  std::size_t workers = 1;
  TieBreak tie_break = TieBreak::Fast;

  void validate() const {
    if (max_predictions < 1) throw std::invalid_argument("max_predictions must be >= 1");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  }
};

/// Hands out contiguous vertex ranges [begin, end) to whichever worker asks
/// next. One atomic counter; the last chunk may be short.
class ChunkScheduler {
 public:
  static constexpr std::size_t default_chunk = 2048;

  explicit ChunkScheduler(std::size_t n, std::size_t chunk = default_chunk) : n_(n), chunk_(chunk) {
    if (chunk == 0) throw std::invalid_argument("chunk size must be >= 1");
  }

  struct Range {
    std::size_t begin, end;
  };

  std::optional<Range> claim() noexcept {
    std::size_t b = next_.fetch_add(chunk_, std::memory_order_relaxed);
    if (b >= n_) return std::nullopt;
    return Range{b, std::min(b + chunk_, n_)};
  }

  std::size_t chunk_count() const noexcept { return (n_ + chunk_ - 1) / chunk_; }

 private:
  std::size_t n_, chunk_;
  std::atomic<std::size_t> next_{0};
};

/// Runs `body(worker, range)` on `workers` threads (the calling thread is
/// worker 0) until the scheduler is exhausted. The first exception thrown by
/// any worker is rethrown after all workers have joined.
template <class Body>
inline void run_chunked(std::size_t n, std::size_t workers, Body&& body,
                        std::size_t chunk = ChunkScheduler::default_chunk) {
  ChunkScheduler sched(n, chunk);
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&](std::size_t w) {
    try {
      while (auto r = sched.claim()) body(w, *r);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers > 0 ? workers - 1 : 0);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
  }
  if (error) std::rethrow_exception(error);
}

struct PredictStats {
  std::chrono::nanoseconds scoring_time{0};
  std::chrono::nanoseconds merging_time{0};
  /// Pairs (a, c) that reached the score table with a nonzero accumulator.
  std::size_t candidates = 0;
  /// Second-order visits performed (inner-loop iterations).
  std::size_t scanned = 0;
};

struct PredictResult {
  std::vector<Prediction> predictions;
  PredictStats stats;
};

namespace detail {

// Per-worker scratch, heap-allocated separately and padded so no two
// workers write the same cache line.
struct alignas(64) WorkerState {
  WorkerState(std::size_t n, std::size_t k, TieBreak tb) : table(n), list(k, tb) {}
  ScoreTable table;
  PredictionList list;
  std::size_t candidates = 0;
  std::size_t scanned = 0;
};

template <Metric M>
inline void score_vertex(const Graph& g, vertex_t a, const PredictConfig& cfg, WorkerState& ws) {
  auto& table = ws.table;
  const auto first = g.neighbors(a);
  std::size_t scanned = 0;
  for (vertex_t b : first) {
    const std::size_t deg_b = g.degree_unchecked(b);
    if (!cfg.hub_limit.admits(deg_b)) continue;
    // b's only neighbor is a itself.
    if (deg_b < 2) continue;
    const score_t delta = contribution_unchecked<M>(deg_b);
    const auto second = g.neighbors(b);
    // Sorted neighbor lists: skip straight past every c <= a.
    auto it = std::upper_bound(second.begin(), second.end(), a);
    scanned += std::size_t(second.end() - it);
    for (; it != second.end(); ++it) table.accumulate_unchecked(*it, delta);
  }
  ws.scanned += scanned;
  for (vertex_t b : first) table.erase_unchecked(b);

  const std::size_t deg_a = first.size();
  table.drain([&](vertex_t c, score_t acc) {
    ++ws.candidates;
    score_t score = finalize_unchecked<M>(acc, deg_a, g.degree_unchecked(c));
    if (!(score > cfg.score_threshold)) return;
    ws.list.offer({a, c, score});
  });
}

}  // namespace detail

/// Predicts up to cfg.max_predictions non-edges (u < v) with the highest
/// scores, best first. Only pairs linked through at least one common
/// neighbor of degree <= cfg.hub_limit are scored, and each score sums
/// contributions over exactly those common neighbors.
///
/// Scoring runs in parallel over vertices in dynamically claimed chunks of
/// 2048; each worker keeps its own score table and top-k list. Merging is
/// sequential.
inline PredictResult predict_links(const Graph& g, const PredictConfig& cfg) {
  cfg.validate();
  using clock = std::chrono::steady_clock;
  PredictResult result;
  const std::size_t n = g.vertex_count();

  auto t0 = clock::now();
  std::vector<std::unique_ptr<detail::WorkerState>> states;
  states.reserve(cfg.workers);
  for (std::size_t w = 0; w < cfg.workers; ++w)
    states.push_back(std::make_unique<detail::WorkerState>(n, cfg.max_predictions, cfg.tie_break));

  dispatch_metric(cfg.metric, [&](auto tag) {
    constexpr Metric M = decltype(tag)::value;
    run_chunked(n, cfg.workers, [&](std::size_t w, ChunkScheduler::Range r) {
      auto& ws = *states[w];
      for (std::size_t a = r.begin; a < r.end; ++a) detail::score_vertex<M>(g, vertex_t(a), cfg, ws);
    });
  });
  auto t1 = clock::now();

  std::vector<PredictionList> lists;
  lists.reserve(states.size());
  for (auto& s : states) {
    result.stats.candidates += s->candidates;
    result.stats.scanned += s->scanned;
    lists.push_back(std::move(s->list));
  }
  result.predictions = merge(lists, cfg.max_predictions, cfg.tie_break);
  auto t2 = clock::now();

  result.stats.scoring_time = t1 - t0;
  result.stats.merging_time = t2 - t1;
  return result;
}

/// Appends predicted edges to an edge list, e.g. to build an updated graph.
inline void append_predictions(EdgeList& edges, const std::vector<Prediction>& predictions) {
  edges.pairs.reserve(edges.pairs.size() + predictions.size());
  for (const auto& p : predictions) {
    edges.pairs.emplace_back(p.u, p.v);
    detail::update_hint(edges, p.u, p.v);
  }
}

}  // namespace hublink
