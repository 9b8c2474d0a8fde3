#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "graph.hpp"
#include "metrics.hpp"
#include "topk.hpp"

namespace hublink {

/// Seeded generator used for splitting and graph generation.
using Rng = std::mt19937_64;
inline constexpr std::string_view rng_name = "mt19937_64";

/// Uniform integer in [0, bound) by rejection sampling; unlike
/// std::uniform_int_distribution its output is the same on every standard
/// library.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = rng(); while (x >= limit);
  return x % bound;
}

/// Uniform real in [0, 1) from the top 53 bits.
inline double uniform_unit(Rng& rng) { return double(rng() >> 11) * 0x1.0p-53; }

/// Canonical undirected edge key (min << 32 | max).
inline std::uint64_t edge_key(vertex_t u, vertex_t v) noexcept {
  if (u > v) std::swap(u, v);
  return (std::uint64_t(u) << 32) | v;
}

using EdgeSet = std::unordered_set<std::uint64_t>;

/// Observed graph plus the randomly removed (unobserved) edges.
struct EvalSplit {
  Graph observed;
  std::vector<std::pair<vertex_t, vertex_t>> unobserved;  // canonical u < v, sorted
  std::uint64_t seed = 0;
  std::string rng = std::string(rng_name);

  EdgeSet unobserved_set() const {
    EdgeSet s;
    s.reserve(unobserved.size() * 2);
    for (auto [u, v] : unobserved) s.insert(edge_key(u, v));
    return s;
  }
};

/// Moves `remove_count` distinct edges, chosen uniformly at random, from g
/// into the unobserved set. Vertex count is preserved.
inline EvalSplit split_edges(const Graph& g, std::size_t remove_count, std::uint64_t seed) {
  if (remove_count > g.edge_count())
    throw std::invalid_argument("remove_count " + std::to_string(remove_count) + " exceeds edge count " +
                                std::to_string(g.edge_count()));
  std::vector<std::pair<vertex_t, vertex_t>> edges;
  edges.reserve(g.edge_count());
  g.for_each_edge([&](vertex_t u, vertex_t v) { edges.emplace_back(u, v); });

  // Partial Fisher-Yates: the first remove_count slots end up a uniform sample.
  Rng rng(seed);
  for (std::size_t i = 0; i < remove_count; ++i) {
    std::size_t j = i + std::size_t(uniform_below(rng, edges.size() - i));
    std::swap(edges[i], edges[j]);
  }

  EvalSplit split;
  split.seed = seed;
  split.unobserved.assign(edges.begin(), edges.begin() + std::ptrdiff_t(remove_count));
  std::sort(split.unobserved.begin(), split.unobserved.end());

  EdgeList kept;
  kept.pairs.assign(edges.begin() + std::ptrdiff_t(remove_count), edges.end());
  kept.vertex_count_hint = g.vertex_count();
  split.observed = build_graph(kept);
  return split;
}

struct QualityReport {
  std::size_t correct = 0;
  std::size_t predicted = 0;
  std::size_t ground_truth = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

/// Precision = correct/|P|, recall = correct/|truth|, F1 their harmonic
/// mean; every 0/0 is reported as 0.
inline QualityReport make_quality_report(std::size_t correct, std::size_t predicted, std::size_t ground_truth) {
  QualityReport q{correct, predicted, ground_truth, 0, 0, 0};
  if (predicted > 0) q.precision = double(correct) / double(predicted);
  if (ground_truth > 0) q.recall = double(correct) / double(ground_truth);
  if (q.precision + q.recall > 0) q.f1 = 2 * q.precision * q.recall / (q.precision + q.recall);
  return q;
}

inline QualityReport score_predictions(const std::vector<Prediction>& predictions, const EdgeSet& truth) {
  std::size_t correct = 0;
  for (const auto& p : predictions) correct += truth.count(edge_key(p.u, p.v));
  return make_quality_report(correct, predictions.size(), truth.size());
}

namespace detail {
inline double available_pairs(std::size_t n, std::size_t observed_edges) {
  double pairs = double(n) * double(n > 0 ? n - 1 : 0) / 2;
  double avail = pairs - double(observed_edges);
  if (avail < 0)
    throw std::invalid_argument(std::to_string(observed_edges) + " edges cannot exist among " + std::to_string(n) +
                                " vertices");
  return avail;
}
}  // namespace detail

/// Probability that one uniformly random guess among the non-edges of the
/// observed graph hits one of the `ground_truth` unobserved edges. This is
/// also the expected precision of any number of random guesses.
inline double random_guess_precision(std::size_t n, std::size_t observed_edges, std::size_t ground_truth) {
  double avail = detail::available_pairs(n, observed_edges);
  if (avail <= 0) throw std::invalid_argument("no non-edges available to guess");
  if (double(ground_truth) > avail)
    throw std::invalid_argument("ground truth larger than the number of non-edges");
  return double(ground_truth) / avail;
}

/// Probability that `predictions` random guesses are all correct when
/// exactly that many edges are missing: 1 / C(available, predictions).
/// Tiny by construction; reported for reference only.
inline double perfect_guess_probability(std::size_t n, std::size_t observed_edges, std::size_t predictions) {
  double avail = detail::available_pairs(n, observed_edges);
  if (double(predictions) > avail) throw std::invalid_argument("more predictions than non-edges");
  double log_c = std::lgamma(avail + 1) - std::lgamma(double(predictions) + 1) - std::lgamma(avail - predictions + 1);
  return std::exp(-log_c);
}

/// Largest graph brute_force_predict accepts.
inline constexpr std::size_t brute_force_limit = 4096;

/// Reference scorer: evaluates the metric on every non-adjacent pair u < v by
/// intersecting sorted neighbor lists, keeps scores strictly above
/// `threshold`, and returns the top `n_p` by (score desc, u asc, v asc).
/// Quadratic in N; intended for tests and small graphs only.
inline std::vector<Prediction> brute_force_predict(const Graph& g, Metric metric, std::size_t n_p,
                                                   score_t threshold = 0) {
  const std::size_t n = g.vertex_count();
  if (n > brute_force_limit)
    throw std::length_error("brute_force_predict refuses graphs with more than " + std::to_string(brute_force_limit) +
                            " vertices");
  std::vector<Prediction> all;
  for (std::size_t u = 0; u < n; ++u) {
    auto nu = g.neighbors(vertex_t(u));
    for (std::size_t v = u + 1; v < n; ++v) {
      auto nv = g.neighbors(vertex_t(v));
      if (std::binary_search(nu.begin(), nu.end(), vertex_t(v))) continue;
      // Merge-walk the sorted lists; weights accumulate in ascending b.
      double common = 0, weighted = 0;
      auto i = nu.begin(), j = nv.begin();
      while (i != nu.end() && j != nv.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else {
          double db = double(g.degree_unchecked(*i));
          common += 1;
          if (metric == Metric::AA) weighted += 1 / std::log(db);
          else if (metric == Metric::RA) weighted += 1 / db;
          ++i, ++j;
        }
      }
      if (common == 0) continue;
      const double du = double(nu.size()), dv = double(nv.size());
      double s = 0;
      switch (metric) {
        case Metric::CN: s = common; break;
        case Metric::JC: s = common / (du + dv - common); break;  // |union| = du + dv - common
        case Metric::SI: s = common / (du + dv); break;
        case Metric::SC: s = common / std::sqrt(du * dv); break;
        case Metric::HP: s = common / std::min(du, dv); break;
        case Metric::HD: s = common / std::max(du, dv); break;
        case Metric::LHN: s = common / (du * dv); break;
        case Metric::AA:
        case Metric::RA: s = weighted; break;
      }
      if (s > threshold) all.push_back({vertex_t(u), vertex_t(v), s});
    }
  }
  auto better = [](const Prediction& a, const Prediction& b) { return ranks_before(a, b, TieBreak::Deterministic); };
  if (all.size() > n_p) {
    std::partial_sort(all.begin(), all.begin() + std::ptrdiff_t(n_p), all.end(), better);
    all.resize(n_p);
  } else {
    std::sort(all.begin(), all.end(), better);
  }
  return all;
}

}  // namespace hublink
