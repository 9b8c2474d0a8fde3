#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "evaluation.hpp"
#include "graph.hpp"

namespace hublink {

namespace detail {

inline void check_feasible(std::size_t n, std::size_t m) {
  if (n > std::size_t(std::numeric_limits<vertex_t>::max()))
    throw std::invalid_argument("vertex count exceeds 32-bit ids");
  const std::uint64_t max_edges = std::uint64_t(n) * (n > 0 ? n - 1 : 0) / 2;
  if (m > max_edges)
    throw std::invalid_argument("infeasible: " + std::to_string(m) + " edges among " + std::to_string(n) +
                                " vertices (max " + std::to_string(max_edges) + ")");
}

/// Tracks distinct undirected edges while a generator adds them.
struct EdgeAccumulator {
  EdgeList list;
  EdgeSet seen;

  bool add(vertex_t u, vertex_t v) {
    if (u == v || !seen.insert(edge_key(u, v)).second) return false;
    list.pairs.emplace_back(std::min(u, v), std::max(u, v));
    return true;
  }
};

/// Adds uniformly random new edges until `m` are present. Falls back to
/// enumerating the remaining non-edges when the graph is nearly complete.
inline void fill_uniform(EdgeAccumulator& acc, std::size_t n, std::size_t m, Rng& rng) {
  const std::uint64_t max_edges = std::uint64_t(n) * (n > 0 ? n - 1 : 0) / 2;
  if (acc.list.pairs.size() >= m) return;
  if (2 * m <= max_edges) {
    while (acc.list.pairs.size() < m) acc.add(vertex_t(uniform_below(rng, n)), vertex_t(uniform_below(rng, n)));
    return;
  }
  std::vector<std::pair<vertex_t, vertex_t>> missing;
  for (vertex_t u = 0; u < n; ++u)
    for (vertex_t v = u + 1; v < n; ++v)
      if (!acc.seen.count(edge_key(u, v))) missing.emplace_back(u, v);
  for (std::size_t i = 0; acc.list.pairs.size() < m; ++i) {
    std::size_t j = i + std::size_t(uniform_below(rng, missing.size() - i));
    std::swap(missing[i], missing[j]);
    acc.add(missing[i].first, missing[i].second);
  }
}

}  // namespace detail

/// G(n, m): exactly m distinct edges chosen uniformly.
inline Graph generate_erdos_renyi(std::size_t n, std::size_t m, std::uint64_t seed) {
  detail::check_feasible(n, m);
  Rng rng(seed);
  detail::EdgeAccumulator acc;
  acc.seen.reserve(m * 2);
  detail::fill_uniform(acc, n, m, rng);
  acc.list.vertex_count_hint = n;
  return build_graph(acc.list);
}

/// Preferential attachment with exactly m edges. Each vertex after an
/// initial clique attaches to d = max(1, m / n) distinct earlier vertices
/// chosen proportionally to degree; leftover edges are placed uniformly.
inline Graph generate_preferential_attachment(std::size_t n, std::size_t m, std::uint64_t seed) {
  detail::check_feasible(n, m);
  Rng rng(seed);
  detail::EdgeAccumulator acc;
  acc.seen.reserve(m * 2);
  const std::size_t d = std::max<std::size_t>(1, n > 0 ? m / n : 0);
  const std::size_t core = std::min(n, d + 1);
  // Every edge endpoint, so a uniform pick is degree-proportional.
  std::vector<vertex_t> endpoints;
  endpoints.reserve(2 * m);
  auto add = [&](vertex_t u, vertex_t v) {
    if (acc.list.pairs.size() >= m || !acc.add(u, v)) return false;
    endpoints.push_back(u);
    endpoints.push_back(v);
    return true;
  };
  for (vertex_t u = 0; u < core; ++u)
    for (vertex_t v = u + 1; v < core; ++v) add(u, v);
  std::vector<vertex_t> targets;
  for (std::size_t v = core; v < n && acc.list.pairs.size() < m; ++v) {
    targets.clear();
    const std::size_t want = std::min(d, v);
    while (targets.size() < want) {
      vertex_t t = endpoints.empty() ? vertex_t(uniform_below(rng, v))
                                     : endpoints[std::size_t(uniform_below(rng, endpoints.size()))];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (vertex_t t : targets) add(vertex_t(v), t);
  }
  detail::fill_uniform(acc, n, m, rng);
  acc.list.vertex_count_hint = n;
  return build_graph(acc.list);
}

/// Small-world graph with exactly m edges: a ring lattice joining each
/// vertex to its h = m / n clockwise successors (plus one extra successor
/// for the first m mod n vertices), then each edge's far endpoint is rewired
/// to a uniform vertex with probability `rewire`.
inline Graph generate_small_world(std::size_t n, std::size_t m, double rewire, std::uint64_t seed) {
  detail::check_feasible(n, m);
  if (!(rewire >= 0 && rewire <= 1)) throw std::invalid_argument("rewire probability must be in [0, 1]");
  if (n == 0 || m == 0) return build_graph(EdgeList{{}, n});
  const std::size_t h = m / n, extra = m % n;
  if (2 * (h + (extra ? 1 : 0)) >= n)
    throw std::invalid_argument("small-world lattice needs m < n * (n - 1) / 2 with degree below n - 1; use er");
  Rng rng(seed);
  std::vector<std::pair<vertex_t, vertex_t>> edges;
  edges.reserve(m);
  for (std::size_t j = 1; j <= h + 1; ++j)
    for (std::size_t u = 0; u < n; ++u)
      if (j <= h || u < extra) edges.emplace_back(vertex_t(u), vertex_t((u + j) % n));
  EdgeSet seen;
  seen.reserve(m * 2);
  for (auto [u, v] : edges) seen.insert(edge_key(u, v));

  // Rewire in lattice order; a rewired edge keeps u and takes a fresh
  // endpoint that creates neither a self-loop nor a duplicate.
  for (auto& [u, v] : edges) {
    if (uniform_unit(rng) >= rewire) continue;
    for (int attempt = 0; attempt < 64; ++attempt) {
      vertex_t w = vertex_t(uniform_below(rng, n));
      if (w == u || seen.count(edge_key(u, w))) continue;
      seen.erase(edge_key(u, v));
      seen.insert(edge_key(u, w));
      v = w;
      break;
    }
  }
  EdgeList list;
  list.pairs = std::move(edges);
  list.vertex_count_hint = n;
  return build_graph(list);
}

}  // namespace hublink
