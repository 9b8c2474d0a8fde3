#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace hublink {

/// Dense 0-based vertex id; ids must fit in 32 bits.
using vertex_t = std::uint32_t;
/// Index into the adjacency array; may exceed 32 bits on large graphs.
using offset_t = std::uint64_t;

/// Malformed token in a plain edge-list file.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Structural problem in a MatrixMarket file (banner, header, bounds).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ingestion staging: raw pairs in input order, before normalization.
struct EdgeList {
  std::vector<std::pair<vertex_t, vertex_t>> pairs;
  std::optional<std::size_t> vertex_count_hint;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n\v\f";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

/// Splits on ASCII whitespace.
inline std::vector<std::string_view> tokenize(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
inline bool parse_number(std::string_view tok, T& out) {
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

inline bool parse_real(std::string_view tok) {
  // from_chars<double> handles "1", "1.5", "1e-3", "inf", "nan".
  double d;
  return parse_number(tok, d);
}

inline void update_hint(EdgeList& el, vertex_t u, vertex_t v) {
  std::size_t need = std::size_t(std::max(u, v)) + 1;
  if (!el.vertex_count_hint || *el.vertex_count_hint < need) el.vertex_count_hint = need;
}

}  // namespace detail

/// Reads whitespace-separated "u v [weight ...]" lines. Lines whose first
/// non-blank character is one of `comment_prefixes` are skipped, as are
/// blank lines. Weights are validated as numbers and discarded.
inline EdgeList load_edge_list(std::istream& in, std::string_view comment_prefixes = "#%") {
  EdgeList el;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto s = detail::trim(line);
    if (s.empty() || comment_prefixes.find(s.front()) != std::string_view::npos) continue;
    auto toks = detail::tokenize(s);
    if (toks.size() < 2) throw ParseError(lineno, "expected \"u v\", got \"" + std::string(s) + "\"");
    vertex_t u, v;
    if (!detail::parse_number(toks[0], u))
      throw ParseError(lineno, "bad vertex id \"" + std::string(toks[0]) + "\"");
    if (!detail::parse_number(toks[1], v))
      throw ParseError(lineno, "bad vertex id \"" + std::string(toks[1]) + "\"");
    if (u == std::numeric_limits<vertex_t>::max() || v == std::numeric_limits<vertex_t>::max())
      throw ParseError(lineno, "vertex id exceeds 32-bit range");
    if (toks.size() >= 3 && !detail::parse_real(toks[2]))
      throw ParseError(lineno, "bad weight \"" + std::string(toks[2]) + "\"");
    el.pairs.emplace_back(u, v);
    detail::update_hint(el, u, v);
  }
  return el;
}

/// Reads a MatrixMarket coordinate file. Entries are converted to 0-based
/// ids; for symmetric matrices only the stored triangle is emitted, since
/// build_graph symmetrizes anyway.
inline EdgeList load_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty input, missing MatrixMarket banner");
  auto banner = detail::tokenize(line);
  auto lower = [](std::string_view s) {
    std::string r(s);
    for (auto& ch : r) ch = char(std::tolower(static_cast<unsigned char>(ch)));
    return r;
  };
  if (banner.empty() || banner[0] != "%%MatrixMarket")
    throw FormatError("missing %%MatrixMarket banner");
  if (banner.size() < 3 || lower(banner[1]) != "matrix")
    throw FormatError("unsupported MatrixMarket object");
  if (lower(banner[2]) != "coordinate")
    throw FormatError("unsupported MatrixMarket format \"" + std::string(banner[2]) + "\", expected coordinate");

  std::size_t lineno = 1;
  std::optional<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> dims;
  EdgeList el;
  std::uint64_t seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto s = detail::trim(line);
    if (s.empty() || s.front() == '%') continue;
    auto toks = detail::tokenize(s);
    if (!dims) {
      std::uint64_t r, c, nnz;
      if (toks.size() < 3 || !detail::parse_number(toks[0], r) || !detail::parse_number(toks[1], c) ||
          !detail::parse_number(toks[2], nnz))
        throw FormatError("line " + std::to_string(lineno) + ": bad dimensions line");
      if (std::max(r, c) >= std::numeric_limits<vertex_t>::max())
        throw FormatError("matrix dimension exceeds 32-bit vertex ids");
      dims = {r, c, nnz};
      el.vertex_count_hint = std::size_t(std::max(r, c));
      el.pairs.reserve(nnz);
      continue;
    }
    auto [rows, cols, nnz] = *dims;
    std::uint64_t i, j;
    if (toks.size() < 2 || !detail::parse_number(toks[0], i) || !detail::parse_number(toks[1], j))
      throw FormatError("line " + std::to_string(lineno) + ": bad entry");
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw FormatError("line " + std::to_string(lineno) + ": entry (" + std::to_string(i) + ", " +
                        std::to_string(j) + ") out of declared bounds");
    if (++seen > nnz) throw FormatError("more entries than declared");
    el.pairs.emplace_back(vertex_t(i - 1), vertex_t(j - 1));
  }
  if (!dims) throw FormatError("missing dimensions line");
  if (seen != std::get<2>(*dims))
    throw FormatError("declared " + std::to_string(std::get<2>(*dims)) + " entries, found " + std::to_string(seen));
  return el;
}

/// Immutable undirected graph in CSR form. Each undirected edge is stored in
/// both directions; neighbor lists are sorted ascending with no self-loops
/// and no duplicates.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  std::size_t vertex_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  /// Throws std::out_of_range for v >= vertex_count().
  std::size_t degree(vertex_t v) const {
    if (v >= vertex_count())
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range [0, " +
                              std::to_string(vertex_count()) + ")");
    return degree_unchecked(v);
  }
  std::size_t degree_unchecked(vertex_t v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  std::span<const vertex_t> neighbors(vertex_t v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  bool has_edge(vertex_t u, vertex_t v) const noexcept {
    if (u >= vertex_count() || v >= vertex_count()) return false;
    auto n = neighbors(u);
    return std::binary_search(n.begin(), n.end(), v);
  }

  std::size_t max_degree() const noexcept {
    std::size_t d = 0;
    for (std::size_t v = 0; v < vertex_count(); ++v) d = std::max(d, degree_unchecked(vertex_t(v)));
    return d;
  }

  std::span<const offset_t> offsets() const noexcept { return offsets_; }
  std::span<const vertex_t> adjacency() const noexcept { return adjacency_; }

  /// Calls f(u, v) once per undirected edge with u < v, in lexicographic order.
  template <class F>
  void for_each_edge(F&& f) const {
    for (std::size_t u = 0; u < vertex_count(); ++u)
      for (vertex_t v : neighbors(vertex_t(u)))
        if (v > u) f(vertex_t(u), v);
  }

  bool operator==(const Graph&) const = default;

 private:
  friend Graph build_graph(const EdgeList& edges);

  std::vector<offset_t> offsets_;
  std::vector<vertex_t> adjacency_;
};

/// Symmetrizes and normalizes an edge list: drops self-loops, collapses
/// duplicates, sorts neighbor lists.
inline Graph build_graph(const EdgeList& edges) {
  std::size_t n = edges.vertex_count_hint.value_or(0);
  for (auto [u, v] : edges.pairs) n = std::max(n, std::size_t(std::max(u, v)) + 1);

  std::vector<offset_t> offsets(n + 1, 0);
  for (auto [u, v] : edges.pairs) {
    if (u == v) continue;
    ++offsets[u + 1];
    ++offsets[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];

  std::vector<vertex_t> adj(offsets[n]);
  {
    std::vector<offset_t> pos(offsets.begin(), offsets.end() - 1);
    for (auto [u, v] : edges.pairs) {
      if (u == v) continue;
      adj[pos[u]++] = v;
      adj[pos[v]++] = u;
    }
  }

  // Sort and dedup each row, compacting in place.
  offset_t write = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto b = adj.begin() + offsets[v], e = adj.begin() + offsets[v + 1];
    std::sort(b, e);
    auto last = std::unique(b, e);
    offsets[v] = write;
    write = offset_t(std::copy(b, last, adj.begin() + write) - adj.begin());
  }
  offsets[n] = write;
  adj.resize(write);
  adj.shrink_to_fit();

  Graph g;
  g.offsets_ = std::move(offsets);
  g.adjacency_ = std::move(adj);
  return g;
}

/// Emits each undirected edge once as an EdgeList, preserving vertex count.
inline EdgeList to_edge_list(const Graph& g) {
  EdgeList el;
  el.pairs.reserve(g.edge_count());
  g.for_each_edge([&](vertex_t u, vertex_t v) { el.pairs.emplace_back(u, v); });
  el.vertex_count_hint = g.vertex_count();
  return el;
}

/// Writes "u v" lines with u < v in lexicographic order.
inline void serialize(const Graph& g, std::ostream& out) {
  g.for_each_edge([&](vertex_t u, vertex_t v) { out << u << ' ' << v << '\n'; });
}

/// Writes a symmetric pattern MatrixMarket file (lower triangle, 1-based),
/// which keeps isolated trailing vertices that plain edge lists lose.
inline void serialize_matrix_market(const Graph& g, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate pattern symmetric\n";
  out << g.vertex_count() << ' ' << g.vertex_count() << ' ' << g.edge_count() << '\n';
  g.for_each_edge([&](vertex_t u, vertex_t v) { out << (v + 1) << ' ' << (u + 1) << '\n'; });
}

}  // namespace hublink
