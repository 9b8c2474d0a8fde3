#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hublink {

/// Scores are accumulated and reported in double precision.
using score_t = double;

/// Neighborhood similarity metric. Count-type metrics accumulate
/// |N(a) ∩ N(c)|; AA and RA accumulate per-common-neighbor weights.
enum class Metric {
  CN,   ///< common neighbors
  JC,   ///< Jaccard coefficient
  SI,   ///< Sorensen index
  SC,   ///< Salton cosine
  HP,   ///< hub promoted
  HD,   ///< hub depressed
  LHN,  ///< Leicht-Holme-Newman
  AA,   ///< Adamic-Adar
  RA,   ///< resource allocation
};

inline constexpr std::array<Metric, 9> all_metrics = {Metric::CN, Metric::JC, Metric::SI, Metric::SC, Metric::HP,
                                                       Metric::HD, Metric::LHN, Metric::AA, Metric::RA};

inline constexpr std::string_view metric_name(Metric m) noexcept {
  switch (m) {
    case Metric::CN: return "cn";
    case Metric::JC: return "jc";
    case Metric::SI: return "si";
    case Metric::SC: return "sc";
    case Metric::HP: return "hp";
    case Metric::HD: return "hd";
    case Metric::LHN: return "lhn";
    case Metric::AA: return "aa";
    case Metric::RA: return "ra";
  }
  return "?";
}

/// Case-insensitive lookup of the lowercase CLI token.
inline std::optional<Metric> parse_metric(std::string_view name) {
  std::string lower(name);
  for (auto& ch : lower) ch = char(std::tolower(static_cast<unsigned char>(ch)));
  for (Metric m : all_metrics)
    if (metric_name(m) == lower) return m;
  return std::nullopt;
}

/// Hub limit that works well for each metric (degree of first-order
/// neighbors still scanned): 4 for HP/LHN, 32 for CN/AA, 256 otherwise.
inline constexpr std::size_t default_hub_limit(Metric m) noexcept {
  switch (m) {
    case Metric::HP:
    case Metric::LHN: return 4;
    case Metric::CN:
    case Metric::AA: return 32;
    default: return 256;
  }
}

/// True for metrics whose accumulator is a plain common-neighbor count.
inline constexpr bool is_count_metric(Metric m) noexcept { return m != Metric::AA && m != Metric::RA; }

/// Amount one common neighbor b of degree `deg_b` adds to a pair's accumulator.
/// No range checks; callers guarantee deg_b >= 2 for AA.
template <Metric M>
inline score_t contribution_unchecked(std::size_t deg_b) noexcept {
  if constexpr (M == Metric::AA) return score_t(1) / std::log(score_t(deg_b));
  else if constexpr (M == Metric::RA) return score_t(1) / score_t(deg_b);
  else return score_t(1);
}

/// Throws std::domain_error when deg_b is 0, or below 2 for AA (log 1 = 0).
inline score_t contribution(Metric m, std::size_t deg_b) {
  if (deg_b == 0) throw std::domain_error("contribution: common neighbor with degree 0");
  switch (m) {
    case Metric::AA:
      if (deg_b < 2) throw std::domain_error("contribution: Adamic-Adar undefined for degree < 2");
      return contribution_unchecked<Metric::AA>(deg_b);
    case Metric::RA: return contribution_unchecked<Metric::RA>(deg_b);
    default: return 1;
  }
}

/// Turns an accumulator into the metric score for pair (a, c). CN, AA and
/// RA scores are the accumulator itself; the rest normalize the common
/// neighbor count by a function of the two degrees.
template <Metric M>
inline score_t finalize_unchecked(score_t acc, std::size_t deg_a, std::size_t deg_c) noexcept {
  const score_t da = score_t(deg_a), dc = score_t(deg_c);
  if constexpr (M == Metric::JC) return acc / (da + dc - acc);
  else if constexpr (M == Metric::SI) return acc / (da + dc);
  else if constexpr (M == Metric::SC) return acc / std::sqrt(da * dc);
  else if constexpr (M == Metric::HP) return acc / std::min(da, dc);
  else if constexpr (M == Metric::HD) return acc / std::max(da, dc);
  else if constexpr (M == Metric::LHN) return acc / (da * dc);
  else return acc;
}

inline score_t finalize(Metric m, score_t acc, std::size_t deg_a, std::size_t deg_c) {
  if (deg_a == 0 || deg_c == 0) throw std::domain_error("finalize: zero degree endpoint");
  if (!(acc > 0)) throw std::domain_error("finalize: accumulator must be positive");
  switch (m) {
    case Metric::CN: return finalize_unchecked<Metric::CN>(acc, deg_a, deg_c);
    case Metric::JC: return finalize_unchecked<Metric::JC>(acc, deg_a, deg_c);
    case Metric::SI: return finalize_unchecked<Metric::SI>(acc, deg_a, deg_c);
    case Metric::SC: return finalize_unchecked<Metric::SC>(acc, deg_a, deg_c);
    case Metric::HP: return finalize_unchecked<Metric::HP>(acc, deg_a, deg_c);
    case Metric::HD: return finalize_unchecked<Metric::HD>(acc, deg_a, deg_c);
    case Metric::LHN: return finalize_unchecked<Metric::LHN>(acc, deg_a, deg_c);
    case Metric::AA: return finalize_unchecked<Metric::AA>(acc, deg_a, deg_c);
    case Metric::RA: return finalize_unchecked<Metric::RA>(acc, deg_a, deg_c);
  }
  return acc;
}

/// Invokes f(std::integral_constant<Metric, M>{}) for the runtime metric m,
/// so hot loops can be instantiated once per metric.
template <class F>
inline decltype(auto) dispatch_metric(Metric m, F&& f) {
  switch (m) {
    case Metric::CN: return f(std::integral_constant<Metric, Metric::CN>{});
    case Metric::JC: return f(std::integral_constant<Metric, Metric::JC>{});
    case Metric::SI: return f(std::integral_constant<Metric, Metric::SI>{});
    case Metric::SC: return f(std::integral_constant<Metric, Metric::SC>{});
    case Metric::HP: return f(std::integral_constant<Metric, Metric::HP>{});
    case Metric::HD: return f(std::integral_constant<Metric, Metric::HD>{});
    case Metric::LHN: return f(std::integral_constant<Metric, Metric::LHN>{});
    case Metric::AA: return f(std::integral_constant<Metric, Metric::AA>{});
    case Metric::RA: return f(std::integral_constant<Metric, Metric::RA>{});
  }
  throw std::invalid_argument("unknown metric");
}

}  // namespace hublink
