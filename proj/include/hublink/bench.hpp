#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "evaluation.hpp"
#include "graph.hpp"
#include "metrics.hpp"
#include "predict.hpp"

namespace hublink::bench {

using Micros = std::chrono::microseconds;

/// Hub limit as requested on the command line: a number, "inf", or
/// "auto" (resolved per metric).
struct HubLimitSpec {
  enum class Kind { Value, Unlimited, Auto } kind = Kind::Unlimited;
  std::size_t value = 0;

  static HubLimitSpec parse(std::string_view tok) {
    if (tok == "inf" || tok == "infinity") return {Kind::Unlimited, 0};
    if (tok == "auto") return {Kind::Auto, 0};
    std::size_t v;
    if (!hublink::detail::parse_number(tok, v) || v == 0)
      throw std::invalid_argument("bad hub limit \"" + std::string(tok) + "\" (expected N >= 1, inf or auto)");
    return {Kind::Value, v};
  }

  HubLimit resolve(Metric m) const {
    switch (kind) {
      case Kind::Value: return HubLimit::of(value);
      case Kind::Auto: return HubLimit::for_metric(m);
      case Kind::Unlimited: break;
    }
    return HubLimit::unlimited();
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Value: return std::to_string(value);
      case Kind::Auto: return "auto";
      case Kind::Unlimited: break;
    }
    return "inf";
  }

  bool operator==(const HubLimitSpec&) const = default;
};

/// Parses a comma-separated hub-limit grammar. Items are "N", "inf",
/// "auto", or a geometric range "LO..HIxF" (LO, LO*F, ... up to HI).
/// Duplicates are dropped, keeping first occurrence order.
inline std::vector<HubLimitSpec> parse_hub_limits(std::string_view text) {
  std::vector<HubLimitSpec> out;
  auto push = [&](HubLimitSpec s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    auto item = hublink::detail::trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    pos = comma == std::string_view::npos ? text.size() + 1 : comma + 1;
    if (item.empty()) continue;
    auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      push(HubLimitSpec::parse(item));
      continue;
    }
    auto x = item.find('x', dots + 2);
    std::size_t lo, hi, f;
    if (x == std::string_view::npos || !hublink::detail::parse_number(item.substr(0, dots), lo) ||
        !hublink::detail::parse_number(item.substr(dots + 2, x - dots - 2), hi) ||
        !hublink::detail::parse_number(item.substr(x + 1), f) || lo == 0 || f < 2 || hi < lo)
      throw std::invalid_argument("bad hub-limit range \"" + std::string(item) + "\" (expected LO..HIxF, F >= 2)");
    for (std::size_t v = lo; v <= hi; v *= f) {
      push({HubLimitSpec::Kind::Value, v});
      if (v > hi / f) break;
    }
  }
  return out;
}

/// Comma-separated list helper.
inline std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    auto item = hublink::detail::trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

/// Round-trippable double: shortest text that parses back to the same bits.
inline std::string format_real(double x) {
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

/// Milliseconds with microsecond resolution, e.g. "12.345".
inline std::string format_ms(Micros t) {
  char buf[32];
  auto us = t.count();
  std::snprintf(buf, sizeof buf, "%lld.%03lld", static_cast<long long>(us / 1000), static_cast<long long>(us % 1000));
  return buf;
}

inline Micros parse_ms(std::string_view s) {
  auto dot = s.find('.');
  long long whole = 0, frac = 0;
  auto whole_s = s.substr(0, dot);
  if (!hublink::detail::parse_number(whole_s, whole)) throw std::invalid_argument("bad duration \"" + std::string(s) + "\"");
  if (dot != std::string_view::npos) {
    auto f = s.substr(dot + 1);
    if (f.size() != 3 || !hublink::detail::parse_number(f, frac))
      throw std::invalid_argument("bad duration \"" + std::string(s) + "\"");
  }
  return Micros(whole * 1000 + frac);
}

template <class D>
inline Micros to_micros(D d) {
  return std::chrono::duration_cast<Micros>(d);
}

/// FNV-1a over (u, v, score bits) of a prediction list; equal digests mean
/// identical output in practice.
inline std::uint64_t digest(const std::vector<Prediction>& ps) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (const auto& p : ps) {
    mix(p.u);
    mix(p.v);
    mix(std::bit_cast<std::uint64_t>(p.score));
  }
  return h;
}

/// One benchmark measurement: the configuration that produced it, its
/// phase timings, and (for evaluation runs) prediction quality.
struct RunRecord {
  std::string graph;
  std::uint64_t seed = 0;
  Metric metric = Metric::CN;
  std::size_t top = 0;
  double threshold = 0;
  HubLimit hub_limit = HubLimit::unlimited();
  std::size_t threads = 1;
  bool deterministic = false;
  double remove_frac = 0;
  std::size_t repeat = 1;
  std::size_t candidates = 0;
  std::uint64_t digest = 0;
  // Minimum over repeats; the mean is reported alongside.
  Micros scoring_time{0}, merging_time{0}, total_time{0};
  Micros mean_scoring_time{0}, mean_merging_time{0}, mean_total_time{0};
  std::optional<QualityReport> quality;

  bool operator==(const RunRecord& o) const {
    auto q = [](const std::optional<QualityReport>& r) {
      return r ? std::tuple(true, r->correct, r->predicted, r->ground_truth, r->precision, r->recall, r->f1)
               : std::tuple(false, std::size_t(0), std::size_t(0), std::size_t(0), 0.0, 0.0, 0.0);
    };
    return graph == o.graph && seed == o.seed && metric == o.metric && top == o.top && threshold == o.threshold &&
           hub_limit == o.hub_limit && threads == o.threads && deterministic == o.deterministic &&
           remove_frac == o.remove_frac && repeat == o.repeat && candidates == o.candidates && digest == o.digest &&
           scoring_time == o.scoring_time && merging_time == o.merging_time && total_time == o.total_time &&
           mean_scoring_time == o.mean_scoring_time && mean_merging_time == o.mean_merging_time &&
           mean_total_time == o.mean_total_time && q(quality) == q(o.quality);
  }
};

inline constexpr std::string_view run_record_header =
    "graph,seed,metric,top,threshold,hub_limit,threads,deterministic,remove_frac,repeat,"
    "candidates,digest,scoring_ms,merging_ms,total_ms,mean_scoring_ms,mean_merging_ms,mean_total_ms,"
    "removed,predicted,correct,precision,recall,f1";

namespace detail {

/// Quotes a CSV field when it contains a delimiter, quote or newline.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

inline std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') cur += '"', ++i;
      else if (ch == '"') quoted = false;
      else cur += ch;
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

inline char hex_digit(unsigned v) { return "0123456789abcdef"[v & 15]; }

}  // namespace detail

inline std::string format_digest(std::uint64_t d) {
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, d >>= 4) s[std::size_t(i)] = detail::hex_digit(unsigned(d));
  return s;
}

inline std::string to_csv_row(const RunRecord& r) {
  std::ostringstream out;
  out << detail::csv_field(r.graph) << ',' << r.seed << ',' << metric_name(r.metric) << ',' << r.top << ','
      << format_real(r.threshold) << ',' << r.hub_limit.to_string() << ',' << r.threads << ','
      << (r.deterministic ? 1 : 0) << ',' << format_real(r.remove_frac) << ',' << r.repeat << ',' << r.candidates
      << ',' << format_digest(r.digest) << ',' << format_ms(r.scoring_time) << ',' << format_ms(r.merging_time) << ','
      << format_ms(r.total_time) << ',' << format_ms(r.mean_scoring_time) << ',' << format_ms(r.mean_merging_time)
      << ',' << format_ms(r.mean_total_time);
  if (r.quality) {
    const auto& q = *r.quality;
    out << ',' << q.ground_truth << ',' << q.predicted << ',' << q.correct << ',' << format_real(q.precision) << ','
        << format_real(q.recall) << ',' << format_real(q.f1);
  } else {
    out << ",,,,,,";
  }
  return out.str();
}

/// Parses records from CSV text whose first line is a header. Columns are
/// matched by name, so extra columns (e.g. speedup) are ignored.
inline std::vector<RunRecord> parse_run_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  auto header = detail::csv_split(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (auto name : split_list(run_record_header))
    if (!col.count(name)) throw std::invalid_argument("run record CSV lacks column \"" + name + "\"");

  std::vector<RunRecord> out;
  while (std::getline(in, line)) {
    if (hublink::detail::trim(line).empty()) continue;
    auto f = detail::csv_split(line);
    if (f.size() != header.size()) throw std::invalid_argument("run record CSV row has wrong field count");
    auto get = [&](const char* name) -> const std::string& { return f[col.at(name)]; };
    auto num = [&](const char* name) {
      std::uint64_t v;
      if (!hublink::detail::parse_number(get(name), v)) throw std::invalid_argument(std::string("bad ") + name);
      return v;
    };
    auto real = [&](const char* name) {
      double v;
      if (!hublink::detail::parse_number(std::string_view(get(name)), v))
        throw std::invalid_argument(std::string("bad ") + name);
      return v;
    };
    RunRecord r;
    r.graph = get("graph");
    r.seed = num("seed");
    auto m = parse_metric(get("metric"));
    if (!m) throw std::invalid_argument("bad metric " + get("metric"));
    r.metric = *m;
    r.top = num("top");
    r.threshold = real("threshold");
    r.hub_limit = HubLimitSpec::parse(get("hub_limit")).resolve(r.metric);
    r.threads = num("threads");
    r.deterministic = num("deterministic") != 0;
    r.remove_frac = real("remove_frac");
    r.repeat = num("repeat");
    r.candidates = num("candidates");
    {
      std::uint64_t d;
      auto s = std::string_view(get("digest"));
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), d, 16);
      if (ec != std::errc() || p != s.data() + s.size()) throw std::invalid_argument("bad digest");
      r.digest = d;
    }
    r.scoring_time = parse_ms(get("scoring_ms"));
    r.merging_time = parse_ms(get("merging_ms"));
    r.total_time = parse_ms(get("total_ms"));
    r.mean_scoring_time = parse_ms(get("mean_scoring_ms"));
    r.mean_merging_time = parse_ms(get("mean_merging_ms"));
    r.mean_total_time = parse_ms(get("mean_total_ms"));
    if (!get("predicted").empty()) {
      QualityReport q;
      q.ground_truth = num("removed");
      q.predicted = num("predicted");
      q.correct = num("correct");
      q.precision = real("precision");
      q.recall = real("recall");
      q.f1 = real("f1");
      r.quality = q;
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline constexpr std::string_view quality_header = "graph,metric,hub_limit,removed,predicted,correct,precision,recall,f1";

/// One QualityReport row: graph, metric, hub_limit, removed, predicted,
/// correct, precision, recall, f1.
inline std::string quality_csv_row(std::string_view graph, Metric m, HubLimit hub, const QualityReport& q) {
  std::ostringstream out;
  out << detail::csv_field(graph) << ',' << metric_name(m) << ',' << hub.to_string() << ',' << q.ground_truth << ','
      << q.predicted << ',' << q.correct << ',' << format_real(q.precision) << ',' << format_real(q.recall) << ','
      << format_real(q.f1);
  return out.str();
}

/// Number of edges a removal fraction takes out of a graph with m edges.
inline std::size_t removal_count(std::size_t m, double frac) {
  if (!(frac > 0 && frac <= 1)) throw std::invalid_argument("remove fraction must be in (0, 1]");
  return std::size_t(std::llround(frac * double(m)));
}

/// Repeats prediction `repeat` times and records the per-phase minimum and
/// mean. Total time is measured around the whole predict_links call.
struct TimedPrediction {
  PredictResult result;
  Micros scoring{0}, merging{0}, total{0};
  Micros mean_scoring{0}, mean_merging{0}, mean_total{0};
};

inline TimedPrediction timed_predict(const Graph& g, const PredictConfig& cfg, std::size_t repeat = 1) {
  if (repeat < 1) throw std::invalid_argument("repeat must be >= 1");
  using clock = std::chrono::steady_clock;
  TimedPrediction out;
  Micros sum_s{0}, sum_m{0}, sum_t{0};
  for (std::size_t i = 0; i < repeat; ++i) {
    auto t0 = clock::now();
    auto res = predict_links(g, cfg);
    auto total = to_micros(clock::now() - t0);
    auto s = to_micros(res.stats.scoring_time), m = to_micros(res.stats.merging_time);
    if (i == 0 || s < out.scoring) out.scoring = s;
    if (i == 0 || m < out.merging) out.merging = m;
    if (i == 0 || total < out.total) out.total = total;
    sum_s += s, sum_m += m, sum_t += total;
    out.result = std::move(res);
  }
  auto r = static_cast<Micros::rep>(repeat);
  out.mean_scoring = sum_s / r, out.mean_merging = sum_m / r, out.mean_total = sum_t / r;
  return out;
}

/// Predicts on the observed graph of a split with N_P = |unobserved| and
/// scores the result. Fills every RunRecord field except graph and seed.
inline RunRecord evaluate_split(const EvalSplit& split, const EdgeSet& truth, PredictConfig cfg, double remove_frac,
                                std::size_t repeat = 1) {
  cfg.max_predictions = std::max<std::size_t>(1, split.unobserved.size());
  auto timed = timed_predict(split.observed, cfg, repeat);
  RunRecord r;
  r.seed = split.seed;
  r.metric = cfg.metric;
  r.top = cfg.max_predictions;
  r.threshold = cfg.score_threshold;
  r.hub_limit = cfg.hub_limit;
  r.threads = cfg.workers;
  r.deterministic = cfg.tie_break == TieBreak::Deterministic;
  r.remove_frac = remove_frac;
  r.repeat = repeat;
  r.candidates = timed.result.stats.candidates;
  r.digest = digest(timed.result.predictions);
  r.scoring_time = timed.scoring;
  r.merging_time = timed.merging;
  r.total_time = timed.total;
  r.mean_scoring_time = timed.mean_scoring;
  r.mean_merging_time = timed.mean_merging;
  r.mean_total_time = timed.mean_total;
  r.quality = score_predictions(timed.result.predictions, truth);
  return r;
}

}  // namespace hublink::bench
