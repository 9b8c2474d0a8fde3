// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "hublink/bench.hpp"
#include "hublink/evaluation.hpp"
#include "hublink/generators.hpp"
#include "hublink/predict.hpp"
#include "hublink/score_table.hpp"
#include "hublink/topk.hpp"

using namespace hublink;
using clock_type = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& check) {
  auto t0 = clock_type::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s criterion %d: %s [%s] (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

PredictConfig config(Metric m, std::size_t n_p, HubLimit h, std::size_t workers = 1,
                     TieBreak tb = TieBreak::Deterministic) {
  PredictConfig c;
  c.metric = m;
  c.max_predictions = n_p;
  c.hub_limit = h;
  c.workers = workers;
  c.tie_break = tb;
  return c;
}

std::size_t hardware_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// Seeded Erdos-Renyi corpus: N in [8, 64], density in [0.05, 0.3].
std::vector<Graph> er_corpus(std::size_t count) {
  std::mt19937_64 rng(20240501);
  std::vector<Graph> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t n = 8 + rng() % 57;
    double density = 0.05 + 0.25 * double(rng() % 10001) / 10000;
    auto pairs = double(n * (n - 1) / 2);
    auto m = std::max<std::size_t>(1, std::size_t(std::llround(density * pairs)));
    out.push_back(generate_erdos_renyi(n, m, rng()));
  }
  return out;
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

std::vector<Prediction> by_edge(std::vector<Prediction> ps) {
  std::sort(ps.begin(), ps.end(), [](auto& a, auto& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  return ps;
}

Outcome oracle_equivalence(const std::vector<Graph>& corpus) {
  auto t0 = clock_type::now();
  std::size_t comparisons = 0, predictions = 0;
  for (std::size_t gi = 0; gi < corpus.size(); ++gi) {
    const auto& g = corpus[gi];
    const std::size_t all = g.vertex_count() * g.vertex_count();
    for (Metric m : all_metrics) {
      auto got = by_edge(predict_links(g, config(m, all, HubLimit::unlimited())).predictions);
      auto ref = by_edge(brute_force_predict(g, m, all));
      ++comparisons;
      if (got.size() != ref.size())
        return {false, "graph " + std::to_string(gi) + " " + std::string(metric_name(m)) + ": " +
                           std::to_string(got.size()) + " vs " + std::to_string(ref.size()) + " predictions"};
      for (std::size_t i = 0; i < got.size(); ++i) {
        if (got[i].u != ref[i].u || got[i].v != ref[i].v || !rel_close(got[i].score, ref[i].score, 1e-6))
          return {false, "graph " + std::to_string(gi) + " " + std::string(metric_name(m)) + ": mismatch at (" +
                             std::to_string(got[i].u) + "," + std::to_string(got[i].v) + ")"};
      }
      predictions += got.size();
    }
  }
  double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
  std::string detail = std::to_string(corpus.size()) + " graphs x 9 metrics, " + std::to_string(predictions) +
                       " predictions matched, " + fmt("%.2f s (limit 30 s)", secs);
  return {comparisons == corpus.size() * 9 && secs < 30, detail};
}

Outcome degeneration(const std::vector<Graph>& corpus) {
  std::size_t runs = 0;
  for (std::size_t gi = 0; gi < corpus.size(); ++gi) {
    const auto& g = corpus[gi];
    const std::size_t all = g.vertex_count() * g.vertex_count();
    auto at_max = HubLimit::of(std::max<std::size_t>(1, g.max_degree()));
    for (Metric m : all_metrics) {
      auto inf = predict_links(g, config(m, all, HubLimit::unlimited())).predictions;
      auto lim = predict_links(g, config(m, all, at_max)).predictions;
      if (inf != lim) return {false, "graph " + std::to_string(gi) + " " + std::string(metric_name(m)) + " differs"};
      ++runs;
    }
  }
  return {true, std::to_string(runs) + " runs identical"};
}

Outcome hub_filtering() {
  auto g = build_graph(EdgeList{{{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}}, std::nullopt});
  auto a = predict_links(g, config(Metric::CN, 1, HubLimit::of(2))).predictions;
  auto b = predict_links(g, config(Metric::CN, 2, HubLimit::unlimited())).predictions;
  bool ok_a = a == std::vector<Prediction>{{3, 5, 1}};
  bool ok_b = b == std::vector<Prediction>{{0, 3, 2}, {1, 4, 1}};
  std::string d = "L_H=2 -> ";
  for (auto& p : a) d += "(" + std::to_string(p.u) + "," + std::to_string(p.v) + "," + bench::format_real(p.score) + ")";
  d += "; L_H=inf -> ";
  for (auto& p : b) d += "(" + std::to_string(p.u) + "," + std::to_string(p.v) + "," + bench::format_real(p.score) + ")";
  return {ok_a && ok_b, d};
}

Outcome worker_independence() {
  auto g = generate_preferential_attachment(50000, 500000, 77);
  std::string d;
  for (Metric m : {Metric::CN, Metric::RA, Metric::JC}) {
    auto base = predict_links(g, config(m, 5000, HubLimit::unlimited(), 1)).predictions;
    for (std::size_t w : {2, 4, 8}) {
      auto other = predict_links(g, config(m, 5000, HubLimit::unlimited(), w)).predictions;
      if (other != base) return {false, std::string(metric_name(m)) + " differs at " + std::to_string(w) + " workers"};
    }
    d += std::string(metric_name(m)) + ":" + bench::format_digest(bench::digest(base)) + " ";
  }
  return {true, "50000 vertices, " + std::to_string(g.edge_count()) + " edges, workers 1/2/4/8 identical; " + d};
}

Outcome quality_identities() {
  auto q = make_quality_report(5, 10, 20);
  bool fixture = q.precision == 0.5 && q.recall == 0.25 && std::abs(q.f1 - 1.0 / 3) <= 1e-15;

  // |P| = |E^U| on real runs.
  std::size_t runs = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto g = generate_small_world(2000, 10000, 0.1, seed);
    auto split = split_edges(g, 500, seed);
    auto r = bench::evaluate_split(split, split.unobserved_set(), config(Metric::CN, 1, HubLimit::unlimited()), 0.05);
    if (r.quality->predicted != r.quality->ground_truth) continue;
    ++runs;
    if (r.quality->precision != r.quality->recall) return {false, "precision != recall on seed " + std::to_string(seed)};
  }
  return {fixture && runs > 0, fmt("fixture f1 = %.17g; precision == recall on %.0f runs with |P| = |E^U|", q.f1,
                                   double(runs))};
}

Outcome signal_over_random() {
  auto g = generate_small_world(10000, 50000, 0.05, 6);
  auto split = split_edges(g, bench::removal_count(g.edge_count(), 0.1), 6);
  auto cfg = config(Metric::CN, 1, HubLimit::for_metric(Metric::CN), hardware_workers());
  auto r = bench::evaluate_split(split, split.unobserved_set(), cfg, 0.1);
  double baseline = random_guess_precision(g.vertex_count(), split.observed.edge_count(), split.unobserved.size());
  double ratio = r.quality->precision / baseline;
  return {ratio >= 10, fmt("precision %.4f, random %.3g, ratio %.0fx (need 10x)", r.quality->precision, baseline, ratio)};
}

struct BigGraph {
  Graph g;
  EvalSplit split;
  EdgeSet truth;
};

BigGraph& big_graph() {
  static BigGraph b = [] {
    BigGraph x;
    x.g = generate_preferential_attachment(200000, 2000000, 8);
    x.split = split_edges(x.g, bench::removal_count(x.g.edge_count(), 0.01), 8);
    x.truth = x.split.unobserved_set();
    return x;
  }();
  return b;
}

Outcome dlh_speed_trend() {
  auto& b = big_graph();
  auto w = hardware_workers();
  auto inf = bench::evaluate_split(b.split, b.truth, config(Metric::CN, 1, HubLimit::unlimited(), w), 0.01, 3);
  auto lim = bench::evaluate_split(b.split, b.truth, config(Metric::CN, 1, HubLimit::of(32), w), 0.01, 3);
  double t_inf = double(inf.scoring_time.count()), t_lim = double(lim.scoring_time.count());
  double speedup = t_lim > 0 ? t_inf / t_lim : INFINITY;
  double f1_ratio = inf.quality->f1 > 0 ? lim.quality->f1 / inf.quality->f1 : 0;
  return {speedup >= 3 && f1_ratio >= 0.5,
          fmt("scoring %.1f ms (L_H=32) vs %.1f ms (inf), speedup %.1fx (need 3x); F1 ratio %.4f (need 0.5)",
              t_lim / 1000, t_inf / 1000, speedup, f1_ratio)};
}

Outcome phase_split() {
  auto& b = big_graph();
  auto dir = std::filesystem::temp_directory_path() / ("hublink_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto path = (dir / "pa.txt").string();
  {
    std::ofstream f(path);
    serialize(b.g, f);
  }
  std::string d;
  bool ok = true;
  for (std::string hub : {"auto", "inf"}) {
    std::ostringstream out, err;
    int code = cli::run({"evaluate", "--graph", path, "--metric", "cn", "--remove-frac", "0.01", "--seed", "8",
                         "--threads", "8", "--hub-limit", hub},
                        out, err);
    if (code != 0) {
      ok = false;
      d += hub + ": exit " + std::to_string(code) + " " + err.str();
      continue;
    }
    std::istringstream rec_in(err.str());
    auto rec = bench::parse_run_records(rec_in).at(0);
    double s = double(rec.scoring_time.count()), m = double(rec.merging_time.count()), t = double(rec.total_time.count());
    bool bound = s + m <= t * 1.05;
    bool dominant = s > m;
    ok = ok && bound && dominant;
    d += "L_H=" + hub + fmt(": scoring %.1f ms, merging %.1f ms, total %.1f ms; ", s / 1000, m / 1000, t / 1000);
  }
  std::filesystem::remove_all(dir);
  return {ok, d};
}

Outcome accumulator() {
  std::mt19937_64 rng(909);
  const std::size_t n = 256;
  ScoreTable t(n);
  std::map<vertex_t, double> ref;
  std::size_t drains = 0;
  for (int op = 0; op < 100000; ++op) {
    auto r = rng() % 100;
    vertex_t c = vertex_t(rng() % n);
    if (r < 75) {
      double d = double(1 + rng() % 9);
      t.accumulate(c, d);
      ref[c] += d;
    } else if (r < 95) {
      t.erase(c);
      ref.erase(c);
    } else {
      auto got = t.drain();
      std::map<vertex_t, double> got_map(got.begin(), got.end());
      if (got_map.size() != got.size() || got_map != ref) return {false, "drain mismatch at op " + std::to_string(op)};
      for (vertex_t v = 0; v < n; ++v)
        if (t.at(v) != 0) return {false, "table not reset at op " + std::to_string(op)};
      ref.clear();
      ++drains;
    }
  }
  return {true, "100000 operations, " + std::to_string(drains) + " drains exact"};
}

Outcome merge_correctness() {
  std::mt19937_64 rng(1010);
  for (int trial = 0; trial < 10000; ++trial) {
    std::size_t cap = 1 + rng() % 16, workers = 1 + rng() % 8, n_p = 1 + rng() % 40;
    auto tb = trial % 2 ? TieBreak::Deterministic : TieBreak::Fast;
    std::vector<PredictionList> lists;
    std::vector<score_t> pooled;
    vertex_t next = 0;
    for (std::size_t w = 0; w < workers; ++w) {
      PredictionList l(cap, tb);
      std::size_t count = rng() % 40;
      for (std::size_t i = 0; i < count; ++i, ++next) l.offer({next, next + 1, score_t(rng() % 10)});
      for (auto& p : l.items()) pooled.push_back(p.score);
      lists.push_back(std::move(l));
    }
    std::sort(pooled.begin(), pooled.end(), std::greater<>());
    pooled.resize(std::min(pooled.size(), n_p));
    auto out = merge(lists, n_p, tb);
    std::vector<score_t> got;
    for (auto& p : out) got.push_back(p.score);
    if (got != pooled) return {false, "trial " + std::to_string(trial) + " differs"};
  }
  return {true, "10000 trials, score multisets equal"};
}

}  // namespace

int main() {
  auto corpus = er_corpus(120);
  report(1, "oracle equivalence", [&] { return oracle_equivalence(corpus); });
  report(2, "hub limit at max degree equals unlimited", [&] { return degeneration(corpus); });
  report(3, "hub filtering on the fixture graph", hub_filtering);
  report(4, "worker independence", worker_independence);
  report(5, "quality identities", quality_identities);
  report(6, "signal over random", signal_over_random);
  report(7, "hub limit speed trend", dlh_speed_trend);
  report(8, "phase-split timings", phase_split);
  report(9, "accumulator vs reference map", accumulator);
  report(10, "merge vs full sort", merge_correctness);
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
