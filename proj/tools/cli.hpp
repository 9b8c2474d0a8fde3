#pragma once

// Command-line front end: predict, evaluate, sweep, scale, gen.
// Exit codes: 0 success, 2 usage/argument error, 1 runtime failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hublink/bench.hpp"
#include "hublink/evaluation.hpp"
#include "hublink/generators.hpp"
#include "hublink/graph.hpp"
#include "hublink/metrics.hpp"
#include "hublink/predict.hpp"

namespace hublink::cli {

/// Bad flags or arguments; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::size_t default_threads() {
  if (const char* env = std::getenv("HUBLINK_THREADS")) {
    std::size_t t;
    if (!hublink::detail::parse_number(std::string_view(env), t) || t < 1)
      throw UsageError("HUBLINK_THREADS must be a positive integer");
    return t;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

inline Graph load_graph(const std::string& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open graph file \"" + path + "\"");
  bool mtx = format == "mtx" || (format.empty() && ends_with(path, ".mtx"));
  if (!format.empty() && format != "mtx" && format != "edgelist")
    throw UsageError("unknown format \"" + format + "\" (expected edgelist or mtx)");
  return build_graph(mtx ? load_matrix_market(in) : load_edge_list(in));
}

inline Metric require_metric(const std::string& name) {
  auto m = parse_metric(name);
  if (!m) throw UsageError("unknown metric \"" + name + "\" (expected one of cn, jc, si, sc, hp, hd, lhn, aa, ra)");
  return *m;
}

inline bench::HubLimitSpec require_hub_limit(const std::string& tok) {
  try {
    return bench::HubLimitSpec::parse(tok);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline void print_timings(std::ostream& err, const PredictStats& s, bench::Micros total) {
  err << "scoring_ms=" << bench::format_ms(bench::to_micros(s.scoring_time))
      << " merging_ms=" << bench::format_ms(bench::to_micros(s.merging_time))
      << " total_ms=" << bench::format_ms(total) << " candidates=" << s.candidates << '\n';
}

/// Options shared by the evaluation-style commands.
struct EvalOptions {
  std::string graph, format, hub_limit = "auto";
  std::uint64_t seed = 1;
  std::size_t threads = 0, repeat = 1;
  double threshold = 0;
  bool deterministic = false;

  void add_to(CLI::App& app) {
    app.add_option("--graph", graph, "Graph file (edge list or MatrixMarket)")->required();
    app.add_option("--format", format, "edgelist or mtx (default: by extension)");
    app.add_option("--seed", seed, "Seed for the random edge split");
    app.add_option("--threads", threads, "Worker threads (default: $HUBLINK_THREADS or all cores)");
    app.add_option("--threshold", threshold, "Predict only scores strictly above this");
    app.add_option("--repeat", repeat, "Report the minimum (and mean) over R runs");
    app.add_flag("--deterministic", deterministic, "Break score ties by (u, v)");
  }

  PredictConfig config(Metric m, HubLimit h) const {
    PredictConfig cfg;
    cfg.metric = m;
    cfg.hub_limit = h;
    cfg.score_threshold = threshold;
    cfg.workers = threads;
    cfg.tie_break = deterministic ? TieBreak::Deterministic : TieBreak::Fast;
    return cfg;
  }

  void finish(bool threads_given) {
    if (!threads_given) threads = default_threads();
    if (threads < 1) throw UsageError("threads must be >= 1");
    if (repeat < 1) throw UsageError("repeat must be >= 1");
  }
};

inline double require_fraction(double f) {
  if (!(f > 0 && f <= 1)) throw UsageError("remove fraction must be in (0, 1]");
  return f;
}

inline std::size_t require_removal(const Graph& g, double frac) {
  std::size_t k = bench::removal_count(g.edge_count(), require_fraction(frac));
  if (k == 0) throw UsageError("removal fraction selects no edges on this graph");
  return k;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neighborhood-based link prediction with hub limits", "hublink"};
  app.require_subcommand(1);

  // predict
  auto* predict = app.add_subcommand("predict", "Predict the top-K links of a graph (TSV on stdout)");
  std::string p_graph, p_format, p_metric, p_hub = "inf";
  long long p_top = 0;
  double p_threshold = 0;
  std::size_t p_threads = 0;
  bool p_det = false;
  predict->add_option("--graph", p_graph, "Graph file")->required();
  predict->add_option("--metric", p_metric, "cn|jc|si|sc|hp|hd|lhn|aa|ra")->required();
  predict->add_option("--top", p_top, "Number of links to predict")->required();
  predict->add_option("--hub-limit", p_hub, "N, inf or auto (default inf)");
  predict->add_option("--threshold", p_threshold, "Predict only scores strictly above this");
  auto* p_threads_opt = predict->add_option("--threads", p_threads, "Worker threads");
  predict->add_flag("--deterministic", p_det, "Break score ties by (u, v)");
  predict->add_option("--format", p_format, "edgelist or mtx (default: by extension)");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Split, predict |removed| links, and score them (CSV)");
  EvalOptions e_opts;
  std::string e_metric, e_record;
  double e_frac = 0;
  e_opts.add_to(*evaluate);
  auto* e_threads_opt = evaluate->get_option("--threads");
  evaluate->add_option("--metric", e_metric, "Similarity metric")->required();
  evaluate->add_option("--remove-frac", e_frac, "Fraction of edges to hide, in (0, 1]")->required();
  evaluate->add_option("--hub-limit", e_opts.hub_limit, "N, inf or auto (default auto)");
  evaluate->add_option("--record", e_record, "Also write the timing record CSV to this file");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Evaluate metrics x hub limits x removal fractions (CSV)");
  EvalOptions s_opts;
  std::string s_metrics = "cn", s_hubs = "2..1024x2,inf", s_fracs = "0.1";
  s_opts.add_to(*sweep);
  auto* s_threads_opt = sweep->get_option("--threads");
  sweep->add_option("--metrics", s_metrics, "Comma-separated metrics");
  sweep->add_option("--hub-limits", s_hubs, "Comma-separated N, inf, auto or LO..HIxF ranges");
  sweep->add_option("--remove-frac", s_fracs, "Comma-separated removal fractions");

  // scale
  auto* scale = app.add_subcommand("scale", "Strong scaling over thread counts (CSV)");
  EvalOptions c_opts;
  std::string c_metric, c_threads_list = "1,2,4,8,16,32";
  double c_frac = 0.1;
  c_opts.add_to(*scale);
  scale->add_option("--metric", c_metric, "Similarity metric")->required();
  scale->add_option("--threads-list", c_threads_list, "Comma-separated thread counts");
  scale->add_option("--remove-frac", c_frac, "Fraction of edges to hide, in (0, 1]");
  scale->add_option("--hub-limit", c_opts.hub_limit, "N, inf or auto (default auto)");

  // gen
  auto* gen = app.add_subcommand("gen", "Write a seeded synthetic graph");
  std::string g_model, g_out, g_format;
  std::size_t g_n = 0, g_m = 0;
  std::uint64_t g_seed = 1;
  double g_rewire = 0.05;
  gen->add_option("--model", g_model, "er, ba or ws")->required();
  gen->add_option("--n", g_n, "Vertex count")->required();
  gen->add_option("--m", g_m, "Edge count")->required();
  gen->add_option("--seed", g_seed, "Generator seed");
  gen->add_option("--rewire", g_rewire, "Rewiring probability for ws (default 0.05)");
  gen->add_option("--out", g_out, "Output path")->required();
  gen->add_option("--format", g_format, "edgelist or mtx (default: by extension)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (predict->parsed()) {
      Metric m = require_metric(p_metric);
      if (p_top < 1) throw UsageError("top must be >= 1");
      if (p_threads_opt->count() == 0) p_threads = default_threads();
      if (p_threads < 1) throw UsageError("threads must be >= 1");
      auto hub = require_hub_limit(p_hub);
      Graph g = load_graph(p_graph, p_format);
      PredictConfig cfg;
      cfg.metric = m;
      cfg.max_predictions = std::size_t(p_top);
      cfg.score_threshold = p_threshold;
      cfg.hub_limit = hub.resolve(m);
      cfg.workers = p_threads;
      cfg.tie_break = p_det ? TieBreak::Deterministic : TieBreak::Fast;
      auto timed = bench::timed_predict(g, cfg);
      for (const auto& p : timed.result.predictions)
        out << p.u << '\t' << p.v << '\t' << bench::format_real(p.score) << '\n';
      print_timings(err, timed.result.stats, timed.total);
      return 0;
    }

    if (evaluate->parsed()) {
      Metric m = require_metric(e_metric);
      require_fraction(e_frac);
      e_opts.finish(e_threads_opt->count() > 0);
      auto hub = require_hub_limit(e_opts.hub_limit);
      Graph g = load_graph(e_opts.graph, e_opts.format);
      auto split = split_edges(g, require_removal(g, e_frac), e_opts.seed);
      auto truth = split.unobserved_set();
      auto rec = bench::evaluate_split(split, truth, e_opts.config(m, hub.resolve(m)), e_frac, e_opts.repeat);
      rec.graph = e_opts.graph;
      out << bench::quality_header << '\n' << bench::quality_csv_row(e_opts.graph, m, rec.hub_limit, *rec.quality) << '\n';
      err << bench::run_record_header << '\n' << bench::to_csv_row(rec) << '\n';
      if (!e_record.empty()) {
        std::ofstream f(e_record);
        if (!f) throw std::runtime_error("cannot write \"" + e_record + "\"");
        f << bench::run_record_header << '\n' << bench::to_csv_row(rec) << '\n';
      }
      return 0;
    }

    if (sweep->parsed()) {
      s_opts.finish(s_threads_opt->count() > 0);
      std::vector<Metric> metrics;
      for (const auto& name : bench::split_list(s_metrics)) {
        Metric m = require_metric(name);
        if (std::find(metrics.begin(), metrics.end(), m) == metrics.end()) metrics.push_back(m);
      }
      std::vector<bench::HubLimitSpec> hubs;
      try {
        hubs = bench::parse_hub_limits(s_hubs);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      std::vector<double> fracs;
      for (const auto& tok : bench::split_list(s_fracs)) {
        double f;
        if (!hublink::detail::parse_number(std::string_view(tok), f)) throw UsageError("bad fraction \"" + tok + "\"");
        fracs.push_back(require_fraction(f));
      }
      if (metrics.empty() || hubs.empty() || fracs.empty()) throw UsageError("empty sweep grid");

      Graph g = load_graph(s_opts.graph, s_opts.format);
      out << bench::run_record_header << '\n';
      for (double frac : fracs) {
        auto split = split_edges(g, require_removal(g, frac), s_opts.seed);
        auto truth = split.unobserved_set();
        for (Metric m : metrics)
          for (const auto& h : hubs) {
            auto rec = bench::evaluate_split(split, truth, s_opts.config(m, h.resolve(m)), frac, s_opts.repeat);
            rec.graph = s_opts.graph;
            out << bench::to_csv_row(rec) << '\n';
          }
      }
      return 0;
    }

    if (scale->parsed()) {
      Metric m = require_metric(c_metric);
      require_fraction(c_frac);
      c_opts.finish(scale->get_option("--threads")->count() > 0);
      std::vector<std::size_t> counts;
      for (const auto& tok : bench::split_list(c_threads_list)) {
        std::size_t t;
        if (!hublink::detail::parse_number(std::string_view(tok), t) || t < 1)
          throw UsageError("thread counts must be integers >= 1, got \"" + tok + "\"");
        counts.push_back(t);
      }
      if (counts.empty()) throw UsageError("empty thread list");
      auto hub = require_hub_limit(c_opts.hub_limit);

      Graph g = load_graph(c_opts.graph, c_opts.format);
      auto split = split_edges(g, require_removal(g, c_frac), c_opts.seed);
      auto truth = split.unobserved_set();
      std::vector<bench::RunRecord> rows;
      for (std::size_t t : counts) {
        auto cfg = c_opts.config(m, hub.resolve(m));
        cfg.workers = t;
        auto rec = bench::evaluate_split(split, truth, cfg, c_frac, c_opts.repeat);
        rec.graph = c_opts.graph;
        rows.push_back(std::move(rec));
      }
      // Speedups are relative to the smallest thread count in the list.
      auto base = std::min_element(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.threads < b.threads; });
      out << bench::run_record_header << ",speedup\n";
      for (const auto& r : rows) {
        double speedup = r.total_time.count() > 0 ? double(base->total_time.count()) / double(r.total_time.count()) : 1.0;
        if (&r == &*base || r.threads == base->threads) speedup = 1.0;
        out << bench::to_csv_row(r) << ',' << bench::format_real(speedup) << '\n';
      }
      return 0;
    }

    if (gen->parsed()) {
      Graph g;
      if (g_model == "er") g = generate_erdos_renyi(g_n, g_m, g_seed);
      else if (g_model == "ba") g = generate_preferential_attachment(g_n, g_m, g_seed);
      else if (g_model == "ws") g = generate_small_world(g_n, g_m, g_rewire, g_seed);
      else throw UsageError("unknown model \"" + g_model + "\" (expected er, ba or ws)");
      if (!g_format.empty() && g_format != "mtx" && g_format != "edgelist")
        throw UsageError("unknown format \"" + g_format + "\"");
      std::ofstream f(g_out);
      if (!f) throw std::runtime_error("cannot write \"" + g_out + "\"");
      if (g_format == "mtx" || (g_format.empty() && ends_with(g_out, ".mtx"))) serialize_matrix_market(g, f);
      else serialize(g, f);
      if (!f) throw std::runtime_error("write to \"" + g_out + "\" failed");
      err << "wrote " << g.vertex_count() << " vertices, " << g.edge_count() << " edges to " << g_out << '\n';
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"hublink"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(int(argv.size()), argv.data(), out, err);
}

}  // namespace hublink::cli
