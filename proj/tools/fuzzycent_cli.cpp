// Batch front end for the fuzzy centrality toolkit.
//
// Exit codes: 0 success, 2 input parse error, 3 configuration error,
// 4 runtime failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fuzzycent/centrality.hpp"
#include "fuzzycent/csv.hpp"
#include "fuzzycent/diffusion.hpp"
#include "fuzzycent/evaluation.hpp"
#include "fuzzycent/experiment.hpp"
#include "fuzzycent/graph.hpp"
#include "fuzzycent/svg.hpp"

namespace fs = std::filesystem;
using namespace fuzzycent;

namespace {

enum ExitCode : int { kOk = 0, kParseError = 2, kConfigError = 3, kRuntimeError = 4 };

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::optional<double> beta;
  std::size_t runs = 1000;
  unsigned threads = 0;
  std::string out_dir;
  std::string format = "csv";
};

std::mutex console_mutex;

void note(const std::string& msg) {
  std::lock_guard lock(console_mutex);
  std::cerr << msg << '\n';
}

OutputFormat output_format(const GlobalOptions& g) {
  return g.format == "svg" ? OutputFormat::Svg : OutputFormat::Csv;
}

// Writes to `path`, or stdout when empty.
template <typename Fn>
void emit(const std::string& path, Fn&& body) {
  if (path.empty()) {
    body(std::cout);
    std::cout.flush();
    return;
  }
  if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  body(out);
  if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

SirParams sir_params(const GlobalOptions& g, const FuzzyGraph& graph) {
  SirParams p;
  p.beta = g.beta ? *g.beta : default_beta(graph);
  p.runs = g.runs;
  p.master_seed = g.seed.value_or(0);
  return p;
}

std::vector<SpreadEstimate> spreads_for(const GlobalOptions& g, const FuzzyGraph& graph) {
  const SirParams params = sir_params(g, graph);
  if (const char* dir = std::getenv("FUZZYCENT_CACHE_DIR"); dir && *dir) {
    SpreadCache cache(dir);
    if (auto hit = cache.load(graph, params)) {
      note("spread cache hit in " + cache.directory());
      return *hit;
    }
    auto table = spread_table(graph, params, g.threads);
    cache.store(graph, params, table);
    return table;
  }
  return spread_table(graph, params, g.threads);
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> out;
  for (const auto& n : names) out.push_back(parse_method(n));
  return out;
}

void require_csv(const GlobalOptions& g, const std::string& command) {
  if (g.format != "csv") throw std::invalid_argument(command + " only supports --format csv");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy-graph influence analysis: centrality, SIR spreading, robustness and imprecision"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Fuzzification seed (fuzzify) or SIR master seed (other commands)");
  app.add_option("--beta", g.beta, "SIR infection rate; default uses the degree-moment heuristic")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--runs", g.runs, "Monte Carlo runs per node")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Worker threads, 0 = all cores");
  app.add_option("--out-dir", g.out_dir, "Output directory");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "svg"}));

  std::string path;
  std::string out;
  std::string method_name_arg;
  std::string nfrh_mode = "nfdc";

  auto* stats = app.add_subcommand("stats", "Print structural statistics of a network");
  stats->add_option("path", path, "Edge list")->required();

  auto* fuzz = app.add_subcommand("fuzzify", "Assign U(0,1) edge weights");
  fuzz->add_option("path", path, "Edge list")->required();
  fuzz->add_option("--out", out, "Output file (default: <stem>W<ext>)");

  auto* rank_cmd = app.add_subcommand("rank", "Rank nodes with one centrality measure");
  rank_cmd->add_option("path", path, "Edge list")->required();
  rank_cmd->add_option("--method", method_name_arg, "fd, frd, frh, nfdc or nfrh")->required();
  rank_cmd->add_option("--nfrh-mode", nfrh_mode, "Neighbor score for NFRH")->check(CLI::IsMember({"nfdc", "fd"}));
  rank_cmd->add_option("--out", out, "Output CSV (default: stdout)");

  auto* spread = app.add_subcommand("spread", "Weighted SIR spreading capability of every node");
  spread->add_option("path", path, "Edge list")->required();
  spread->add_option("--out", out, "Output CSV (default: stdout); writes <out>.meta.json alongside");

  auto* robust = app.add_subcommand("robustness", "LCC decay under ranked node removal");
  robust->add_option("path", path, "Edge list")->required();
  robust->add_option("--method", method_name_arg, "Ranking method")->required();
  robust->add_option("--out", out, "Output file (default: stdout)");

  std::vector<double> p_values;
  auto* impr = app.add_subcommand("imprecision", "Imprecision of a ranking against SIR spreading");
  impr->add_option("path", path, "Edge list")->required();
  impr->add_option("--method", method_name_arg, "Ranking method")->required();
  impr->add_option("--p", p_values, "Top fractions (default 0.02..0.20)")->delimiter(',');
  impr->add_option("--out", out, "Output file (default: stdout)");

  std::vector<std::string> method_names;
  std::size_t reps = 5;
  auto* bench = app.add_subcommand("bench", "Time the full ranking of each method");
  bench->add_option("path", path, "Edge list")->required();
  bench->add_option("--methods", method_names, "Methods (default: all)")->delimiter(',');
  bench->add_option("--reps", reps, "Timed repetitions (>= 3)");
  bench->add_option("--out", out, "Output file (default: stdout)");

  ExperimentConfig exp;
  std::vector<std::string> exp_methods;
  std::vector<double> exp_grid;
  bool no_bench = false;
  auto* experiment = app.add_subcommand("experiment", "Run the full evaluation pipeline");
  experiment->add_option("path", exp.network_path, "Edge list (crisp or weighted)")->required();
  experiment->add_option("--seeds", exp.seeds, "Fuzzification seeds")->delimiter(',');
  experiment->add_option("--methods", exp_methods, "Methods (default: all)")->delimiter(',');
  experiment->add_option("--p-grid", exp_grid, "Imprecision top fractions")->delimiter(',');
  experiment->add_option("--reps", exp.bench_repetitions, "Benchmark repetitions");
  experiment->add_option("--name", exp.network_name, "Network name used in outputs");
  experiment->add_option("--cache-dir", exp.cache_dir, "Spread cache directory (else $FUZZYCENT_CACHE_DIR)");
  experiment->add_option("--nfrh-mode", nfrh_mode, "Neighbor score for NFRH")->check(CLI::IsMember({"nfdc", "fd"}));
  experiment->add_flag("--no-bench", no_bench, "Skip runtime benchmarking");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  const ParseOptions parse_options;
  try {
    if (stats->parsed()) {
      require_csv(g, "stats");
      const auto graph = load_edge_list(path, parse_options);
      const auto s = graph_stats(graph);
      std::printf("%-16s %8s %8s %8s %8s %8s %8s\n", "network", "n", "m", "<k>", "<d>", "C", "r");
      std::printf("%-16s %8zu %8zu %8.3f %8.3f %8.3f %8.3f\n", fs::path(path).stem().string().c_str(), s.n, s.m,
                  s.avg_degree, s.avg_distance, s.clustering, s.assortativity);
    } else if (fuzz->parsed()) {
      require_csv(g, "fuzzify");
      const auto graph = load_edge_list(path, parse_options);
      const std::uint64_t seed = g.seed.value_or(1);
      if (out.empty()) {
        const fs::path in(path);
        const fs::path dir = g.out_dir.empty() ? in.parent_path() : fs::path(g.out_dir);
        out = (dir / (in.stem().string() + "W" + in.extension().string())).string();
      }
      save_edge_list(fuzzify(graph, seed), out);
      note("wrote " + out + " (seed " + std::to_string(seed) + ", " + std::to_string(graph.edge_count()) + " edges)");
    } else if (rank_cmd->parsed()) {
      require_csv(g, "rank");
      const Method m = parse_method(method_name_arg);
      const auto graph = load_edge_list(path, parse_options);
      RankOptions opts{nfrh_mode == "fd" ? NfrhMode::NeighborFD : NfrhMode::NeighborNFDC, g.threads};
      const auto ranking = rank(graph, m, opts);
      if (is_reconstructed_baseline(m)) note("note: " + method_display_name(m));
      emit(out, [&](std::ostream& o) { write_ranking_csv(o, graph, ranking); });
    } else if (spread->parsed()) {
      require_csv(g, "spread");
      const auto graph = load_edge_list(path, parse_options);
      const auto params = sir_params(g, graph);
      const auto table = spreads_for(g, graph);
      emit(out, [&](std::ostream& o) { write_spread_csv(o, table); });
      if (!out.empty()) {
        emit(out + ".meta.json", [&](std::ostream& o) { o << metadata_json(spread_metadata(graph, params)); });
      }
    } else if (robust->parsed()) {
      const Method m = parse_method(method_name_arg);
      const auto graph = load_edge_list(path, parse_options);
      const auto curve = robustness(graph, rank(graph, m, {NfrhMode::NeighborNFDC, g.threads}));
      note(method_display_name(m) + " R=" + csv::num(curve.r_value));
      emit(out, [&](std::ostream& o) {
        if (output_format(g) == OutputFormat::Svg) {
          svg::Series s{method_display_name(m), {}, curve.lcc_fractions};
          for (std::size_t i = 0; i < curve.lcc_fractions.size(); ++i) s.x.push_back(static_cast<double>(i + 1));
          o << svg::line_chart("Robustness", "nodes removed", "LCC fraction", {s});
        } else {
          write_robustness_csv(o, curve);
        }
      });
    } else if (impr->parsed()) {
      const Method m = parse_method(method_name_arg);
      const auto graph = load_edge_list(path, parse_options);
      if (p_values.empty()) p_values = p_grid();
      for (double p : p_values) {
        if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p values must lie in (0,1]");
      }
      const auto ranking = rank(graph, m, {NfrhMode::NeighborNFDC, g.threads});
      const auto table = spreads_for(g, graph);
      std::vector<ImprecisionPoint> points;
      for (double p : p_values) points.push_back(imprecision(ranking, table, p));
      emit(out, [&](std::ostream& o) {
        if (output_format(g) == OutputFormat::Svg) {
          svg::Series s{method_display_name(m), {}, {}};
          std::vector<std::string> labels;
          for (const auto& pt : points) {
            s.y.push_back(pt.e_value);
            labels.push_back(csv::num(pt.p));
          }
          o << svg::bar_chart("Imprecision", "E(p)", labels, {s});
        } else {
          write_imprecision_csv(o, points);
        }
      });
    } else if (bench->parsed()) {
      const auto graph = load_edge_list(path, parse_options);
      std::vector<Method> methods = method_names.empty() ? std::vector<Method>(kAllMethods.begin(), kAllMethods.end())
                                                         : parse_methods(method_names);
      if (reps < 3) throw std::invalid_argument("--reps must be >= 3");
      const auto records = runtime_bench(graph, methods, fs::path(path).stem().string(), {reps, 2e-3});
      emit(out, [&](std::ostream& o) {
        if (output_format(g) == OutputFormat::Svg) {
          svg::Series s{"median seconds", {}, {}};
          std::vector<std::string> labels;
          for (const auto& r : records) {
            s.y.push_back(r.median_seconds);
            labels.emplace_back(method_name(r.method));
          }
          o << svg::bar_chart("Runtime", "seconds per ranking", labels, {s});
        } else {
          write_bench_csv(o, records);
        }
      });
    } else if (experiment->parsed()) {
      if (!exp_methods.empty()) exp.methods = parse_methods(exp_methods);
      if (!exp_grid.empty()) exp.p_grid = exp_grid;
      exp.beta = g.beta;
      exp.runs = g.runs;
      exp.sir_seed = g.seed.value_or(0);
      exp.threads = g.threads;
      exp.out_dir = g.out_dir.empty() ? "results" : g.out_dir;
      exp.format = output_format(g);
      exp.run_bench = !no_bench;
      exp.nfrh_mode = nfrh_mode == "fd" ? NfrhMode::NeighborFD : NfrhMode::NeighborNFDC;
      const auto result = run_experiment(exp, note);
      for (const auto& [m, s] : result.methods) {
        note(method_display_name(m) + ": R=" + csv::num(s.r_mean) + " mean E=" + csv::num(s.mean_imprecision));
      }
      note("wrote " + std::to_string(result.files.size()) + " files to " + exp.out_dir);
    }
  } catch (const ParseError& e) {
    note(std::string("parse error: ") + e.what());
    return kParseError;
  } catch (const StageError& e) {
    note(std::string("error in stage ") + e.what());
    return e.stage() == "load" ? kParseError : kRuntimeError;
  } catch (const ConfigError& e) {
    note(std::string("config error: ") + e.what());
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    note(std::string("invalid argument: ") + e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    note(std::string("error: ") + e.what());
    return kRuntimeError;
  }
  return kOk;
}
