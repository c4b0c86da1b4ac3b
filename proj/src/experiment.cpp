#include "fuzzycent/experiment.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fuzzycent/csv.hpp"
#include "fuzzycent/diffusion.hpp"
#include "fuzzycent/graph.hpp"
#include "fuzzycent/svg.hpp"

namespace fuzzycent {

namespace fs = std::filesystem;

void ExperimentConfig::validate() const {
  if (network_path.empty()) throw ConfigError("network path is required");
  if (seeds.empty()) throw ConfigError("at least one fuzzification seed is required");
  if (methods.empty()) throw ConfigError("at least one method is required");
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (beta && !(*beta >= 0.0)) throw ConfigError("beta must be >= 0");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in (0,1]");
  if (p_grid.empty()) throw ConfigError("p grid is empty");
  for (double p : p_grid) {
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("p grid values must lie in (0,1]");
  }
  if (run_bench && bench_repetitions < 3) throw ConfigError("benchmark repetitions must be >= 3");
  if (out_dir.empty()) throw ConfigError("output directory is required");
}

namespace {

// Collects outputs under a staging directory and publishes them into
// out_dir only when the whole run succeeds.
class Staging {
 public:
  explicit Staging(fs::path out_dir) : out_dir_(std::move(out_dir)), root_(out_dir_ / ".staging") {
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  Staging(const Staging&) = delete;
  Staging& operator=(const Staging&) = delete;
  ~Staging() {
    std::error_code ec;
    fs::remove_all(root_, ec);
  }

  template <typename Fn>
  void write(const std::string& rel, Fn&& body) {
    const fs::path path = root_ / rel;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    body(out);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    files_.push_back(rel);
  }

  void publish() {
    for (const auto& rel : files_) {
      const fs::path dst = out_dir_ / rel;
      fs::create_directories(dst.parent_path());
      fs::remove(dst);
      fs::rename(root_ / rel, dst);
    }
  }

  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path out_dir_;
  fs::path root_;
  std::vector<std::string> files_;
};

template <typename Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

std::string seed_dir(std::uint64_t seed) { return "seed" + std::to_string(seed) + "/"; }

std::string resolve_cache_dir(const ExperimentConfig& config) {
  if (!config.cache_dir.empty()) return config.cache_dir;
  if (const char* env = std::getenv("FUZZYCENT_CACHE_DIR"); env && *env) return env;
  return (fs::path(config.out_dir) / "spread-cache").string();
}

struct SeedOutcome {
  std::map<Method, RobustnessCurve> curves;
  std::map<Method, std::vector<ImprecisionPoint>> imprecision;
  std::map<Method, double> seconds;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const ProgressFn& progress) {
  config.validate();
  auto log = [&](const std::string& msg) {
    if (progress) progress(msg);
  };

  ExperimentResult result;
  result.network = config.network_name.empty() ? fs::path(config.network_path).stem().string() : config.network_name;

  const FuzzyGraph base = stage("load", [&] { return load_edge_list(config.network_path); });
  if (base.node_count() < 2) throw StageError("load", "network needs at least 2 nodes");
  result.beta = config.beta ? *config.beta : stage("beta", [&] { return default_beta(base); });
  log("network " + result.network + ": n=" + std::to_string(base.node_count()) +
      " m=" + std::to_string(base.edge_count()) + " beta=" + csv::num(result.beta));

  stage("output", [&] { fs::create_directories(config.out_dir); });
  Staging staging(config.out_dir);
  const SpreadCache cache(resolve_cache_dir(config));
  const SirParams sir{result.beta, config.gamma, config.runs, config.sir_seed};
  const RankOptions rank_options{config.nfrh_mode, config.threads};

  std::vector<SeedOutcome> outcomes;
  for (std::uint64_t seed : config.seeds) {
    const std::string dir = seed_dir(seed);
    const std::string tag = " (seed " + std::to_string(seed) + ")";
    SeedOutcome outcome;

    const FuzzyGraph g = stage("fuzzify" + tag, [&] { return fuzzify(base, seed); });
    stage("write" + tag, [&] {
      staging.write(dir + result.network + "W.edges", [&](std::ostream& o) { o << serialize_edge_list(g); });
    });

    auto spreads = stage("spread" + tag, [&] {
      if (auto cached = cache.load(g, sir)) {
        ++result.cache_hits;
        log("spread cache hit" + tag + " in " + cache.directory());
        return *cached;
      }
      log("simulating SIR" + tag + ": " + std::to_string(g.node_count()) + " nodes x " +
          std::to_string(sir.runs) + " runs");
      auto table = spread_table(g, sir, config.threads);
      cache.store(g, sir, table);
      return table;
    });
    stage("write" + tag, [&] {
      staging.write(dir + "spread.csv", [&](std::ostream& o) { write_spread_csv(o, spreads); });
    });

    for (Method m : config.methods) {
      const std::string name(method_name(m));
      const std::string mtag = " [" + name + "]" + tag;
      auto ranking = stage("rank" + mtag, [&] { return rank(g, m, rank_options); });
      auto curve = stage("robustness" + mtag, [&] { return robustness(g, ranking); });
      auto points = stage("imprecision" + mtag, [&] {
        std::vector<ImprecisionPoint> pts;
        for (double p : config.p_grid) pts.push_back(imprecision(ranking, spreads, p));
        return pts;
      });
      stage("write" + mtag, [&] {
        staging.write(dir + "rank_" + name + ".csv", [&](std::ostream& o) { write_ranking_csv(o, g, ranking); });
        staging.write(dir + "robustness_" + name + ".csv", [&](std::ostream& o) { write_robustness_csv(o, curve); });
        staging.write(dir + "imprecision_" + name + ".csv", [&](std::ostream& o) { write_imprecision_csv(o, points); });
      });
      log("ranked " + method_display_name(m) + tag + ": R=" + csv::num(curve.r_value));
      outcome.curves[m] = std::move(curve);
      outcome.imprecision[m] = std::move(points);
    }

    if (config.run_bench) {
      auto records = stage("bench" + tag, [&] {
        return runtime_bench(g, config.methods, result.network, {config.bench_repetitions, 2e-3});
      });
      for (const auto& r : records) outcome.seconds[r.method] = r.median_seconds;
      stage("write" + tag, [&] {
        staging.write(dir + "bench.csv", [&](std::ostream& o) { write_bench_csv(o, records); });
      });
    }
    outcomes.push_back(std::move(outcome));
  }

  // Averages over seeds, accumulated in seed order.
  const double count = static_cast<double>(outcomes.size());
  const std::size_t n = base.node_count();
  for (Method m : config.methods) {
    MethodSummary s;
    s.mean_fractions.assign(n, 0.0);
    s.imprecision.assign(config.p_grid.size(), {});
    for (const auto& o : outcomes) {
      const auto& curve = o.curves.at(m);
      s.r_per_seed.push_back(curve.r_value);
      s.r_mean += curve.r_value;
      for (std::size_t i = 0; i < n; ++i) s.mean_fractions[i] += curve.lcc_fractions[i];
      const auto& pts = o.imprecision.at(m);
      for (std::size_t k = 0; k < pts.size(); ++k) {
        s.imprecision[k].f_method += pts[k].f_method;
        s.imprecision[k].f_eff += pts[k].f_eff;
        s.imprecision[k].e_value += pts[k].e_value;
      }
      if (config.run_bench) s.median_seconds += o.seconds.at(m);
    }
    s.r_mean /= count;
    for (double& f : s.mean_fractions) f /= count;
    std::vector<double> e_values;
    for (std::size_t k = 0; k < s.imprecision.size(); ++k) {
      auto& pt = s.imprecision[k];
      pt.p = config.p_grid[k];
      pt.f_method /= count;
      pt.f_eff /= count;
      pt.e_value /= count;
      e_values.push_back(pt.e_value);
    }
    s.mean_imprecision = mean(e_values);
    s.median_seconds /= count;
    result.methods[m] = std::move(s);
  }

  stage("write averages", [&] {
    for (const auto& [m, s] : result.methods) {
      const std::string name(method_name(m));
      RobustnessCurve avg;
      avg.lcc_fractions = s.mean_fractions;
      staging.write("robustness_" + name + "_avg.csv", [&](std::ostream& o) { write_robustness_csv(o, avg); });
      staging.write("imprecision_" + name + "_avg.csv",
                    [&](std::ostream& o) { write_imprecision_csv(o, s.imprecision); });
    }
    staging.write("summary.csv", [&](std::ostream& o) {
      o << "method,r_value,mean_imprecision\n";
      for (const auto& [m, s] : result.methods) {
        o << method_name(m) << ',' << csv::num(s.r_mean) << ',' << csv::num(s.mean_imprecision) << '\n';
      }
    });

    staging.write("fig1_robustness.csv", [&](std::ostream& o) {
      o << "step";
      for (const auto& [m, s] : result.methods) o << ',' << method_name(m);
      o << '\n';
      for (std::size_t i = 0; i < n; ++i) {
        o << (i + 1);
        for (const auto& [m, s] : result.methods) o << ',' << csv::num(s.mean_fractions[i]);
        o << '\n';
      }
    });
    staging.write("fig2_imprecision.csv", [&](std::ostream& o) {
      o << "p";
      for (const auto& [m, s] : result.methods) o << ',' << method_name(m);
      o << '\n';
      for (std::size_t k = 0; k < config.p_grid.size(); ++k) {
        o << csv::num(config.p_grid[k]);
        for (const auto& [m, s] : result.methods) o << ',' << csv::num(s.imprecision[k].e_value);
        o << '\n';
      }
    });
    if (config.run_bench) {
      std::vector<BenchRecord> avg;
      for (const auto& [m, s] : result.methods) avg.push_back({m, result.network, s.median_seconds, config.bench_repetitions});
      staging.write("bench_avg.csv", [&](std::ostream& o) { write_bench_csv(o, avg); });
      staging.write("fig3_runtime.csv", [&](std::ostream& o) { write_bench_csv(o, avg); });
    }

    if (config.format == OutputFormat::Svg) {
      std::vector<svg::Series> fig1, fig2, fig3;
      std::vector<std::string> p_labels, method_labels;
      for (double p : config.p_grid) p_labels.push_back(csv::num(p));
      svg::Series runtime{"median seconds", {}, {}};
      for (const auto& [m, s] : result.methods) {
        svg::Series curve{method_display_name(m), {}, s.mean_fractions};
        for (std::size_t i = 0; i < n; ++i) curve.x.push_back(static_cast<double>(i + 1) / static_cast<double>(n));
        fig1.push_back(std::move(curve));
        svg::Series bars{method_display_name(m), {}, {}};
        for (const auto& pt : s.imprecision) bars.y.push_back(pt.e_value);
        fig2.push_back(std::move(bars));
        method_labels.emplace_back(method_name(m));
        runtime.y.push_back(s.median_seconds);
      }
      fig3.push_back(std::move(runtime));
      staging.write("fig1_robustness.svg", [&](std::ostream& o) {
        o << svg::line_chart("Robustness: " + result.network + "W", "fraction of nodes removed",
                             "LCC fraction", fig1);
      });
      staging.write("fig2_imprecision.svg", [&](std::ostream& o) {
        o << svg::bar_chart("Imprecision: " + result.network + "W", "E(p)", p_labels, fig2);
      });
      if (config.run_bench) {
        staging.write("fig3_runtime.svg", [&](std::ostream& o) {
          o << svg::bar_chart("Runtime: " + result.network + "W", "seconds per ranking", method_labels, fig3);
        });
      }
    }
  });

  stage("publish", [&] { staging.publish(); });
  result.files = staging.files();
  return result;
}

}  // namespace fuzzycent
