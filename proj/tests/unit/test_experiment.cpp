#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "fuzzycent/experiment.hpp"
#include "support/graphs.hpp"

using namespace fuzzycent;
using namespace fuzzycent::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ExperimentConfig small_config(const fs::path& root) {
  ExperimentConfig c;
  c.network_path = data_path("karate.edges");
  c.out_dir = (root / "out").string();
  c.cache_dir = (root / "cache").string();
  c.seeds = {1, 2};
  c.runs = 40;
  c.threads = 2;
  c.bench_repetitions = 3;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("experiment writes the full output inventory") {
  TempDir dir("fuzzycent-exp-inventory");
  auto config = small_config(dir.path);
  config.format = OutputFormat::Svg;
  std::vector<std::string> messages;
  auto result = run_experiment(config, [&](const std::string& m) { messages.push_back(m); });
  CHECK(result.network == "karate");
  CHECK(result.beta == doctest::Approx(default_beta(load_edge_list(config.network_path))));
  CHECK(result.cache_hits == 0);
  CHECK_FALSE(messages.empty());

  const fs::path out = config.out_dir;
  std::set<std::string> expected = {"summary.csv", "fig1_robustness.csv", "fig2_imprecision.csv",
                                    "bench_avg.csv", "fig3_runtime.csv", "fig1_robustness.svg",
                                    "fig2_imprecision.svg", "fig3_runtime.svg"};
  for (std::uint64_t seed : config.seeds) {
    const std::string d = "seed" + std::to_string(seed) + "/";
    expected.insert(d + "karateW.edges");
    expected.insert(d + "spread.csv");
    expected.insert(d + "bench.csv");
    for (Method m : kAllMethods) {
      const std::string name(method_name(m));
      expected.insert(d + "rank_" + name + ".csv");
      expected.insert(d + "robustness_" + name + ".csv");
      expected.insert(d + "imprecision_" + name + ".csv");
    }
  }
  for (Method m : kAllMethods) {
    const std::string name(method_name(m));
    expected.insert("robustness_" + name + "_avg.csv");
    expected.insert("imprecision_" + name + "_avg.csv");
  }
  for (const auto& f : expected) CHECK_MESSAGE(fs::exists(out / f), f);
  CHECK(std::set<std::string>(result.files.begin(), result.files.end()) == expected);
  CHECK_FALSE(fs::exists(out / ".staging"));

  // The fuzzified graph on disk is the one the pipeline used.
  auto reloaded = load_edge_list((out / "seed1/karateW.edges").string());
  CHECK(reloaded == fuzzify(load_edge_list(config.network_path), 1));
  CHECK(slurp(out / "fig1_robustness.svg").find("reconstructed baseline") != std::string::npos);
}

TEST_CASE("experiment averages are means of the per-seed files") {
  TempDir dir("fuzzycent-exp-avg");
  auto config = small_config(dir.path);
  config.seeds = {3, 4, 5};
  config.run_bench = false;
  config.methods = {Method::NFDC, Method::FD};
  auto result = run_experiment(config);
  const fs::path out = config.out_dir;
  CHECK_FALSE(fs::exists(out / "bench_avg.csv"));

  for (Method m : config.methods) {
    const std::string name(method_name(m));
    std::vector<std::vector<double>> curves;
    std::vector<std::vector<ImprecisionPoint>> points;
    for (auto seed : config.seeds) {
      std::ifstream rc(out / ("seed" + std::to_string(seed)) / ("robustness_" + name + ".csv"));
      curves.push_back(read_robustness_csv(rc));
      std::ifstream ic(out / ("seed" + std::to_string(seed)) / ("imprecision_" + name + ".csv"));
      points.push_back(read_imprecision_csv(ic));
    }
    std::ifstream ra(out / ("robustness_" + name + "_avg.csv"));
    auto avg = read_robustness_csv(ra);
    REQUIRE(avg.size() == curves[0].size());
    for (std::size_t i = 0; i < avg.size(); ++i) {
      CHECK(avg[i] == (curves[0][i] + curves[1][i] + curves[2][i]) / 3.0);
    }
    std::ifstream ia(out / ("imprecision_" + name + "_avg.csv"));
    auto iavg = read_imprecision_csv(ia);
    REQUIRE(iavg.size() == config.p_grid.size());
    double e_sum = 0.0;
    for (std::size_t k = 0; k < iavg.size(); ++k) {
      CHECK(iavg[k].p == config.p_grid[k]);
      CHECK(iavg[k].e_value == (points[0][k].e_value + points[1][k].e_value + points[2][k].e_value) / 3.0);
      e_sum += iavg[k].e_value;
    }
    const auto& s = result.methods.at(m);
    CHECK(s.r_per_seed.size() == 3);
    CHECK(s.mean_imprecision == e_sum / static_cast<double>(iavg.size()));
  }
  CHECK(slurp(out / "summary.csv").rfind("method,r_value,mean_imprecision\n", 0) == 0);
}

TEST_CASE("experiment reuses cached spread tables") {
  TempDir dir("fuzzycent-exp-cache");
  auto config = small_config(dir.path);
  config.run_bench = false;
  config.methods = {Method::NFDC};
  auto first = run_experiment(config);
  const std::string spread = slurp(fs::path(config.out_dir) / "seed2/spread.csv");
  auto second = run_experiment(config);
  CHECK(first.cache_hits == 0);
  CHECK(second.cache_hits == 2);
  CHECK(slurp(fs::path(config.out_dir) / "seed2/spread.csv") == spread);
  config.runs = 41;
  CHECK(run_experiment(config).cache_hits == 0);
}

TEST_CASE("experiment failure leaves no partial outputs") {
  TempDir dir("fuzzycent-exp-fail");
  auto config = small_config(dir.path);
  config.run_bench = false;
  // A regular file where the cache directory should be makes the spread
  // stage fail after the fuzzified graph was already produced.
  std::ofstream(config.cache_dir) << "not a directory";
  try {
    run_experiment(config);
    FAIL("expected StageError");
  } catch (const StageError& e) {
    CHECK(e.stage().rfind("spread", 0) == 0);
  }
  CHECK(fs::is_empty(config.out_dir));

  config.network_path = (dir.path / "missing.edges").string();
  try {
    run_experiment(config);
    FAIL("expected StageError");
  } catch (const StageError& e) {
    CHECK(e.stage() == "load");
  }
}

TEST_CASE("experiment config validation") {
  ExperimentConfig c;
  c.network_path = "x.edges";
  CHECK_NOTHROW(c.validate());
  auto bad = c;
  bad.seeds.clear();
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.runs = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.p_grid = {0.0};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.bench_repetitions = 2;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.run_bench = false;
  CHECK_NOTHROW(bad.validate());
  bad = c;
  bad.network_path.clear();
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}
