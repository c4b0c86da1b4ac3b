#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzycent/centrality.hpp"
#include "fuzzycent/evaluation.hpp"

namespace fuzzycent {

enum class OutputFormat { Csv, Svg };

struct ExperimentConfig {
  std::string network_path;
  /// Defaults to the file stem of network_path.
  std::string network_name;
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  std::vector<Method> methods = {kAllMethods.begin(), kAllMethods.end()};
  std::optional<double> beta;  // default_beta of the crisp topology when unset
  double gamma = 1.0;
  std::size_t runs = 1000;
  std::uint64_t sir_seed = 0;
  std::vector<double> p_grid = fuzzycent::p_grid();
  std::string out_dir = "results";
  /// Spread cache location; empty selects `$FUZZYCENT_CACHE_DIR`, then
  /// `<out_dir>/spread-cache`.
  std::string cache_dir;
  unsigned threads = 0;
  bool run_bench = true;
  std::size_t bench_repetitions = 3;
  OutputFormat format = OutputFormat::Csv;
  NfrhMode nfrh_mode = NfrhMode::NeighborNFDC;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Failure inside the pipeline; `stage()` names the step that failed.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

struct MethodSummary {
  std::vector<double> r_per_seed;
  double r_mean = 0.0;
  std::vector<double> mean_fractions;  // averaged robustness curve
  std::vector<ImprecisionPoint> imprecision;  // averaged over seeds, one per p
  double mean_imprecision = 0.0;  // mean e_value over the p grid
  double median_seconds = 0.0;    // averaged over seeds; 0 when bench is off
};

struct ExperimentResult {
  std::string network;
  double beta = 0.0;
  std::map<Method, MethodSummary> methods;
  std::size_t cache_hits = 0;
  std::vector<std::string> files;  // relative to out_dir
};

using ProgressFn = std::function<void(const std::string&)>;

/// Runs the full pipeline: per seed fuzzify, rank with every method, build
/// (or reuse) the spread table, robustness and imprecision per method and
/// optionally time the rankings; then average over seeds and write CSV
/// tables and figure data. Everything except benchmark timings is
/// deterministic given the config. On failure nothing is left in out_dir
/// and a StageError is thrown.
ExperimentResult run_experiment(const ExperimentConfig& config, const ProgressFn& progress = {});

}  // namespace fuzzycent
