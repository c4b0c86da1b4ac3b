#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fuzzycent/centrality.hpp"
#include "fuzzycent/diffusion.hpp"
#include "fuzzycent/graph.hpp"

namespace fuzzycent {

/// LCC decay under static ranked removal.
struct RobustnessCurve {
  std::vector<NodeId> removal_order;
  /// S_i / (N-1) after removing the first i nodes, i = 1..N. Last entry is 0.
  std::vector<double> lcc_fractions;
  /// R = mean of lcc_fractions.
  double r_value = 0.0;
};

/// Removes nodes in `ranking.order` one at a time (no re-ranking) and
/// records the largest component after each removal. Needs n >= 2.
RobustnessCurve robustness(const FuzzyGraph& graph, const RankingResult& ranking);
RobustnessCurve robustness(const FuzzyGraph& graph, std::span<const NodeId> removal_order);

struct ImprecisionPoint {
  double p = 0.0;
  double f_method = 0.0;  // mean spread of the method's top-k
  double f_eff = 0.0;     // mean spread of the true top-k
  double e_value = 0.0;   // 1 - f_method / f_eff
};

/// Number of nodes in a top-p slice: ceil(p * n), clamped to [1, n]. A
/// relative slack of 1e-9 absorbs representation error in p * n.
std::size_t top_count(double p, std::size_t n);

/// Imprecision of `ranking` against simulated spreads. Requires 0 < p <= 1
/// and one spread entry per ranked node.
ImprecisionPoint imprecision(const RankingResult& ranking, std::span<const SpreadEstimate> spreads, double p);

/// p = step, 2*step, ..., count*step computed as i/denominator to avoid drift.
std::vector<double> p_grid(std::size_t count = 10, std::size_t denominator = 50);

struct BenchRecord {
  Method method = Method::FD;
  std::string network;
  double median_seconds = 0.0;  // per full ranking
  std::size_t repetitions = 0;
};

struct BenchOptions {
  std::size_t repetitions = 5;
  /// Each timed repetition loops the ranking until at least this long has
  /// elapsed, then reports time per ranking.
  double min_repetition_seconds = 2e-3;
};

/// Single-threaded wall-clock timing of the full ranking per method, median
/// over repetitions after one untimed warm-up. Requires repetitions >= 3.
std::vector<BenchRecord> runtime_bench(const FuzzyGraph& graph, std::span<const Method> methods,
                                       const std::string& network, const BenchOptions& options = {});

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

// CSV forms: `step,lcc_fraction`, `p,f_method,f_eff,e_value`,
// `method,network,median_seconds,reps`.
void write_robustness_csv(std::ostream& out, const RobustnessCurve& curve);
std::vector<double> read_robustness_csv(std::istream& in);
void write_imprecision_csv(std::ostream& out, std::span<const ImprecisionPoint> points);
std::vector<ImprecisionPoint> read_imprecision_csv(std::istream& in);
void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records);
std::vector<BenchRecord> read_bench_csv(std::istream& in);

double mean(std::span<const double> values);

}  // namespace fuzzycent
