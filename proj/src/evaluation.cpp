#include "fuzzycent/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "fuzzycent/csv.hpp"

namespace fuzzycent {

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

// --- robustness --------------------------------------------------------------

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  std::size_t unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return size_[a];
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return size_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace

RobustnessCurve robustness(const FuzzyGraph& graph, std::span<const NodeId> removal_order) {
  const std::size_t n = graph.node_count();
  if (n < 2) throw std::invalid_argument("robustness needs at least 2 nodes");
  if (removal_order.size() != n) throw std::invalid_argument("removal order must cover every node");
  std::vector<bool> seen(n, false);
  for (NodeId v : removal_order) {
    if (v >= n || seen[v]) throw std::invalid_argument("removal order is not a permutation");
    seen[v] = true;
  }

  // Re-insert nodes in reverse removal order; after inserting
  // order[i..n-1] the largest component is S_i.
  std::vector<std::size_t> lcc(n + 1, 0);
  std::vector<bool> present(n, false);
  DisjointSets sets(n);
  std::size_t largest = 0;
  for (std::size_t i = n; i-- > 1;) {
    const NodeId v = removal_order[i];
    present[v] = true;
    largest = std::max<std::size_t>(largest, 1);
    for (const auto& nb : graph.neighbors(v)) {
      if (present[nb.node]) largest = std::max(largest, sets.unite(v, nb.node));
    }
    lcc[i] = largest;
  }

  RobustnessCurve curve;
  curve.removal_order.assign(removal_order.begin(), removal_order.end());
  curve.lcc_fractions.resize(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 1; i <= n; ++i) curve.lcc_fractions[i - 1] = static_cast<double>(lcc[i]) / denom;
  curve.r_value = mean(curve.lcc_fractions);
  return curve;
}

RobustnessCurve robustness(const FuzzyGraph& graph, const RankingResult& ranking) {
  return robustness(graph, ranking.order);
}

// --- imprecision -------------------------------------------------------------

std::size_t top_count(double p, std::size_t n) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in (0,1]");
  const double scaled = p * static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::ceil(scaled - 1e-9 * std::max(1.0, scaled)));
  return std::clamp<std::size_t>(k, 1, n);
}

ImprecisionPoint imprecision(const RankingResult& ranking, std::span<const SpreadEstimate> spreads, double p) {
  const std::size_t n = spreads.size();
  if (n == 0) throw std::invalid_argument("empty spread table");
  if (ranking.order.size() != n) throw std::invalid_argument("spread table does not cover the ranking");
  const std::size_t k = top_count(p, n);

  std::vector<double> fraction(n);
  for (std::size_t i = 0; i < n; ++i) fraction[i] = spreads[i].mean_fraction;
  const auto truth = order_by_score(fraction);

  double method_sum = 0.0, eff_sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    method_sum += fraction.at(ranking.order[i]);
    eff_sum += fraction[truth[i]];
  }
  ImprecisionPoint pt;
  pt.p = p;
  pt.f_method = method_sum / static_cast<double>(k);
  pt.f_eff = eff_sum / static_cast<double>(k);
  pt.e_value = 1.0 - pt.f_method / pt.f_eff;
  return pt;
}

std::vector<double> p_grid(std::size_t count, std::size_t denominator) {
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = static_cast<double>(i + 1) / static_cast<double>(denominator);
  }
  return grid;
}

// --- runtime ------------------------------------------------------------------

std::vector<BenchRecord> runtime_bench(const FuzzyGraph& graph, std::span<const Method> methods,
                                       const std::string& network, const BenchOptions& options) {
  if (options.repetitions < 3) throw std::invalid_argument("benchmark needs at least 3 repetitions");
  using clock = std::chrono::steady_clock;
  const RankOptions single_thread{NfrhMode::NeighborNFDC, 1};

  std::vector<BenchRecord> records;
  for (Method m : methods) {
    // Warm-up, also sizes the inner loop.
    auto t0 = clock::now();
    volatile std::size_t sink = rank(graph, m, single_thread).order.size();
    const double warm = std::chrono::duration<double>(clock::now() - t0).count();
    const std::size_t inner = warm >= options.min_repetition_seconds
                                  ? 1
                                  : static_cast<std::size_t>(std::ceil(options.min_repetition_seconds /
                                                                       std::max(warm, 1e-9)));
    std::vector<double> samples;
    for (std::size_t r = 0; r < options.repetitions; ++r) {
      auto start = clock::now();
      for (std::size_t i = 0; i < inner; ++i) sink = sink + rank(graph, m, single_thread).order.size();
      samples.push_back(std::chrono::duration<double>(clock::now() - start).count() / static_cast<double>(inner));
    }
    std::sort(samples.begin(), samples.end());
    const std::size_t mid = samples.size() / 2;
    const double median = samples.size() % 2 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
    records.push_back({m, network, std::max(median, 1e-12), options.repetitions});
  }
  return records;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need at least two (x, y) points");
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double mx = mean(lx), my = mean(ly);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

// --- CSV ----------------------------------------------------------------------

namespace {

void expect_header(std::istream& in, const std::vector<std::string>& header) {
  std::string line;
  if (!std::getline(in, line) || csv::split_row(line) != header) {
    std::string joined;
    for (const auto& h : header) joined += (joined.empty() ? "" : ",") + h;
    throw ParseError(1, "expected header '" + joined + "'");
  }
}

template <typename Fn>
void for_each_row(std::istream& in, std::size_t fields, Fn&& fn) {
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = csv::split_row(line);
    if (f.size() != fields) throw ParseError(line_no, "expected " + std::to_string(fields) + " fields");
    fn(f, line_no);
  }
}

}  // namespace

void write_robustness_csv(std::ostream& out, const RobustnessCurve& curve) {
  out << "step,lcc_fraction\n";
  for (std::size_t i = 0; i < curve.lcc_fractions.size(); ++i) {
    out << (i + 1) << ',' << csv::num(curve.lcc_fractions[i]) << '\n';
  }
}

std::vector<double> read_robustness_csv(std::istream& in) {
  expect_header(in, {"step", "lcc_fraction"});
  std::vector<double> out;
  for_each_row(in, 2, [&](const std::vector<std::string>& f, std::size_t line) {
    if (csv::to_integer(f[0], line) != static_cast<long long>(out.size() + 1)) {
      throw ParseError(line, "step out of sequence");
    }
    out.push_back(csv::to_double(f[1], line));
  });
  return out;
}

void write_imprecision_csv(std::ostream& out, std::span<const ImprecisionPoint> points) {
  out << "p,f_method,f_eff,e_value\n";
  for (const auto& pt : points) {
    out << csv::num(pt.p) << ',' << csv::num(pt.f_method) << ',' << csv::num(pt.f_eff) << ','
        << csv::num(pt.e_value) << '\n';
  }
}

std::vector<ImprecisionPoint> read_imprecision_csv(std::istream& in) {
  expect_header(in, {"p", "f_method", "f_eff", "e_value"});
  std::vector<ImprecisionPoint> out;
  for_each_row(in, 4, [&](const std::vector<std::string>& f, std::size_t line) {
    out.push_back({csv::to_double(f[0], line), csv::to_double(f[1], line), csv::to_double(f[2], line),
                   csv::to_double(f[3], line)});
  });
  return out;
}

void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records) {
  out << "method,network,median_seconds,reps\n";
  for (const auto& r : records) {
    out << method_name(r.method) << ',' << r.network << ',' << csv::num(r.median_seconds) << ','
        << r.repetitions << '\n';
  }
}

std::vector<BenchRecord> read_bench_csv(std::istream& in) {
  expect_header(in, {"method", "network", "median_seconds", "reps"});
  std::vector<BenchRecord> out;
  for_each_row(in, 4, [&](const std::vector<std::string>& f, std::size_t line) {
    out.push_back({parse_method(f[0]), f[1], csv::to_double(f[2], line),
                   static_cast<std::size_t>(csv::to_integer(f[3], line))});
  });
  return out;
}

}  // namespace fuzzycent
