#include "fuzzycent/centrality.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <istream>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fuzzycent/csv.hpp"
#include "fuzzycent/parallel.hpp"

namespace fuzzycent {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::FD: return "FD";
    case Method::FRD: return "FRD";
    case Method::FRH: return "FRH";
    case Method::NFDC: return "NFDC";
    case Method::NFRH: return "NFRH";
  }
  throw std::invalid_argument("unknown method tag");
}

Method parse_method(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (Method m : kAllMethods) {
    if (method_name(m) == upper) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "' (expected fd, frd, frh, nfdc or nfrh)");
}

bool is_reconstructed_baseline(Method m) { return m == Method::FRD || m == Method::FRH; }

std::string method_display_name(Method m) {
  std::string name(method_name(m));
  if (is_reconstructed_baseline(m)) name += " (reconstructed baseline)";
  return name;
}

FuzzyDegreeSet fuzzy_degree_set(const FuzzyGraph& graph, NodeId v) {
  auto nb = graph.neighbors(v);
  std::vector<double> w(nb.size());
  std::transform(nb.begin(), nb.end(), w.begin(), [](const Neighbor& x) { return x.weight; });
  std::sort(w.begin(), w.end(), std::greater<>());

  FuzzyDegreeSet set;
  set.node = v;
  set.crisp_degree = w.size();
  set.pairs.reserve(w.size());
  for (std::size_t d = 1; d <= w.size(); ++d) set.pairs.emplace_back(d, w[d - 1]);
  return set;
}

double nfdc(const FuzzyDegreeSet& set) {
  if (set.crisp_degree == 0) return 0.0;
  double sum = 0.0;
  for (const auto& [d, mu] : set.pairs) sum += static_cast<double>(d) * mu;
  return sum / static_cast<double>(set.crisp_degree);
}

double nfdc(const FuzzyGraph& graph, NodeId v) { return nfdc(fuzzy_degree_set(graph, v)); }

double fd(const FuzzyGraph& graph, NodeId v) {
  double sum = 0.0;
  for (const auto& nb : graph.neighbors(v)) sum += nb.weight;
  return sum;
}

std::size_t h_index(std::span<const double> scores) {
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::size_t h = 0;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (sorted[i - 1] >= static_cast<double>(i)) {
      h = i;
    } else {
      break;
    }
  }
  return h;
}

namespace {

std::vector<double> neighbor_scores(const FuzzyGraph& graph, NodeId v, std::span<const double> scores) {
  auto nb = graph.neighbors(v);
  std::vector<double> out(nb.size());
  std::transform(nb.begin(), nb.end(), out.begin(), [&](const Neighbor& x) { return scores[x.node]; });
  return out;
}

std::vector<double> per_node(const FuzzyGraph& graph, unsigned threads,
                             const std::function<double(NodeId)>& score) {
  std::vector<double> out(graph.node_count());
  parallel_for(out.size(), threads, [&](std::size_t v) { out[v] = score(static_cast<NodeId>(v)); });
  return out;
}

}  // namespace

std::size_t nfrh(const FuzzyGraph& graph, NodeId v, NfrhMode mode) {
  auto nb = graph.neighbors(v);
  std::vector<double> scores(nb.size());
  std::transform(nb.begin(), nb.end(), scores.begin(), [&](const Neighbor& x) {
    return mode == NfrhMode::NeighborNFDC ? nfdc(graph, x.node) : fd(graph, x.node);
  });
  return h_index(scores);
}

double possibility_geq(const FuzzyDegreeSet& a, const FuzzyDegreeSet& b) {
  if (a.empty()) return b.empty() ? 0.5 : 0.0;
  if (b.empty()) return 1.0;
  double best = 0.0;
  for (const auto& [da, mu_a] : a.pairs) {
    for (const auto& [db, mu_b] : b.pairs) {
      if (db > da) break;
      best = std::max(best, std::min(mu_a, mu_b));
    }
  }
  return best;
}

std::vector<std::size_t> RankingResult::positions() const {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i + 1;
  return pos;
}

std::vector<NodeId> order_by_score(std::span<const double> scores) {
  std::vector<NodeId> order(scores.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return scores[a] > scores[b]; });
  return order;
}

std::vector<double> fd_scores(const FuzzyGraph& graph, unsigned threads) {
  return per_node(graph, threads, [&](NodeId v) { return fd(graph, v); });
}

std::vector<double> nfdc_scores(const FuzzyGraph& graph, unsigned threads) {
  return per_node(graph, threads, [&](NodeId v) { return nfdc(graph, v); });
}

std::vector<double> nfrh_scores(const FuzzyGraph& graph, NfrhMode mode, unsigned threads) {
  auto base = mode == NfrhMode::NeighborNFDC ? nfdc_scores(graph, threads) : fd_scores(graph, threads);
  return per_node(graph, threads, [&](NodeId v) {
    return static_cast<double>(h_index(neighbor_scores(graph, v, base)));
  });
}

std::vector<double> frd_scores(const FuzzyGraph& graph, unsigned threads) {
  const std::size_t n = graph.node_count();
  std::vector<FuzzyDegreeSet> sets(n);
  parallel_for(n, threads, [&](std::size_t v) { sets[v] = fuzzy_degree_set(graph, static_cast<NodeId>(v)); });
  return per_node(graph, threads, [&](NodeId v) {
    double sum = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (u != v) sum += possibility_geq(sets[v], sets[u]);
    }
    return sum;
  });
}

std::vector<double> frh_scores(const FuzzyGraph& graph, unsigned threads) {
  auto frd = frd_scores(graph, threads);
  auto order = order_by_score(frd);
  // Bottom-up rank: the lowest-ranked node scores 1, the top node scores n.
  std::vector<double> rank_score(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    rank_score[order[i]] = static_cast<double>(order.size() - i);
  }
  return per_node(graph, threads, [&](NodeId v) {
    return static_cast<double>(h_index(neighbor_scores(graph, v, rank_score)));
  });
}

RankingResult rank(const FuzzyGraph& graph, Method method, const RankOptions& options) {
  RankingResult r;
  r.method = method;
  switch (method) {
    case Method::FD: r.scores = fd_scores(graph, options.threads); break;
    case Method::FRD: r.scores = frd_scores(graph, options.threads); break;
    case Method::FRH: r.scores = frh_scores(graph, options.threads); break;
    case Method::NFDC: r.scores = nfdc_scores(graph, options.threads); break;
    case Method::NFRH: r.scores = nfrh_scores(graph, options.nfrh_mode, options.threads); break;
    default: throw std::invalid_argument("unknown method tag");
  }
  r.order = order_by_score(r.scores);
  return r;
}

void write_ranking_csv(std::ostream& out, const FuzzyGraph& graph, const RankingResult& ranking) {
  out << "node,label,method,score,rank\n";
  for (std::size_t i = 0; i < ranking.order.size(); ++i) {
    NodeId v = ranking.order[i];
    out << v << ',' << graph.label(v) << ',' << method_name(ranking.method) << ','
        << csv::num(ranking.scores[v]) << ',' << (i + 1) << '\n';
  }
}

RankingResult read_ranking_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || csv::split_row(line) != std::vector<std::string>{"node", "label", "method", "score", "rank"}) {
    throw ParseError(1, "expected header 'node,label,method,score,rank'");
  }
  RankingResult r;
  std::vector<std::pair<NodeId, double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = csv::split_row(line);
    if (f.size() != 5) throw ParseError(line_no, "expected 5 fields");
    Method m = parse_method(f[2]);
    if (rows.empty()) r.method = m;
    else if (m != r.method) throw ParseError(line_no, "mixed methods in one ranking");
    if (csv::to_integer(f[4], line_no) != static_cast<long long>(rows.size() + 1)) {
      throw ParseError(line_no, "rank column out of sequence");
    }
    rows.emplace_back(static_cast<NodeId>(csv::to_integer(f[0], line_no)), csv::to_double(f[3], line_no));
  }
  r.scores.assign(rows.size(), 0.0);
  std::vector<bool> seen(rows.size(), false);
  for (const auto& [v, s] : rows) {
    if (v >= rows.size() || seen[v]) throw ParseError(0, "node column is not a permutation");
    seen[v] = true;
    r.scores[v] = s;
    r.order.push_back(v);
  }
  return r;
}

}  // namespace fuzzycent
