#pragma once

#include <array>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fuzzycent/graph.hpp"

namespace fuzzycent {

enum class Method { FD, FRD, FRH, NFDC, NFRH };

inline constexpr std::array<Method, 5> kAllMethods = {Method::FD, Method::FRD, Method::FRH,
                                                      Method::NFDC, Method::NFRH};

/// "FD", "FRD", ... Parsing is case-insensitive; unknown tags throw
/// std::invalid_argument.
std::string_view method_name(Method m);
Method parse_method(std::string_view name);
/// Human-facing name; FRD and FRH carry a "reconstructed baseline" note.
std::string method_display_name(Method m);
bool is_reconstructed_baseline(Method m);

/// Which neighbor score the NFRH h-index counts.
enum class NfrhMode {
  NeighborNFDC,  // neighbors' NFDC (default)
  NeighborFD,    // neighbors' summed incident weight
};

/// Fuzzy degree set FR(v): pairs (d, mu_d(v)) for d = 1..deg(v), where
/// mu_d(v) is the max-min possibility that v has at least d incident edges,
/// i.e. the d-th largest incident weight.
struct FuzzyDegreeSet {
  NodeId node = 0;
  std::size_t crisp_degree = 0;
  std::vector<std::pair<std::size_t, double>> pairs;

  double membership(std::size_t d) const { return pairs.at(d - 1).second; }
  bool empty() const noexcept { return pairs.empty(); }
};

FuzzyDegreeSet fuzzy_degree_set(const FuzzyGraph& graph, NodeId v);

/// Membership-weighted mean degree: (1/DC) * sum_d d * mu_d. 0 for isolated nodes.
double nfdc(const FuzzyGraph& graph, NodeId v);
double nfdc(const FuzzyDegreeSet& set);

/// Sum of incident edge weights.
double fd(const FuzzyGraph& graph, NodeId v);

/// Largest h such that at least h of `scores` are >= h. Real scores are
/// compared against integer h directly, without rounding.
std::size_t h_index(std::span<const double> scores);

/// NFRH of v, computing neighbor scores on the fly.
std::size_t nfrh(const FuzzyGraph& graph, NodeId v, NfrhMode mode = NfrhMode::NeighborNFDC);

/// Possibility that a's degree is at least b's: max over (da, db) with
/// da >= db of min(mu_a(da), mu_b(db)).
/// Conventions: 0 when a is empty, 1 when only b is empty, 0.5 when both are.
double possibility_geq(const FuzzyDegreeSet& a, const FuzzyDegreeSet& b);

struct RankingResult {
  Method method = Method::FD;
  std::vector<double> scores;
  /// Node ids by descending score, ties by ascending id.
  std::vector<NodeId> order;

  /// 1-based rank position of every node.
  std::vector<std::size_t> positions() const;
};

/// Descending-score order with ascending-index tie-break.
std::vector<NodeId> order_by_score(std::span<const double> scores);

struct RankOptions {
  NfrhMode nfrh_mode = NfrhMode::NeighborNFDC;
  unsigned threads = 1;
};

/// Scores every node under `method`. Output does not depend on `threads`.
RankingResult rank(const FuzzyGraph& graph, Method method, const RankOptions& options = {});

/// Per-method score vectors, exposed for callers that need the raw scores.
std::vector<double> fd_scores(const FuzzyGraph& graph, unsigned threads = 1);
std::vector<double> nfdc_scores(const FuzzyGraph& graph, unsigned threads = 1);
std::vector<double> nfrh_scores(const FuzzyGraph& graph, NfrhMode mode = NfrhMode::NeighborNFDC,
                                unsigned threads = 1);
std::vector<double> frd_scores(const FuzzyGraph& graph, unsigned threads = 1);
std::vector<double> frh_scores(const FuzzyGraph& graph, unsigned threads = 1);

/// CSV `node,label,method,score,rank`, rows in ranking order.
void write_ranking_csv(std::ostream& out, const FuzzyGraph& graph, const RankingResult& ranking);
/// Reads back scores and order. Throws ParseError on malformed input.
RankingResult read_ranking_csv(std::istream& in);

}  // namespace fuzzycent
