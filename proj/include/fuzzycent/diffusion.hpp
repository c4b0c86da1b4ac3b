#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fuzzycent/graph.hpp"

namespace fuzzycent {

/// Discrete-time weighted SIR parameters. Each contact transmits with
/// probability min(1, beta * mu(edge)); an infected node recovers after each
/// of its infectious steps with probability gamma.
struct SirParams {
  double beta = 0.1;
  double gamma = 1.0;
  std::size_t runs = 1000;
  std::uint64_t master_seed = 0;

  /// Throws std::invalid_argument unless beta >= 0, gamma in (0,1], runs >= 1.
  void validate() const;
};

struct SpreadEstimate {
  NodeId node = 0;
  double mean_fraction = 0.0;  // mean final recovered count / n
  double std_error = 0.0;      // sample std of the fraction / sqrt(runs)
  SirParams params;
};

/// One SIR realisation seeded at `seed_node`; returns the final recovered count.
///
/// Every random decision is a keyed hash of (master_seed, run_index,
/// seed_node) together with the decision's own coordinates: the directed
/// contact and how many infectious steps the source has had. The result is
/// independent of evaluation order, and raising beta with everything else
/// fixed can only grow the recovered set.
std::size_t simulate_sir(const FuzzyGraph& graph, NodeId seed_node, const SirParams& params,
                         std::uint64_t run_index);

SpreadEstimate estimate_spread(const FuzzyGraph& graph, NodeId node, const SirParams& params);

/// estimate_spread for every node, in node order. Output is identical for
/// any `threads` value.
std::vector<SpreadEstimate> spread_table(const FuzzyGraph& graph, const SirParams& params,
                                         unsigned threads = 1);

/// 1.5 * <k> / (<k^2> - <k>) on the crisp degrees, clamped to (0, 1].
/// Requires n >= 2 and m >= 1.
double default_beta(const FuzzyGraph& graph);

// --- persistence -------------------------------------------------------------

/// Sidecar record that validates a cached spread table.
struct SpreadMetadata {
  std::uint64_t graph_hash = 0;
  double beta = 0.0;
  double gamma = 1.0;
  std::size_t runs = 0;
  std::uint64_t master_seed = 0;

  friend bool operator==(const SpreadMetadata&, const SpreadMetadata&) = default;
};

SpreadMetadata spread_metadata(const FuzzyGraph& graph, const SirParams& params);

/// CSV `node,mean_fraction,std_error`.
void write_spread_csv(std::ostream& out, const std::vector<SpreadEstimate>& table);
std::vector<SpreadEstimate> read_spread_csv(std::istream& in, const SirParams& params);

std::string metadata_json(const SpreadMetadata& meta);
SpreadMetadata parse_metadata_json(const std::string& text);

/// File-backed spread cache. Entries live at `<dir>/spread-<hash>-<key>.csv`
/// with a `.meta.json` sidecar; a lookup only hits when the sidecar matches.
class SpreadCache {
 public:
  explicit SpreadCache(std::string directory);

  std::optional<std::vector<SpreadEstimate>> load(const FuzzyGraph& graph, const SirParams& params) const;
  void store(const FuzzyGraph& graph, const SirParams& params, const std::vector<SpreadEstimate>& table) const;

  const std::string& directory() const noexcept { return dir_; }

 private:
  std::string stem(const SpreadMetadata& meta) const;
  std::string dir_;
};

}  // namespace fuzzycent
