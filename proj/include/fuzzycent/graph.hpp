#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzycent {

using NodeId = std::uint32_t;

/// An undirected edge stored with `u < v`.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Neighbor entry in the adjacency index.
struct Neighbor {
  NodeId node = 0;
  double weight = 1.0;
};

/// Raised for malformed edge-list input. `line()` is 1-based, 0 when the
/// failure is not tied to a particular line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message, const std::string& source = {})
      : std::runtime_error(compose(line, message, source)), line_(line), message_(message) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  static std::string compose(std::size_t line, const std::string& message, const std::string& source) {
    std::string out = source;
    if (line) out += (out.empty() ? "line " : ":") + std::to_string(line);
    return out.empty() ? message : out + ": " + message;
  }

  std::size_t line_;
  std::string message_;
};

/// Undirected fuzzy graph G = (V, sigma, mu). Immutable once built.
///
/// Edges are kept in canonical order (ascending `(u, v)` with `u < v`); that
/// order is what `fuzzify` keys its per-edge random streams on. Adjacency is
/// a CSR index over the same edges, with neighbors of each node sorted by id.
class FuzzyGraph {
 public:
  FuzzyGraph() = default;

  /// Validates and builds a graph. Endpoint order inside each edge does not
  /// matter. Throws std::invalid_argument on self-loops, duplicate edges,
  /// out-of-range endpoints or weights outside [0,1].
  static FuzzyGraph from_edges(std::size_t node_count, std::vector<Edge> edges,
                               std::vector<std::string> labels = {});

  std::size_t node_count() const noexcept { return membership_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(NodeId v) const;
  std::size_t degree(NodeId v) const;

  /// Weight of edge {a,b}, or nullopt when absent.
  std::optional<double> weight(NodeId a, NodeId b) const;

  bool has_labels() const noexcept { return !labels_.empty(); }
  std::span<const std::string> labels() const noexcept { return labels_; }
  /// Original identifier, or the decimal index when no labels are attached.
  std::string label(NodeId v) const;

  /// Node membership sigma(v). Always 1.0 for parsed graphs; no measure reads it.
  double node_membership(NodeId v) const;

  /// Same topology and labels, new weights (indexed like `edges()`).
  FuzzyGraph with_weights(std::span<const double> weights) const;

  friend bool operator==(const FuzzyGraph& a, const FuzzyGraph& b) {
    return a.membership_ == b.membership_ && a.edges_ == b.edges_ && a.labels_ == b.labels_;
  }

 private:
  void build_adjacency();
  void check_node(NodeId v) const;

  std::vector<double> membership_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
};

struct ParseOptions {
  /// Read an optional third column as the edge weight. When false any third
  /// column is ignored and every edge gets weight 1.0.
  bool weighted = true;
  /// A line whose first non-blank character is one of these is skipped.
  std::string comment_chars = "#%";
  std::string delimiters = " \t,;";
};

/// Parses an edge list. Node identifiers are interned in first-appearance
/// order. A `#@nodes <id>...` directive (written by `serialize_edge_list`)
/// declares nodes up front so isolated nodes and interning order survive a
/// round trip.
FuzzyGraph parse_edge_list(std::istream& in, const ParseOptions& options = {});
FuzzyGraph parse_edge_list(std::string_view text, const ParseOptions& options = {});
FuzzyGraph load_edge_list(const std::string& path, const ParseOptions& options = {});

/// Canonical text form: node directive, then one `label label weight` line
/// per edge in canonical order, weights with 17 significant digits.
std::string serialize_edge_list(const FuzzyGraph& graph);
void save_edge_list(const FuzzyGraph& graph, const std::string& path);

/// 64-bit FNV-1a hash of the canonical serialization.
std::uint64_t content_hash(const FuzzyGraph& graph);

/// Replaces every edge weight with an independent draw from U(0,1) (open
/// interval). Edge i in canonical order draws from a stream keyed by
/// (seed, i), so the result depends only on the topology and the seed.
FuzzyGraph fuzzify(const FuzzyGraph& graph, std::uint64_t seed);

/// Size of the largest connected component after deleting `removed`.
/// Throws std::out_of_range for invalid indices.
std::size_t lcc_size(const FuzzyGraph& graph, std::span<const NodeId> removed);

struct GraphStats {
  std::size_t n = 0;
  std::size_t m = 0;
  double avg_degree = 0.0;
  double avg_distance = 0.0;
  double clustering = 0.0;
  double assortativity = 0.0;  // NaN when endpoint degrees have zero variance
};

/// Structural statistics of the crisp topology. Average distance is taken
/// over ordered pairs inside the largest connected component.
GraphStats graph_stats(const FuzzyGraph& graph);

/// Crisp degree sequence.
std::vector<std::size_t> degrees(const FuzzyGraph& graph);

}  // namespace fuzzycent
