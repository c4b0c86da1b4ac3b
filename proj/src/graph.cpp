#include "fuzzycent/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fuzzycent/keyed_random.hpp"

namespace fuzzycent {

namespace {

constexpr std::string_view kNodesDirective = "#@nodes";

bool valid_weight(double w) { return w >= 0.0 && w <= 1.0; }

std::vector<std::string_view> split(std::string_view line, std::string_view delims) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    std::size_t start = line.find_first_not_of(delims, pos);
    if (start == std::string_view::npos) break;
    std::size_t end = line.find_first_of(delims, start);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(start, end - start));
    pos = end;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  std::size_t b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string format_weight(double w) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", w);
  return buf;
}

}  // namespace

FuzzyGraph FuzzyGraph::from_edges(std::size_t node_count, std::vector<Edge> edges,
                                  std::vector<std::string> labels) {
  if (node_count > std::numeric_limits<NodeId>::max()) {
    throw std::invalid_argument("node count exceeds index range");
  }
  if (!labels.empty()) {
    if (labels.size() != node_count) throw std::invalid_argument("label count does not match node count");
    std::unordered_set<std::string_view> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) throw std::invalid_argument("duplicate node label '" + l + "'");
    }
  }
  for (auto& e : edges) {
    if (e.u >= node_count || e.v >= node_count) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop on node " + std::to_string(e.u));
    if (!valid_weight(e.weight)) throw std::invalid_argument("edge weight outside [0,1]");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      throw std::invalid_argument("duplicate edge {" + std::to_string(edges[i].u) + "," +
                                  std::to_string(edges[i].v) + "}");
    }
  }
  FuzzyGraph g;
  g.membership_.assign(node_count, 1.0);
  g.edges_ = std::move(edges);
  g.labels_ = std::move(labels);
  g.build_adjacency();
  return g;
}

void FuzzyGraph::build_adjacency() {
  const std::size_t n = node_count();
  offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[cursor[e.u]++] = {e.v, e.weight};
    adjacency_[cursor[e.v]++] = {e.u, e.weight};
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
}

void FuzzyGraph::check_node(NodeId v) const {
  if (v >= node_count()) {
    throw std::out_of_range("node index " + std::to_string(v) + " out of range (n=" +
                            std::to_string(node_count()) + ")");
  }
}

std::span<const Neighbor> FuzzyGraph::neighbors(NodeId v) const {
  check_node(v);
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::size_t FuzzyGraph::degree(NodeId v) const {
  check_node(v);
  return offsets_[v + 1] - offsets_[v];
}

std::optional<double> FuzzyGraph::weight(NodeId a, NodeId b) const {
  auto nb = neighbors(a);
  check_node(b);
  auto it = std::lower_bound(nb.begin(), nb.end(), b,
                             [](const Neighbor& x, NodeId id) { return x.node < id; });
  if (it == nb.end() || it->node != b) return std::nullopt;
  return it->weight;
}

std::string FuzzyGraph::label(NodeId v) const {
  check_node(v);
  return labels_.empty() ? std::to_string(v) : labels_[v];
}

double FuzzyGraph::node_membership(NodeId v) const {
  check_node(v);
  return membership_[v];
}

FuzzyGraph FuzzyGraph::with_weights(std::span<const double> weights) const {
  if (weights.size() != edges_.size()) throw std::invalid_argument("weight count does not match edge count");
  FuzzyGraph g = *this;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!valid_weight(weights[i])) throw std::invalid_argument("edge weight outside [0,1]");
    g.edges_[i].weight = weights[i];
  }
  g.build_adjacency();
  return g;
}

// --- parsing ---------------------------------------------------------------

FuzzyGraph parse_edge_list(std::istream& in, const ParseOptions& options) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen_pairs;

  auto intern = [&](std::string_view token) {
    auto [it, inserted] = ids.try_emplace(std::string(token), static_cast<NodeId>(labels.size()));
    if (inserted) labels.emplace_back(token);
    return it->second;
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.starts_with(kNodesDirective)) {
      if (!edges.empty()) throw ParseError(line_no, "node directive after the first edge");
      for (auto tok : split(line.substr(kNodesDirective.size()), options.delimiters)) {
        if (ids.contains(std::string(tok))) throw ParseError(line_no, "node '" + std::string(tok) + "' declared twice");
        intern(tok);
      }
      continue;
    }
    if (options.comment_chars.find(line.front()) != std::string::npos) continue;

    auto tokens = split(line, options.delimiters);
    if (tokens.size() < 2 || tokens.size() > 3) {
      throw ParseError(line_no, "expected 'src dst' or 'src dst weight', got " +
                                    std::to_string(tokens.size()) + " fields");
    }
    double w = 1.0;
    if (tokens.size() == 3 && options.weighted) {
      auto tok = tokens[2];
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), w);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(line_no, "weight '" + std::string(tok) + "' is not a number");
      }
      if (!valid_weight(w)) throw ParseError(line_no, "weight " + std::string(tok) + " outside [0,1]");
    }
    if (tokens[0] == tokens[1]) throw ParseError(line_no, "self-loop on '" + std::string(tokens[0]) + "'");
    NodeId a = intern(tokens[0]);
    NodeId b = intern(tokens[1]);
    NodeId lo = std::min(a, b), hi = std::max(a, b);
    if (!seen_pairs.insert((std::uint64_t{lo} << 32) | hi).second) {
      throw ParseError(line_no, "duplicate edge '" + std::string(tokens[0]) + "' - '" +
                                    std::string(tokens[1]) + "'");
    }
    edges.push_back({a, b, w});
  }
  if (in.bad()) throw ParseError(0, "read failure");
  const std::size_t n = labels.size();
  return FuzzyGraph::from_edges(n, std::move(edges), std::move(labels));
}

FuzzyGraph parse_edge_list(std::string_view text, const ParseOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, options);
}

FuzzyGraph load_edge_list(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open file", path);
  try {
    return parse_edge_list(in, options);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.message(), path);
  }
}

std::string serialize_edge_list(const FuzzyGraph& graph) {
  std::string out;
  constexpr std::size_t per_line = 32;
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    if (v % per_line == 0) {
      if (v) out += '\n';
      out += kNodesDirective;
    }
    out += ' ';
    out += graph.label(v);
  }
  if (graph.node_count()) out += '\n';
  for (const auto& e : graph.edges()) {
    out += graph.label(e.u);
    out += ' ';
    out += graph.label(e.v);
    out += ' ';
    out += format_weight(e.weight);
    out += '\n';
  }
  return out;
}

void save_edge_list(const FuzzyGraph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << serialize_edge_list(graph);
  if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

std::uint64_t content_hash(const FuzzyGraph& graph) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_edge_list(graph)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

FuzzyGraph fuzzify(const FuzzyGraph& graph, std::uint64_t seed) {
  std::vector<double> weights(graph.edge_count());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] = to_unit_open(hash_key(seed, i));
  }
  return graph.with_weights(weights);
}

// --- structure -------------------------------------------------------------

std::vector<std::size_t> degrees(const FuzzyGraph& graph) {
  std::vector<std::size_t> deg(graph.node_count());
  for (NodeId v = 0; v < deg.size(); ++v) deg[v] = graph.degree(v);
  return deg;
}

namespace {

// Component label per node (or npos when removed) and component sizes.
struct Components {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label;
  std::vector<std::size_t> size;
};

Components components(const FuzzyGraph& graph, const std::vector<bool>& removed) {
  const std::size_t n = graph.node_count();
  Components c;
  c.label.assign(n, Components::npos);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (removed[s] || c.label[s] != Components::npos) continue;
    const std::size_t id = c.size.size();
    std::size_t count = 0;
    c.label[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      ++count;
      for (const auto& nb : graph.neighbors(v)) {
        if (!removed[nb.node] && c.label[nb.node] == Components::npos) {
          c.label[nb.node] = id;
          stack.push_back(nb.node);
        }
      }
    }
    c.size.push_back(count);
  }
  return c;
}

}  // namespace

std::size_t lcc_size(const FuzzyGraph& graph, std::span<const NodeId> removed) {
  std::vector<bool> mask(graph.node_count(), false);
  for (NodeId v : removed) {
    if (v >= graph.node_count()) throw std::out_of_range("removed node " + std::to_string(v) + " out of range");
    mask[v] = true;
  }
  auto c = components(graph, mask);
  return c.size.empty() ? 0 : *std::max_element(c.size.begin(), c.size.end());
}

GraphStats graph_stats(const FuzzyGraph& graph) {
  const std::size_t n = graph.node_count();
  GraphStats s;
  s.n = n;
  s.m = graph.edge_count();
  if (n == 0) return s;
  s.avg_degree = 2.0 * static_cast<double>(s.m) / static_cast<double>(n);

  // Mean local clustering; nodes of degree < 2 contribute 0.
  std::vector<char> mark(n, 0);
  double clustering_sum = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    auto nb = graph.neighbors(v);
    const std::size_t k = nb.size();
    if (k < 2) continue;
    for (const auto& x : nb) mark[x.node] = 1;
    std::size_t links = 0;
    for (const auto& x : nb) {
      for (const auto& y : graph.neighbors(x.node)) links += mark[y.node];
    }
    for (const auto& x : nb) mark[x.node] = 0;
    // each neighbor-neighbor link counted twice
    clustering_sum += static_cast<double>(links) / static_cast<double>(k * (k - 1));
  }
  s.clustering = clustering_sum / static_cast<double>(n);

  // Mean shortest-path length over ordered pairs of the largest component.
  auto comp = components(graph, std::vector<bool>(n, false));
  std::size_t best = static_cast<std::size_t>(
      std::max_element(comp.size.begin(), comp.size.end()) - comp.size.begin());
  const std::size_t lcc = comp.size[best];
  if (lcc > 1) {
    std::vector<std::size_t> dist(n);
    std::queue<NodeId> q;
    std::uint64_t total = 0;
    for (NodeId src = 0; src < n; ++src) {
      if (comp.label[src] != best) continue;
      std::fill(dist.begin(), dist.end(), Components::npos);
      dist[src] = 0;
      q.push(src);
      while (!q.empty()) {
        NodeId v = q.front();
        q.pop();
        total += dist[v];
        for (const auto& nb : graph.neighbors(v)) {
          if (dist[nb.node] == Components::npos) {
            dist[nb.node] = dist[v] + 1;
            q.push(nb.node);
          }
        }
      }
    }
    s.avg_distance = static_cast<double>(total) / (static_cast<double>(lcc) * static_cast<double>(lcc - 1));
  }

  // Degree assortativity: Pearson correlation over both orientations of every edge.
  s.assortativity = std::numeric_limits<double>::quiet_NaN();
  if (s.m > 0) {
    double sum_prod = 0.0, sum_half = 0.0, sum_sq_half = 0.0;
    for (const auto& e : graph.edges()) {
      const double j = static_cast<double>(graph.degree(e.u));
      const double k = static_cast<double>(graph.degree(e.v));
      sum_prod += j * k;
      sum_half += 0.5 * (j + k);
      sum_sq_half += 0.5 * (j * j + k * k);
    }
    const double inv_m = 1.0 / static_cast<double>(s.m);
    const double mean = sum_half * inv_m;
    const double num = sum_prod * inv_m - mean * mean;
    const double den = sum_sq_half * inv_m - mean * mean;
    if (den > 1e-12 * std::max(1.0, sum_sq_half * inv_m)) s.assortativity = num / den;
  }
  return s;
}

}  // namespace fuzzycent
