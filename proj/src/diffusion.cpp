#include "fuzzycent/diffusion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fuzzycent/csv.hpp"
#include "fuzzycent/keyed_random.hpp"
#include "fuzzycent/parallel.hpp"

namespace fuzzycent {

namespace {

enum : std::uint8_t { kSusceptible = 0, kInfected = 1, kRecovered = 2 };

constexpr std::uint64_t kRecoveryDomain = 0x5245434f56455259ULL;

}  // namespace

void SirParams::validate() const {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be a finite value >= 0");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (0,1]");
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
}

std::size_t simulate_sir(const FuzzyGraph& graph, NodeId seed_node, const SirParams& params,
                         std::uint64_t run_index) {
  if (seed_node >= graph.node_count()) {
    throw std::out_of_range("seed node " + std::to_string(seed_node) + " out of range");
  }
  const std::uint64_t key = hash_key(params.master_seed, run_index, seed_node);
  const std::uint64_t recovery_key = hash_key(key, kRecoveryDomain);

  std::vector<std::uint8_t> state(graph.node_count(), kSusceptible);
  std::vector<std::uint32_t> steps_infectious(graph.node_count(), 0);
  std::vector<NodeId> current{seed_node}, next, newly;
  state[seed_node] = kInfected;
  std::size_t recovered = 0;

  while (!current.empty()) {
    newly.clear();
    for (NodeId u : current) {
      const std::uint32_t k = steps_infectious[u];
      for (const auto& nb : graph.neighbors(u)) {
        if (state[nb.node] != kSusceptible) continue;
        const double p = std::min(1.0, params.beta * nb.weight);
        const std::uint64_t contact = (std::uint64_t{u} << 32) | nb.node;
        if (to_unit_closed_open(hash_key(key, contact, k)) < p) {
          state[nb.node] = kInfected;
          newly.push_back(nb.node);
        }
      }
    }
    next.clear();
    for (NodeId u : current) {
      if (to_unit_closed_open(hash_key(recovery_key, u, steps_infectious[u])) < params.gamma) {
        state[u] = kRecovered;
        ++recovered;
      } else {
        ++steps_infectious[u];
        next.push_back(u);
      }
    }
    next.insert(next.end(), newly.begin(), newly.end());
    std::swap(current, next);
  }
  return recovered;
}

SpreadEstimate estimate_spread(const FuzzyGraph& graph, NodeId node, const SirParams& params) {
  params.validate();
  std::uint64_t sum = 0;
  unsigned __int128 sum_sq = 0;
  for (std::uint64_t r = 0; r < params.runs; ++r) {
    const std::uint64_t c = simulate_sir(graph, node, params, r);
    sum += c;
    sum_sq += static_cast<unsigned __int128>(c) * c;
  }
  const double runs = static_cast<double>(params.runs);
  const double n = static_cast<double>(graph.node_count());

  SpreadEstimate est;
  est.node = node;
  est.params = params;
  est.mean_fraction = static_cast<double>(sum) / (runs * n);
  if (params.runs > 1) {
    // R * sum(c^2) - sum(c)^2 in exact integer arithmetic.
    const unsigned __int128 numerator =
        static_cast<unsigned __int128>(params.runs) * sum_sq - static_cast<unsigned __int128>(sum) * sum;
    const double variance = static_cast<double>(numerator) / (runs * (runs - 1.0)) / (n * n);
    est.std_error = std::sqrt(variance / runs);
  }
  return est;
}

std::vector<SpreadEstimate> spread_table(const FuzzyGraph& graph, const SirParams& params, unsigned threads) {
  params.validate();
  std::vector<SpreadEstimate> table(graph.node_count());
  parallel_for(table.size(), threads, [&](std::size_t v) {
    table[v] = estimate_spread(graph, static_cast<NodeId>(v), params);
  });
  return table;
}

double default_beta(const FuzzyGraph& graph) {
  const std::size_t n = graph.node_count();
  if (n < 2 || graph.edge_count() < 1) throw std::invalid_argument("default beta needs n >= 2 and m >= 1");
  double k1 = 0.0, k2 = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const double k = static_cast<double>(graph.degree(v));
    k1 += k;
    k2 += k * k;
  }
  k1 /= static_cast<double>(n);
  k2 /= static_cast<double>(n);
  const double denom = k2 - k1;
  if (denom <= 0.0) return 1.0;
  return std::clamp(1.5 * k1 / denom, std::numeric_limits<double>::min(), 1.0);
}

// --- persistence -------------------------------------------------------------

SpreadMetadata spread_metadata(const FuzzyGraph& graph, const SirParams& params) {
  return {content_hash(graph), params.beta, params.gamma, params.runs, params.master_seed};
}

void write_spread_csv(std::ostream& out, const std::vector<SpreadEstimate>& table) {
  out << "node,mean_fraction,std_error\n";
  for (const auto& e : table) {
    out << e.node << ',' << csv::num(e.mean_fraction) << ',' << csv::num(e.std_error) << '\n';
  }
}

std::vector<SpreadEstimate> read_spread_csv(std::istream& in, const SirParams& params) {
  std::string line;
  if (!std::getline(in, line) || csv::split_row(line) != std::vector<std::string>{"node", "mean_fraction", "std_error"}) {
    throw ParseError(1, "expected header 'node,mean_fraction,std_error'");
  }
  std::vector<SpreadEstimate> table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = csv::split_row(line);
    if (f.size() != 3) throw ParseError(line_no, "expected 3 fields");
    SpreadEstimate e;
    e.node = static_cast<NodeId>(csv::to_integer(f[0], line_no));
    if (e.node != table.size()) throw ParseError(line_no, "rows must be in node order");
    e.mean_fraction = csv::to_double(f[1], line_no);
    e.std_error = csv::to_double(f[2], line_no);
    e.params = params;
    table.push_back(e);
  }
  return table;
}

std::string metadata_json(const SpreadMetadata& meta) {
  nlohmann::json j;
  j["graph_hash"] = meta.graph_hash;
  j["beta"] = meta.beta;
  j["gamma"] = meta.gamma;
  j["runs"] = meta.runs;
  j["master_seed"] = meta.master_seed;
  return j.dump(2) + "\n";
}

SpreadMetadata parse_metadata_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    SpreadMetadata m;
    m.graph_hash = j.at("graph_hash").get<std::uint64_t>();
    m.beta = j.at("beta").get<double>();
    m.gamma = j.at("gamma").get<double>();
    m.runs = j.at("runs").get<std::size_t>();
    m.master_seed = j.at("master_seed").get<std::uint64_t>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("bad spread metadata: ") + e.what());
  }
}

SpreadCache::SpreadCache(std::string directory) : dir_(std::move(directory)) {}

std::string SpreadCache::stem(const SpreadMetadata& meta) const {
  const std::uint64_t params_key = hash_key(hash_key(std::bit_cast<std::uint64_t>(meta.beta),
                                                     std::bit_cast<std::uint64_t>(meta.gamma)),
                                            meta.runs, meta.master_seed);
  char buf[64];
  std::snprintf(buf, sizeof buf, "spread-%016llx-%016llx", static_cast<unsigned long long>(meta.graph_hash),
                static_cast<unsigned long long>(params_key));
  return (std::filesystem::path(dir_) / buf).string();
}

std::optional<std::vector<SpreadEstimate>> SpreadCache::load(const FuzzyGraph& graph, const SirParams& params) const {
  const auto meta = spread_metadata(graph, params);
  const std::string base = stem(meta);
  std::ifstream meta_in(base + ".meta.json");
  std::ifstream csv_in(base + ".csv");
  if (!meta_in || !csv_in) return std::nullopt;
  std::stringstream text;
  text << meta_in.rdbuf();
  try {
    if (!(parse_metadata_json(text.str()) == meta)) return std::nullopt;
    auto table = read_spread_csv(csv_in, params);
    if (table.size() != graph.node_count()) return std::nullopt;
    return table;
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

void SpreadCache::store(const FuzzyGraph& graph, const SirParams& params,
                        const std::vector<SpreadEstimate>& table) const {
  std::filesystem::create_directories(dir_);
  const auto meta = spread_metadata(graph, params);
  const std::string base = stem(meta);
  {
    std::ofstream out(base + ".csv", std::ios::binary);
    write_spread_csv(out, table);
    if (!out) throw std::runtime_error("cannot write spread cache '" + base + ".csv'");
  }
  std::ofstream out(base + ".meta.json", std::ios::binary);
  out << metadata_json(meta);
  if (!out) throw std::runtime_error("cannot write spread cache metadata '" + base + ".meta.json'");
}

}  // namespace fuzzycent
