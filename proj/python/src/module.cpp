#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fuzzycent/centrality.hpp"
#include "fuzzycent/diffusion.hpp"
#include "fuzzycent/evaluation.hpp"
#include "fuzzycent/experiment.hpp"
#include "fuzzycent/graph.hpp"

namespace py = pybind11;
using namespace fuzzycent;

namespace {

FuzzyGraph graph_from_tuples(std::size_t n, const std::vector<std::tuple<NodeId, NodeId, double>>& edges,
                             std::vector<std::string> labels) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const auto& [u, v, w] : edges) out.push_back({u, v, w});
  return FuzzyGraph::from_edges(n, std::move(out), std::move(labels));
}

}  // namespace

PYBIND11_MODULE(_fuzzycent, m) {
  m.doc() = "Fuzzy-graph centrality (FD, FRD, FRH, NFDC, NFRH), weighted SIR and evaluation metrics";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<StageError>(m, "StageError", PyExc_RuntimeError);

  // --- graph ---------------------------------------------------------------
  py::class_<GraphStats>(m, "GraphStats")
      .def_readonly("n", &GraphStats::n)
      .def_readonly("m", &GraphStats::m)
      .def_readonly("avg_degree", &GraphStats::avg_degree)
      .def_readonly("avg_distance", &GraphStats::avg_distance)
      .def_readonly("clustering", &GraphStats::clustering)
      .def_readonly("assortativity", &GraphStats::assortativity);

  py::class_<FuzzyGraph>(m, "FuzzyGraph")
      .def(py::init(&graph_from_tuples), py::arg("node_count"), py::arg("edges"),
           py::arg("labels") = std::vector<std::string>{},
           "Build from (u, v, weight) tuples.")
      .def_property_readonly("node_count", &FuzzyGraph::node_count)
      .def_property_readonly("edge_count", &FuzzyGraph::edge_count)
      .def("edges",
           [](const FuzzyGraph& g) {
             std::vector<std::tuple<NodeId, NodeId, double>> out;
             for (const auto& e : g.edges()) out.emplace_back(e.u, e.v, e.weight);
             return out;
           })
      .def("neighbors",
           [](const FuzzyGraph& g, NodeId v) {
             std::vector<std::pair<NodeId, double>> out;
             for (const auto& nb : g.neighbors(v)) out.emplace_back(nb.node, nb.weight);
             return out;
           })
      .def("degree", &FuzzyGraph::degree)
      .def("weight", &FuzzyGraph::weight)
      .def("label", &FuzzyGraph::label)
      .def("__eq__", [](const FuzzyGraph& a, const FuzzyGraph& b) { return a == b; })
      .def("__repr__", [](const FuzzyGraph& g) {
        return "<FuzzyGraph n=" + std::to_string(g.node_count()) + " m=" + std::to_string(g.edge_count()) + ">";
      });

  m.def(
      "parse_edge_list",
      [](const std::string& text, bool weighted) { return parse_edge_list(text, ParseOptions{weighted}); },
      py::arg("text"), py::arg("weighted") = true);
  m.def(
      "load_edge_list", [](const std::string& path, bool weighted) { return load_edge_list(path, ParseOptions{weighted}); },
      py::arg("path"), py::arg("weighted") = true);
  m.def("serialize_edge_list", &serialize_edge_list);
  m.def("content_hash", &content_hash);
  m.def("fuzzify", &fuzzify, py::arg("graph"), py::arg("seed"));
  m.def(
      "lcc_size",
      [](const FuzzyGraph& g, const std::vector<NodeId>& removed) { return lcc_size(g, removed); },
      py::arg("graph"), py::arg("removed") = std::vector<NodeId>{});
  m.def("graph_stats", &graph_stats, py::call_guard<py::gil_scoped_release>());

  // --- centrality ----------------------------------------------------------
  py::enum_<Method>(m, "Method")
      .value("FD", Method::FD)
      .value("FRD", Method::FRD)
      .value("FRH", Method::FRH)
      .value("NFDC", Method::NFDC)
      .value("NFRH", Method::NFRH);
  py::enum_<NfrhMode>(m, "NfrhMode")
      .value("NeighborNFDC", NfrhMode::NeighborNFDC)
      .value("NeighborFD", NfrhMode::NeighborFD);
  m.def("parse_method", &parse_method);
  m.def("method_display_name", &method_display_name);

  py::class_<FuzzyDegreeSet>(m, "FuzzyDegreeSet")
      .def(py::init([](NodeId node, std::vector<std::pair<std::size_t, double>> pairs) {
             FuzzyDegreeSet s;
             s.node = node;
             s.crisp_degree = pairs.size();
             s.pairs = std::move(pairs);
             return s;
           }),
           py::arg("node"), py::arg("pairs"))
      .def_readonly("node", &FuzzyDegreeSet::node)
      .def_readonly("crisp_degree", &FuzzyDegreeSet::crisp_degree)
      .def_readonly("pairs", &FuzzyDegreeSet::pairs);

  m.def("fuzzy_degree_set", &fuzzy_degree_set);
  m.def("nfdc", py::overload_cast<const FuzzyGraph&, NodeId>(&nfdc));
  m.def("fd", &fd);
  m.def("nfrh", &nfrh, py::arg("graph"), py::arg("v"), py::arg("mode") = NfrhMode::NeighborNFDC);
  m.def("h_index", [](const std::vector<double>& s) { return h_index(s); });
  m.def("possibility_geq", &possibility_geq);

  py::class_<RankingResult>(m, "RankingResult")
      .def_readonly("method", &RankingResult::method)
      .def_readonly("scores", &RankingResult::scores)
      .def_readonly("order", &RankingResult::order)
      .def("positions", &RankingResult::positions);
  m.def(
      "rank",
      [](const FuzzyGraph& g, Method method, NfrhMode mode, unsigned threads) {
        return rank(g, method, {mode, threads});
      },
      py::arg("graph"), py::arg("method"), py::arg("nfrh_mode") = NfrhMode::NeighborNFDC, py::arg("threads") = 1,
      py::call_guard<py::gil_scoped_release>());

  // --- diffusion -----------------------------------------------------------
  py::class_<SirParams>(m, "SirParams")
      .def(py::init([](double beta, double gamma, std::size_t runs, std::uint64_t master_seed) {
             return SirParams{beta, gamma, runs, master_seed};
           }),
           py::arg("beta") = 0.1, py::arg("gamma") = 1.0, py::arg("runs") = 1000, py::arg("master_seed") = 0)
      .def_readwrite("beta", &SirParams::beta)
      .def_readwrite("gamma", &SirParams::gamma)
      .def_readwrite("runs", &SirParams::runs)
      .def_readwrite("master_seed", &SirParams::master_seed);
  py::class_<SpreadEstimate>(m, "SpreadEstimate")
      .def_readonly("node", &SpreadEstimate::node)
      .def_readonly("mean_fraction", &SpreadEstimate::mean_fraction)
      .def_readonly("std_error", &SpreadEstimate::std_error);
  m.def("simulate_sir", &simulate_sir, py::arg("graph"), py::arg("seed_node"), py::arg("params"),
        py::arg("run_index"));
  m.def("estimate_spread", &estimate_spread, py::call_guard<py::gil_scoped_release>());
  m.def("spread_table", &spread_table, py::arg("graph"), py::arg("params"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("default_beta", &default_beta);

  // --- evaluation ----------------------------------------------------------
  py::class_<RobustnessCurve>(m, "RobustnessCurve")
      .def_readonly("removal_order", &RobustnessCurve::removal_order)
      .def_readonly("lcc_fractions", &RobustnessCurve::lcc_fractions)
      .def_readonly("r_value", &RobustnessCurve::r_value);
  py::class_<ImprecisionPoint>(m, "ImprecisionPoint")
      .def_readonly("p", &ImprecisionPoint::p)
      .def_readonly("f_method", &ImprecisionPoint::f_method)
      .def_readonly("f_eff", &ImprecisionPoint::f_eff)
      .def_readonly("e_value", &ImprecisionPoint::e_value);
  py::class_<BenchRecord>(m, "BenchRecord")
      .def_readonly("method", &BenchRecord::method)
      .def_readonly("network", &BenchRecord::network)
      .def_readonly("median_seconds", &BenchRecord::median_seconds)
      .def_readonly("repetitions", &BenchRecord::repetitions);

  m.def("robustness", py::overload_cast<const FuzzyGraph&, const RankingResult&>(&robustness));
  m.def("imprecision", [](const RankingResult& r, const std::vector<SpreadEstimate>& s, double p) {
    return imprecision(r, s, p);
  });
  m.def("p_grid", &p_grid, py::arg("count") = 10, py::arg("denominator") = 50);
  m.def(
      "runtime_bench",
      [](const FuzzyGraph& g, const std::vector<Method>& methods, const std::string& network, std::size_t reps) {
        return runtime_bench(g, methods, network, {reps, 2e-3});
      },
      py::arg("graph"), py::arg("methods"), py::arg("network") = "graph", py::arg("repetitions") = 5,
      py::call_guard<py::gil_scoped_release>());

  // --- pipeline ------------------------------------------------------------
  py::class_<MethodSummary>(m, "MethodSummary")
      .def_readonly("r_per_seed", &MethodSummary::r_per_seed)
      .def_readonly("r_mean", &MethodSummary::r_mean)
      .def_readonly("mean_fractions", &MethodSummary::mean_fractions)
      .def_readonly("imprecision", &MethodSummary::imprecision)
      .def_readonly("mean_imprecision", &MethodSummary::mean_imprecision)
      .def_readonly("median_seconds", &MethodSummary::median_seconds);
  py::class_<ExperimentResult>(m, "ExperimentResult")
      .def_readonly("network", &ExperimentResult::network)
      .def_readonly("beta", &ExperimentResult::beta)
      .def_readonly("methods", &ExperimentResult::methods)
      .def_readonly("cache_hits", &ExperimentResult::cache_hits)
      .def_readonly("files", &ExperimentResult::files);
  m.def(
      "run_experiment",
      [](const std::string& path, const std::string& out_dir, std::vector<std::uint64_t> seeds,
         std::optional<double> beta, std::size_t runs, std::uint64_t sir_seed, unsigned threads, bool bench,
         const std::string& cache_dir) {
        ExperimentConfig c;
        c.network_path = path;
        c.out_dir = out_dir;
        c.seeds = std::move(seeds);
        c.beta = beta;
        c.runs = runs;
        c.sir_seed = sir_seed;
        c.threads = threads;
        c.run_bench = bench;
        c.cache_dir = cache_dir;
        py::gil_scoped_release release;
        return run_experiment(c);
      },
      py::arg("path"), py::arg("out_dir"), py::arg("seeds") = std::vector<std::uint64_t>{1, 2, 3},
      py::arg("beta") = std::nullopt, py::arg("runs") = 1000, py::arg("sir_seed") = 0, py::arg("threads") = 0,
      py::arg("bench") = true, py::arg("cache_dir") = "");
}
