#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "fuzzycent/evaluation.hpp"
#include "support/graphs.hpp"

using namespace fuzzycent;
using namespace fuzzycent::testing;

namespace {

RankingResult ranking_from_scores(std::vector<double> scores) {
  RankingResult r;
  r.method = Method::NFDC;
  r.order = order_by_score(scores);
  r.scores = std::move(scores);
  return r;
}

std::vector<SpreadEstimate> spreads_of(const std::vector<double>& fractions) {
  std::vector<SpreadEstimate> out;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    SpreadEstimate e;
    e.node = static_cast<NodeId>(i);
    e.mean_fraction = fractions[i];
    out.push_back(e);
  }
  return out;
}

}  // namespace

TEST_CASE("robustness on complete graphs") {
  std::vector<NodeId> order{2, 0, 3, 1};
  auto curve = robustness(complete_graph(4), order);
  REQUIRE(curve.lcc_fractions.size() == 4);
  CHECK(curve.lcc_fractions[0] == doctest::Approx(1.0));
  CHECK(curve.lcc_fractions[1] == doctest::Approx(2.0 / 3.0));
  CHECK(curve.lcc_fractions[2] == doctest::Approx(1.0 / 3.0));
  CHECK(curve.lcc_fractions[3] == 0.0);
  CHECK(curve.r_value == doctest::Approx(0.5));
  CHECK(curve.removal_order == order);

  for (std::size_t n : {10u, 25u}) {
    std::vector<NodeId> ident(n);
    std::iota(ident.begin(), ident.end(), 0);
    CHECK(robustness(complete_graph(n, 0.3), ident).r_value == doctest::Approx(0.5));
  }
}

TEST_CASE("robustness on a path with the centre removed first") {
  std::vector<NodeId> order{1, 0, 2};
  auto curve = robustness(path_graph(3), order);
  CHECK(curve.lcc_fractions[0] == doctest::Approx(0.5));
  CHECK(curve.lcc_fractions[1] == doctest::Approx(0.5));
  CHECK(curve.lcc_fractions[2] == 0.0);
  CHECK(curve.r_value == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("robustness matches direct component recomputation") {
  std::mt19937_64 rng(31);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto g = random_graph(70, 90 + 20 * seed, seed);
    std::vector<NodeId> order(g.node_count());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    auto curve = robustness(g, order);
    const double denom = static_cast<double>(g.node_count() - 1);
    double sum = 0.0;
    for (std::size_t i = 1; i <= order.size(); ++i) {
      std::vector<NodeId> removed(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(i));
      const double expected = static_cast<double>(lcc_size(g, removed)) / denom;
      CHECK(curve.lcc_fractions[i - 1] == doctest::Approx(expected));
      sum += expected;
    }
    CHECK(curve.r_value == doctest::Approx(sum / static_cast<double>(order.size())));
  }
}

TEST_CASE("robustness is invariant under relabelling") {
  std::mt19937_64 rng(5);
  auto g = random_graph(40, 100, 77);
  std::vector<NodeId> perm(g.node_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({perm[e.u], perm[e.v], e.weight});
  auto h = FuzzyGraph::from_edges(g.node_count(), edges);

  std::vector<NodeId> order(g.node_count());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<NodeId> mapped;
  for (NodeId v : order) mapped.push_back(perm[v]);
  auto a = robustness(g, order), b = robustness(h, mapped);
  CHECK(a.lcc_fractions == b.lcc_fractions);
  CHECK(a.r_value == b.r_value);
}

TEST_CASE("robustness input validation") {
  std::vector<NodeId> single{0};
  CHECK_THROWS_AS(robustness(graph_of(1, {}), single), std::invalid_argument);
  std::vector<NodeId> dup{0, 0, 1};
  CHECK_THROWS_AS(robustness(path_graph(3), dup), std::invalid_argument);
  std::vector<NodeId> short_order{0, 1};
  CHECK_THROWS_AS(robustness(path_graph(3), short_order), std::invalid_argument);
  auto r = ranking_from_scores({1, 2, 3});
  CHECK(robustness(path_graph(3), r).removal_order == std::vector<NodeId>{2, 1, 0});
}

TEST_CASE("top count") {
  CHECK(top_count(0.02, 34) == 1);
  CHECK(top_count(0.2, 34) == 7);
  CHECK(top_count(0.2, 10) == 2);  // 0.2*10 is exactly 2 after the slack
  CHECK(top_count(3.0 / 50.0, 100) == 6);
  CHECK(top_count(1.0, 5) == 5);
  CHECK(top_count(1e-6, 5) == 1);
  CHECK_THROWS_AS(top_count(0.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(top_count(1.5, 5), std::invalid_argument);
}

TEST_CASE("imprecision") {
  auto spreads = spreads_of({0.9, 0.4, 0.3, 0.1});
  auto wrong = ranking_from_scores({0.0, 5.0, 1.0, 0.5});  // puts node 1 first
  auto pt = imprecision(wrong, spreads, 0.25);
  CHECK(pt.f_method == doctest::Approx(0.4));
  CHECK(pt.f_eff == doctest::Approx(0.9));
  CHECK(pt.e_value == doctest::Approx(1.0 - 0.4 / 0.9));

  // Same value with the ranking order [2, 0, 1, 3].
  auto spreads2 = spreads_of({0.9, 0.5, 0.4, 0.2});
  auto order2 = ranking_from_scores({0.8, 0.5, 0.9, 0.1});
  REQUIRE(order2.order == std::vector<NodeId>{2, 0, 1, 3});
  auto pt2 = imprecision(order2, spreads2, 0.25);
  CHECK(pt2.f_method == 0.4);
  CHECK(pt2.f_eff == 0.9);
  CHECK(pt2.e_value == 1.0 - 0.4 / 0.9);

  // Whole population: both sides average everything.
  CHECK(imprecision(wrong, spreads, 1.0).e_value == doctest::Approx(0.0).epsilon(1e-15));

  // A ranking in spread order is exact at every p.
  auto right = ranking_from_scores({0.9, 0.4, 0.3, 0.1});
  for (double p : {0.25, 0.5, 0.75, 1.0}) CHECK(imprecision(right, spreads, p).e_value == 0.0);

  // Ties in true spread are broken by index for F_eff.
  auto tied = spreads_of({0.5, 0.5, 0.2});
  CHECK(imprecision(ranking_from_scores({0, 1, 0}), tied, 0.3).e_value == 0.0);

  auto short_spreads = spreads_of({0.9, 0.4});
  CHECK_THROWS_AS(imprecision(wrong, short_spreads, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(imprecision(wrong, spreads, 0.0), std::invalid_argument);
}

TEST_CASE("imprecision is never negative") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> spread(30), score(30);
    for (auto& x : spread) x = u(rng);
    for (auto& x : score) x = u(rng);
    auto s = spreads_of(spread);
    auto r = ranking_from_scores(score);
    for (double p : p_grid()) {
      auto pt = imprecision(r, s, p);
      CHECK(pt.e_value >= 0.0);
      CHECK(pt.e_value < 1.0);
    }
  }
}

TEST_CASE("p grid") {
  auto grid = p_grid();
  REQUIRE(grid.size() == 10);
  CHECK(grid.front() == 0.02);
  CHECK(grid[2] == 3.0 / 50.0);
  CHECK(grid.back() == 0.2);
}

TEST_CASE("loglog slope") {
  std::vector<double> x{1, 2, 4, 8, 16}, y;
  for (double v : x) y.push_back(3.0 * v * v);
  CHECK(loglog_slope(x, y) == doctest::Approx(2.0));
  std::vector<double> one{1};
  CHECK_THROWS_AS(loglog_slope(one, one), std::invalid_argument);
}

TEST_CASE("runtime bench records") {
  auto g = random_graph(50, 150, 2);
  std::vector<Method> methods{Method::FD, Method::NFDC, Method::FRD};
  auto records = runtime_bench(g, methods, "toy", {3, 1e-4});
  REQUIRE(records.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(records[i].method == methods[i]);
    CHECK(records[i].network == "toy");
    CHECK(records[i].repetitions == 3);
    CHECK(records[i].median_seconds > 0.0);
  }
  CHECK_THROWS_AS(runtime_bench(g, methods, "toy", {2, 1e-4}), std::invalid_argument);
}

TEST_CASE("evaluation CSV round trips") {
  auto g = random_graph(20, 40, 4);
  std::vector<NodeId> order(20);
  std::iota(order.begin(), order.end(), 0);
  auto curve = robustness(g, order);
  std::stringstream rb;
  write_robustness_csv(rb, curve);
  CHECK(rb.str().rfind("step,lcc_fraction\n", 0) == 0);
  auto fractions = read_robustness_csv(rb);
  CHECK(fractions == curve.lcc_fractions);
  CHECK(mean(fractions) == curve.r_value);

  std::vector<ImprecisionPoint> pts{{0.02, 0.5, 0.6, 1.0 - 0.5 / 0.6}, {0.04, 0.3, 0.3, 0.0}};
  std::stringstream ib;
  write_imprecision_csv(ib, pts);
  auto back = read_imprecision_csv(ib);
  REQUIRE(back.size() == 2);
  CHECK(back[0].e_value == pts[0].e_value);
  CHECK(back[1].p == 0.04);

  std::vector<BenchRecord> recs{{Method::FRH, "karate", 1.25e-4, 5}};
  std::stringstream bb;
  write_bench_csv(bb, recs);
  auto rb2 = read_bench_csv(bb);
  REQUIRE(rb2.size() == 1);
  CHECK(rb2[0].method == Method::FRH);
  CHECK(rb2[0].network == "karate");
  CHECK(rb2[0].median_seconds == 1.25e-4);
  CHECK(rb2[0].repetitions == 5);

  std::stringstream bad("step,lcc_fraction\n2,0.5\n");
  CHECK_THROWS_AS(read_robustness_csv(bad), ParseError);
}
