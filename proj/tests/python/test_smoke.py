import math
import os
import subprocess
from pathlib import Path

import pytest

import fuzzycent as fc

DATA = Path(os.environ.get("FUZZYCENT_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))
KARATE = str(DATA / "karate.edges")


@pytest.fixture(scope="module")
def karate():
    return fc.load_edge_list(KARATE)


def test_load_and_stats(karate):
    assert karate.node_count == 34
    assert karate.edge_count == 78
    s = fc.graph_stats(karate)
    assert s.n == 34 and s.m == 78
    assert s.avg_degree == pytest.approx(156 / 34)


def test_stats_match_networkx(karate):
    nx = pytest.importorskip("networkx")
    g = nx.Graph()
    g.add_nodes_from(range(karate.node_count))
    g.add_edges_from((u, v) for u, v, _ in karate.edges())
    s = fc.graph_stats(karate)
    assert s.clustering == pytest.approx(nx.average_clustering(g), abs=1e-12)
    assert s.assortativity == pytest.approx(nx.degree_assortativity_coefficient(g), abs=1e-9)
    assert s.avg_distance == pytest.approx(nx.average_shortest_path_length(g), abs=1e-12)


def test_parse_errors():
    with pytest.raises(ValueError):
        fc.parse_edge_list("a b 1.5\n")
    g = fc.parse_edge_list("# c\na b 0.5\nb c 0.25\n")
    assert g.node_count == 3
    assert g.weight(0, 1) == 0.5


def test_fuzzify_roundtrip(karate):
    w = fc.fuzzify(karate, 3)
    assert w == fc.fuzzify(karate, 3)
    assert all(0.0 < mu < 1.0 for _, _, mu in w.edges())
    assert fc.parse_edge_list(fc.serialize_edge_list(w)) == w
    assert fc.content_hash(w) != fc.content_hash(karate)


def test_nfdc_hand_example():
    g = fc.FuzzyGraph(4, [(0, 1, 0.9), (0, 2, 0.5), (0, 3, 0.2)])
    assert fc.fuzzy_degree_set(g, 0).pairs == [(1, 0.9), (2, 0.5), (3, 0.2)]
    assert fc.nfdc(g, 0) == pytest.approx(2.5 / 3, abs=1e-15)
    assert fc.fd(g, 0) == pytest.approx(1.6)
    assert fc.h_index([3.2, 2.5, 1.1]) == 2


def test_rank_all_methods(karate):
    w = fc.fuzzify(karate, 1)
    for m in fc.ALL_METHODS:
        r = fc.rank(w, m, threads=2)
        assert sorted(r.order) == list(range(34))
        scores = [r.scores[v] for v in r.order]
        assert scores == sorted(scores, reverse=True)
    assert "reconstructed baseline" in fc.method_display_name(fc.Method.FRD)
    assert fc.parse_method("nfrh") == fc.Method.NFRH


def test_sir_and_metrics(karate):
    w = fc.fuzzify(karate, 2)
    params = fc.SirParams(beta=0.3, runs=50, master_seed=4)
    table = fc.spread_table(w, params, threads=3)
    assert [e.node for e in table] == list(range(34))
    assert all(1 / 34 <= e.mean_fraction <= 1 for e in table)
    assert fc.spread_table(w, params, threads=1)[5].mean_fraction == table[5].mean_fraction
    assert fc.default_beta(fc.FuzzyGraph(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)])) == pytest.approx(0.75)

    ranking = fc.rank(w, fc.Method.NFDC)
    curve = fc.robustness(w, ranking)
    assert len(curve.lcc_fractions) == 34
    assert curve.lcc_fractions[-1] == 0.0
    assert curve.r_value == pytest.approx(sum(curve.lcc_fractions) / 34)
    for p in fc.p_grid():
        pt = fc.imprecision(ranking, table, p)
        assert 0.0 <= pt.e_value < 1.0
    bench = fc.runtime_bench(w, [fc.Method.FD], "karate", 3)
    assert bench[0].median_seconds > 0 and bench[0].repetitions == 3


def test_run_experiment(tmp_path):
    res = fc.run_experiment(KARATE, str(tmp_path / "out"), seeds=[1], runs=20, bench=False,
                            cache_dir=str(tmp_path / "cache"))
    assert res.network == "karate"
    assert set(res.methods) == set(fc.ALL_METHODS)
    assert (tmp_path / "out" / "summary.csv").exists()
    assert "seed1/spread.csv" in res.files
    assert not math.isnan(res.methods[fc.Method.NFDC].r_mean)


def test_cli_stats():
    cli = os.environ.get("FUZZYCENT_CLI")
    if not cli:
        pytest.skip("FUZZYCENT_CLI not set")
    out = subprocess.run([cli, "stats", KARATE], capture_output=True, text=True, check=True).stdout
    assert "karate" in out and "0.571" in out
