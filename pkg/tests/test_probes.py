from __future__ import annotations

import random

import networkx as nx
import pytest

import oracle
from graph_store import DynamicGraph, GraphError, ZERO_DEGREE
from probes import (
    NO,
    YES,
    ProbeConfig,
    exact_agreement,
    exact_heavy,
    heavy_probe,
    probabilistic_agreement,
)


def clique(n: int) -> DynamicGraph:
    return DynamicGraph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def test_exact_agreement_in_clique() -> None:
    g = clique(5)
    assert exact_agreement(g, 0, 1, 0.2)


def test_exact_agreement_non_adjacent_pair() -> None:
    # N[u] = {u,1,2,3}, N[v] = {v,1,2,3}
    g = DynamicGraph.from_edges(5, [(0, 1), (0, 2), (0, 3), (4, 1), (4, 2), (4, 3)])
    assert not exact_agreement(g, 0, 4, 0.4)


def test_star_center_is_light() -> None:
    g = DynamicGraph.from_edges(9, [(0, leaf) for leaf in range(1, 9)])
    assert not exact_heavy(g, 0, 0.2)
    assert not exact_heavy(g, 3, 0.2)


def test_clique_nodes_are_heavy() -> None:
    g = clique(8)
    assert all(exact_heavy(g, u, 0.2) for u in range(8))


def test_isolated_node_has_no_heaviness() -> None:
    g = DynamicGraph()
    g.insert_node(0, [])
    with pytest.raises(GraphError) as info:
        exact_heavy(g, 0, 0.2)
    assert info.value.code == ZERO_DEGREE


def test_open_convention_excludes_the_node_itself() -> None:
    # 0 and 4 are non-adjacent twins: N(0) = N(4) = {1, 2, 3}
    g = DynamicGraph.from_edges(5, [(0, 1), (0, 2), (0, 3), (4, 1), (4, 2), (4, 3)])
    assert exact_agreement(g, 0, 4, 0.2, convention="open")
    assert not exact_agreement(g, 0, 4, 0.2, convention="closed")
    # adjacent pair of K4: N(0) △ N(1) = {0, 1} under the open convention
    k4 = clique(4)
    assert not exact_agreement(k4, 0, 1, 0.2, convention="open")
    assert exact_agreement(k4, 0, 1, 0.7, convention="open")


def test_open_convention_sampling_never_draws_the_node() -> None:
    g = DynamicGraph.from_edges(5, [(0, 1), (0, 2), (0, 3), (4, 1), (4, 2), (4, 3)])
    open_cfg = ProbeConfig.practical(convention="open")
    closed_cfg = ProbeConfig.practical(convention="closed")
    assert all(probabilistic_agreement(g, 0, 4, open_cfg, random.Random(s)).answer == YES for s in range(50))
    assert any(probabilistic_agreement(g, 0, 4, closed_cfg, random.Random(s)).answer == NO for s in range(50))


def _random_graphs():
    for seed in range(5):
        h = nx.gnp_random_graph(14, 0.35, seed=seed)
        yield DynamicGraph.from_edges(14, list(h.edges()))


@pytest.mark.parametrize("convention", ["open", "closed"])
def test_exact_agreement_is_symmetric(convention: str) -> None:
    for g in _random_graphs():
        for u in range(14):
            for v in range(u + 1, 14):
                for eps in (0.1, 0.2, 0.5, 0.9):
                    assert exact_agreement(g, u, v, eps, convention) == exact_agreement(g, v, u, eps, convention)


@pytest.mark.parametrize("convention", ["open", "closed"])
def test_exact_agreement_survives_larger_epsilon(convention: str) -> None:
    grid = [0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9, 0.99]
    for g in _random_graphs():
        for u in range(14):
            for v in range(u + 1, 14):
                verdicts = [exact_agreement(g, u, v, eps, convention) for eps in grid]
                first = verdicts.index(True) if True in verdicts else len(grid)
                assert all(verdicts[first:])


@pytest.mark.parametrize("mode", ["practical", "theory"])
def test_probabilistic_agreement_on_clique_pair(mode: str) -> None:
    g = clique(6)
    cfg = ProbeConfig.practical() if mode == "practical" else ProbeConfig.theory(6, 0.2)
    v = probabilistic_agreement(g, 0, 1, cfg, random.Random(0))
    assert v.answer == YES
    assert v.stat_x == 0.0 and v.stat_y == 0.0


def test_probabilistic_agreement_disjoint_hoods() -> None:
    g = DynamicGraph.from_edges(4, [(0, 1), (2, 3)])
    v = probabilistic_agreement(g, 0, 2, ProbeConfig.practical(), random.Random(1))
    assert v.answer == NO
    assert v.stat_x == 1.0 and v.stat_y == 1.0


def test_probe_rejects_isolated_nodes() -> None:
    g = DynamicGraph.from_edges(3, [(0, 1)])
    with pytest.raises(GraphError) as info:
        probabilistic_agreement(g, 0, 2, ProbeConfig.practical(), random.Random(0))
    assert info.value.code == ZERO_DEGREE
    with pytest.raises(GraphError):
        heavy_probe(g, 2, ProbeConfig.practical(), random.Random(0))


def test_heavy_probe_on_clique() -> None:
    g = clique(8)
    assert heavy_probe(g, 0, ProbeConfig.practical(), random.Random(0)).answer == YES
    cfg = ProbeConfig.theory(8, 0.2, scale=0.05)
    assert heavy_probe(g, 0, cfg, random.Random(0)).answer == YES


def test_heavy_probe_on_bridge_of_two_cliques() -> None:
    g, nodes = oracle.probe_fixture()
    cfg = ProbeConfig.theory(len(g), 0.2, scale=0.005)
    rng = random.Random(4)
    assert all(heavy_probe(g, nodes["light"], cfg, rng).answer == NO for _ in range(20))


def test_exact_mode_matches_definitions() -> None:
    g, nodes = oracle.probe_fixture()
    cfg = ProbeConfig.practical(exact=True)
    rng = random.Random(0)
    u, v = nodes["close_pair"]
    assert bool(probabilistic_agreement(g, u, v, cfg, rng)) == exact_agreement(g, u, v, 0.2)
    u, v = nodes["far_pair"]
    assert bool(probabilistic_agreement(g, u, v, cfg, rng)) == exact_agreement(g, u, v, 0.2)
    assert bool(heavy_probe(g, nodes["heavy"], cfg, rng))
    assert not bool(heavy_probe(g, nodes["light"], cfg, rng))


def test_probe_calls_are_counted() -> None:
    g = clique(4)
    heavy_probe(g, 0, ProbeConfig.practical(), random.Random(0))
    assert g.counters.heavy_calls == 1
    assert g.counters.agreement_calls == 2


def test_theory_sample_counts() -> None:
    cfg = ProbeConfig.theory(1024, 0.2)
    assert cfg.agree_samples == 10_398
    assert cfg.heavy_samples == 41_589
    assert ProbeConfig.practical().agree_samples == 2


@pytest.mark.parametrize(
    "kwargs",
    [{"epsilon": 0.0}, {"epsilon": 1.0}, {"mode": "fast"}, {"practical_samples": 0},
     {"neighborhood_convention": "half"}],
)
def test_invalid_config(kwargs: dict) -> None:
    with pytest.raises(ValueError):
        ProbeConfig(**kwargs)


@pytest.mark.slow
def test_probe_sandwich_rates() -> None:
    for result in oracle.probe_sandwich(trials=60, seed=7):
        assert result.passed, result


@pytest.mark.acceptance
def test_probe_sandwich_full_trials() -> None:
    for result in oracle.probe_sandwich(trials=1000, seed=1):
        assert result.passed, result
