from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

import baselines
import oracle
import streams
from graph_store import DynamicGraph


def graph(n: int, edges: list[tuple[int, int]]) -> DynamicGraph:
    return DynamicGraph.from_edges(n, edges)


TRIANGLE = [(0, 1), (1, 2), (0, 2)]
STAR = [(0, 1), (0, 2), (0, 3)]


def test_cost_triangle_one_cluster() -> None:
    c = baselines.cost(graph(3, TRIANGLE), {0: 0, 1: 0, 2: 0})
    assert (c.cross_positive, c.intra_negative, c.total) == (0, 0, 0)


def test_cost_triangle_singletons() -> None:
    g = graph(3, TRIANGLE)
    assert baselines.cost(g, baselines.singletons(g)).total == 3


def test_cost_path_in_one_cluster() -> None:
    c = baselines.cost(graph(3, [(0, 1), (1, 2)]), {0: 0, 1: 0, 2: 0})
    assert (c.cross_positive, c.intra_negative) == (0, 1)


def test_cost_needs_every_label() -> None:
    with pytest.raises(ValueError):
        baselines.cost(graph(3, TRIANGLE), {0: 0, 1: 0})


def test_relative_objective() -> None:
    c = baselines.CostBreakdown(2, 1)
    assert c.relative_to(baselines.CostBreakdown(6, 0)) == 0.5
    assert baselines.CostBreakdown(0, 0).relative_to(baselines.CostBreakdown(0, 0)) == 1.0


def test_static_agreement_separates_disjoint_cliques() -> None:
    edges = [(a, b) for block in (range(0, 4), range(4, 8)) for a, b in itertools.combinations(block, 2)]
    labels = baselines.static_agreement(graph(9, edges), 0.2)
    assert labels.partition() == frozenset(
        {frozenset(range(0, 4)), frozenset(range(4, 8)), frozenset({8})}
    )


def test_static_agreement_drops_bridge_between_cliques() -> None:
    edges = [(a, b) for block in (range(0, 10), range(10, 20)) for a, b in itertools.combinations(block, 2)]
    edges.append((0, 10))
    labels = baselines.static_agreement(graph(20, edges), 0.2)
    assert labels[0] != labels[10]
    assert len(labels.clusters()) == 2


def test_structural_bounds_on_planted_cliques() -> None:
    blocks = [range(i * 40, (i + 1) * 40) for i in range(4)]
    edges = [(a, b) for block in blocks for a, b in itertools.combinations(block, 2)]
    edges += [(i, 40 + i) for i in range(5)]
    g = graph(160, edges)
    labels = baselines.static_agreement(g, 0.05)
    assert len(labels.clusters()) == 4
    assert set(baselines.structural_report(g, labels, 0.05).values()) == {0}
    assert baselines.dense_violations(g, labels) == []


def test_pivot_star_expectation_over_all_orders() -> None:
    g = graph(4, STAR)
    costs = [baselines.cost(g, baselines.pivot_with_order(g, order)).total
             for order in itertools.permutations(range(4))]
    assert sum(costs) / len(costs) == pytest.approx(2.25)


def test_pivot_within_three_times_opt() -> None:
    rng = random.Random(0)
    for gseed in range(3):
        h = nx.gnp_random_graph(8, 0.5, seed=gseed)
        g = graph(8, list(h.edges()))
        _, opt = baselines.brute_force_opt(g)
        mean = sum(baselines.cost(g, baselines.pivot(g, rng)).total for _ in range(10_000)) / 10_000
        assert mean <= 3 * opt.total + 1e-9


def test_brute_force_small_cases() -> None:
    assert baselines.brute_force_opt(graph(3, TRIANGLE))[1].total == 0
    assert baselines.brute_force_opt(graph(3, [(0, 1), (1, 2)]))[1].total == 1
    two_triangles = TRIANGLE + [(3, 4), (4, 5), (3, 5), (2, 3)]
    labels, c = baselines.brute_force_opt(graph(6, two_triangles))
    assert c.total == 1
    assert labels.partition() == frozenset({frozenset({0, 1, 2}), frozenset({3, 4, 5})})


def test_brute_force_rejects_large_graphs() -> None:
    with pytest.raises(ValueError, match="too-large"):
        baselines.brute_force_opt(graph(11, []))


def test_set_partition_count_is_bell_number() -> None:
    assert [len(baselines._set_partitions(n)) for n in range(1, 7)] == [1, 2, 5, 15, 52, 203]


def test_dynamic_pivot_matches_offline_pivot() -> None:
    result = oracle.pivot_suite(trials=30, seed=4)[0]
    assert result.passed


def test_deleting_non_pivot_reassigns_nothing() -> None:
    for seed in range(50):
        pd = baselines.DynamicPivot(random.Random(seed))
        pd.insert(0, [])
        for leaf in range(1, 6):
            pd.insert(leaf, [0])
        followers = [u for u, p in pd.owner.items() if p != u]
        if followers:
            break
    before = pd.reassignments
    pd.delete(followers[0])
    assert pd.reassignments == before
    assert pd.labels().same_partition(baselines.pivot_with_order(pd.graph, pd.order()))


def test_dynamic_pivot_counts_touched_nodes() -> None:
    src = streams.planted_partition(3, 10, 0.9, 0.05, seed=0)
    pd = baselines.DynamicPivot(random.Random(0))
    for ev in streams.gen_stream(src, 0.2, seed=0):
        pd.apply(ev)
    assert pd.touched > 0
    assert len(pd.graph) == 0


def test_dense_predicate_uses_open_neighborhood() -> None:
    k4 = graph(4, list(itertools.combinations(range(4), 2)))
    assert baselines.dense_violations(k4, {u: 0 for u in range(4)}) == []
    # every node of a 4-cycle sees 2 of the 4 members, short of 3
    c4 = graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert baselines.dense_violations(c4, {u: 0 for u in range(4)}) == [0, 1, 2, 3]
    triangle = graph(3, [(0, 1), (1, 2), (0, 2)])
    assert baselines.dense_violations(triangle, {0: 0, 1: 0, 2: 0}) == [0, 1, 2]
    assert baselines.dense_violations(triangle, {0: 0, 1: 1, 2: 2}) == []
