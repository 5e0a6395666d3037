from __future__ import annotations

import random

import pytest
from scipy.stats import chisquare

from graph_store import (
    DUPLICATE_ID,
    DUPLICATE_NEIGHBOR,
    SELF_LOOP,
    UNKNOWN_ID,
    UNKNOWN_NEIGHBOR,
    ZERO_DEGREE,
    DynamicGraph,
    GraphError,
)


def test_insert_into_empty_graph() -> None:
    g = DynamicGraph()
    g.insert_node(7, [])
    assert 7 in g
    assert g.degree(7) == 0
    assert g.edge_count == 0


def test_insert_then_delete_middle_node() -> None:
    g = DynamicGraph()
    g.insert_node(1, [])
    g.insert_node(2, [1])
    g.insert_node(3, [1, 2])
    assert g.degree(1) == 2
    former = g.delete_node(2)
    assert sorted(former) == [1, 3]
    assert g.degree(1) == 1
    assert g.has_edge(1, 3)
    assert g.edge_count == 1
    assert g.check_invariants() == []


def test_has_edge_with_self_is_false() -> None:
    g = DynamicGraph()
    g.insert_node(0, [])
    assert g.has_edge(0, 0) is False


@pytest.mark.parametrize(
    "node, nbrs, code",
    [
        (0, [], DUPLICATE_ID),
        (5, [9], UNKNOWN_NEIGHBOR),
        (5, [5], SELF_LOOP),
        (5, [0, 0], DUPLICATE_NEIGHBOR),
    ],
)
def test_insert_errors(node: int, nbrs: list[int], code: str) -> None:
    g = DynamicGraph()
    g.insert_node(0, [])
    with pytest.raises(GraphError) as info:
        g.insert_node(node, nbrs)
    assert info.value.code == code
    assert g.check_invariants() == []
    assert len(g) == 1


def test_deleted_ids_are_never_reused() -> None:
    g = DynamicGraph()
    g.insert_node(0, [])
    g.delete_node(0)
    with pytest.raises(GraphError) as info:
        g.insert_node(0, [])
    assert info.value.code == DUPLICATE_ID


def test_queries_on_absent_node() -> None:
    g = DynamicGraph()
    with pytest.raises(GraphError) as info:
        g.delete_node(3)
    assert info.value.code == UNKNOWN_ID
    with pytest.raises(GraphError):
        g.degree(3)


def test_sample_from_isolated_node() -> None:
    g = DynamicGraph()
    g.insert_node(0, [])
    with pytest.raises(GraphError) as info:
        g.sample_neighbor(0, random.Random(0))
    assert info.value.code == ZERO_DEGREE


def test_queries_are_counted() -> None:
    g = DynamicGraph()
    g.insert_node(0, [])
    g.insert_node(1, [0])
    g.degree(0)
    g.has_edge(0, 1)
    g.sample_neighbor(1, random.Random(0))
    g.neighbors(0)
    c = g.counters
    assert (c.degree_queries, c.edge_queries, c.sample_queries, c.neighborhood_reads) == (1, 1, 1, 1)
    assert c.queries == 4


def test_two_neighbor_sampling_is_balanced() -> None:
    g = DynamicGraph()
    g.insert_node(0, [])
    g.insert_node(1, [])
    g.insert_node(2, [0, 1])
    rng = random.Random(11)
    hits = sum(1 for _ in range(10_000) if g.sample_neighbor(2, rng) == 0)
    assert 0.45 <= hits / 10_000 <= 0.55


def test_star_sampling_is_uniform() -> None:
    g = DynamicGraph()
    g.insert_node(0, [])
    for leaf in range(1, 9):
        g.insert_node(leaf, [0])
    rng = random.Random(3)
    counts = [0] * 8
    for _ in range(10_000):
        counts[g.sample_neighbor(0, rng) - 1] += 1
    assert chisquare(counts).pvalue > 0.001


def test_sampling_stays_uniform_after_swap_removals() -> None:
    g = DynamicGraph()
    g.insert_node(0, [])
    for leaf in range(1, 13):
        g.insert_node(leaf, [0])
    for leaf in (1, 5, 12, 7):
        g.delete_node(leaf)
    rng = random.Random(5)
    alive = sorted(g.adjacency(0))
    counts = dict.fromkeys(alive, 0)
    for _ in range(8_000):
        counts[g.sample_neighbor(0, rng)] += 1
    assert chisquare(list(counts.values())).pvalue > 0.001


@pytest.mark.slow
def test_random_update_fuzz_keeps_invariants() -> None:
    rng = random.Random(2024)
    g = DynamicGraph()
    next_id = 0
    for _ in range(100_000):
        present = g.nodes()
        if present and (len(present) > 24 or rng.random() < 0.45):
            g.delete_node(rng.choice(present))
        else:
            nbrs = [v for v in present if rng.random() < 0.3]
            g.insert_node(next_id, nbrs)
            next_id += 1
        assert g.check_invariants() == []
