from __future__ import annotations

import math
import random

import pytest

import notify
import streams
from graph_store import DynamicGraph
from streams import StreamEvent


def apply(g: DynamicGraph, st: notify.NotifyState, ev: StreamEvent, rng: random.Random):
    if ev.kind == streams.INSERT:
        g.insert_node(ev.node, ev.edges)
    return notify.on_event(ev, g, st, rng)


def test_levels() -> None:
    assert [notify.level(d) for d in (1, 2, 3, 4, 7, 8, 1023, 1024)] == [0, 1, 1, 2, 2, 3, 9, 10]
    with pytest.raises(ValueError):
        notify.level(0)


def test_isolated_arrival_sends_nothing() -> None:
    g, st, rng = DynamicGraph(), notify.NotifyState(), random.Random(0)
    batch = apply(g, st, StreamEvent.insert(0), rng)
    assert batch.messages == []
    assert batch.interesting == {0}


def test_arrival_next_to_isolated_node() -> None:
    g, st, rng = DynamicGraph(), notify.NotifyState(), random.Random(0)
    apply(g, st, StreamEvent.insert(1), rng)
    batch = apply(g, st, StreamEvent.insert(0, [1]), rng)
    assert batch.messages == [(1, 0), (0, 1), (1, 2)]
    assert batch.interesting == {0, 1}
    assert st.sample_of(0) == {1}
    assert st.sample_of(1) == {0}
    assert st.check_invariants(g) == []


def test_delete_without_backpointers() -> None:
    g, st, rng = DynamicGraph(), notify.NotifyState(), random.Random(0)
    apply(g, st, StreamEvent.insert(0), rng)
    apply(g, st, StreamEvent.insert(1), rng)
    batch = apply(g, st, StreamEvent.delete(0), rng)
    assert batch.messages == []
    assert batch.interesting == set()
    assert 0 not in g


def test_delete_notifies_sample_holders() -> None:
    g, st, rng = DynamicGraph(), notify.NotifyState(), random.Random(0)
    apply(g, st, StreamEvent.insert(1), rng)
    apply(g, st, StreamEvent.insert(0, [1]), rng)
    batch = apply(g, st, StreamEvent.delete(1), rng)
    assert batch.recipients(0) == {0}
    assert batch.interesting == {0}
    assert st.sample_of(0) == set()
    assert st.check_invariants(g) == []


def test_resample_moves_to_new_level() -> None:
    g, st, rng = DynamicGraph(), notify.NotifyState(sample_size=8), random.Random(0)
    for v in (1, 2, 3, 4):
        g.insert_node(v, [])
    g.insert_node(0, [1, 2, 3])
    st.resample(0, g, rng)
    assert st.samples[0][0] == 1
    g.delete_node(4)
    g.insert_node(5, [0])
    st.resample(0, g, rng)
    assert st.samples[0][0] == 2
    for v in (1, 2, 3, 5):
        assert 1 not in st.backs.get(v, {})
    assert st.check_invariants(g) == []


def test_resample_of_isolated_node_clears_sample() -> None:
    g, st, rng = DynamicGraph(), notify.NotifyState(), random.Random(0)
    g.insert_node(1, [])
    g.insert_node(0, [1])
    st.resample(0, g, rng)
    g.delete_node(1)
    assert st.resample(0, g, rng) == set()
    assert st.sample_of(0) == set()


@pytest.mark.slow
def test_stream_keeps_backpointers_consistent_and_bounded() -> None:
    src = streams.planted_partition(6, 15, 0.7, 0.05, seed=3)
    g, st, rng = DynamicGraph(), notify.NotifyState(), random.Random(3)
    s = st.sample_size
    for ev in streams.gen_stream(src, 0.2, seed=3):
        batch = apply(g, st, ev, rng)
        if ev.kind == streams.INSERT:
            assert len(batch.messages) <= s + s ** 2 + s ** 3
        for target, _ in batch.messages:
            assert target in g
        assert st.check_invariants(g) == []


def _deletion_reach(degree: int, trials: int) -> int:
    """Trials in which node 0 hears about deletions of 30% of its neighbors."""
    s = notify.theory_sample_size(256, 0.2)
    nbrs = range(1, degree + 1)
    reached = 0
    for seed in range(trials):
        g, st = DynamicGraph(), notify.NotifyState(sample_size=s, cap_by_degree=True)
        rng = random.Random(seed)
        for v in nbrs:
            apply(g, st, StreamEvent.insert(v), rng)
        apply(g, st, StreamEvent.insert(0, nbrs), rng)
        got = False
        for v in rng.sample(nbrs, math.ceil(0.3 * degree)):
            batch = apply(g, st, StreamEvent.delete(v), rng)
            got = got or 0 in batch.recipients(0)
        reached += got
    return reached


def test_deleting_thirty_percent_of_neighbors_reaches_the_node() -> None:
    assert _deletion_reach(degree=20, trials=100) >= 95


@pytest.mark.acceptance
def test_deletion_awareness_on_256_nodes() -> None:
    assert _deletion_reach(degree=255, trials=200) >= 190
