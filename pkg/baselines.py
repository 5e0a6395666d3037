"""Reference clusterings and the disagreement objective.

Static agreement decomposition, Pivot, a dynamic Pivot stand-in with
lazily repaired clusters, singletons and exhaustive OPT on tiny graphs.
"""

import heapq
from dataclasses import dataclass

import networkx as nx
import numpy as np

import config
from extraction import ClusterLabels
from graph_store import DynamicGraph
from streams import INSERT, DELETE


# ─── Objective ───


@dataclass(frozen=True)
class CostBreakdown:
    cross_positive: int
    intra_negative: int

    @property
    def total(self):
        return self.cross_positive + self.intra_negative

    def relative_to(self, other):
        """total / other.total, with 0/0 read as 1."""
        if other.total == 0:
            return 1.0 if self.total == 0 else float("inf")
        return self.total / other.total


def _label_map(labels):
    return labels.labels if isinstance(labels, ClusterLabels) else labels


def cost(g, labels):
    """Edges cut between clusters plus missing pairs inside clusters."""
    lab = _label_map(labels)
    sizes = {}
    for u in g.nodes():
        if u not in lab:
            raise ValueError(f"node {u} has no cluster label")
        sizes[lab[u]] = sizes.get(lab[u], 0) + 1
    cross = 0
    inside = 0
    for u, v in g.edges():
        if lab[u] == lab[v]:
            inside += 1
        else:
            cross += 1
    pairs = sum(s * (s - 1) // 2 for s in sizes.values())
    return CostBreakdown(cross, pairs - inside)


def _components(nodes, edges):
    h = nx.Graph()
    h.add_nodes_from(nodes)
    h.add_edges_from(edges)
    labels = {}
    for i, comp in enumerate(sorted(nx.connected_components(h), key=min)):
        for u in comp:
            labels[u] = i
    return ClusterLabels(labels)


def singletons(g):
    return ClusterLabels({u: u for u in g.nodes()})


# ─── Static agreement decomposition ───


def static_agreement(g, epsilon=config.EPSILON, convention=config.NEIGHBORHOOD):
    """Drop non-agreeing edges and light-light edges; components are clusters."""
    closed = convention == "closed"
    nodes = g.nodes()
    hood = {}
    for u in nodes:
        h = set(g.adjacency(u))
        if closed:
            h.add(u)
        hood[u] = h
    agreeing = {u: 0 for u in nodes}
    kept = []
    for u, v in g.edges():
        a, b = hood[u], hood[v]
        if len(a ^ b) < epsilon * max(len(a), len(b)):
            agreeing[u] += 1
            agreeing[v] += 1
            kept.append((u, v))
    heavy = {u: agreeing[u] > (1 - epsilon) * len(g.adjacency(u)) for u in nodes if len(g.adjacency(u))}
    kept = [(u, v) for u, v in kept if heavy.get(u) or heavy.get(v)]
    return _components(nodes, kept)


def structural_report(g, labels, epsilon, convention=config.NEIGHBORHOOD):
    """Count violations of the neighborhood/cluster bounds that hold for
    every non-trivial cluster C of the agreement decomposition.

    Keys: 'hood_in_cluster' |N(u) ∩ C| ≥ (1−3ε)|N(u)|,
    'cluster_size' |C| ≥ (1−3ε)|N(u)|, 'cluster_in_hood' |N(u) ∩ C| ≥ (1−9ε)|C|,
    'pair_overlap' |N(u) ∩ N(v)| ≥ (1−5ε)·max, 'pair_degree' degrees within
    a (1−5ε) factor, 'pair_meet' N(u) ∩ N(v) ≠ ∅.
    """
    closed = convention == "closed"
    report = dict.fromkeys(
        ("hood_in_cluster", "cluster_size", "cluster_in_hood",
         "pair_overlap", "pair_degree", "pair_meet"), 0)

    def hood(u):
        h = set(g.adjacency(u))
        if closed:
            h.add(u)
        return h

    for cluster in _label_map_clusters(labels):
        if len(cluster) < 2:
            continue
        hoods = {u: hood(u) for u in cluster}
        for u in cluster:
            nu = hoods[u]
            inside = len(nu & cluster)
            if inside < (1 - 3 * epsilon) * len(nu):
                report["hood_in_cluster"] += 1
            if len(cluster) < (1 - 3 * epsilon) * len(nu):
                report["cluster_size"] += 1
            if inside < (1 - 9 * epsilon) * len(cluster):
                report["cluster_in_hood"] += 1
        members = sorted(cluster)
        for i, u in enumerate(members):
            for v in members[i + 1:]:
                nu, nv = hoods[u], hoods[v]
                common = len(nu & nv)
                if common < (1 - 5 * epsilon) * max(len(nu), len(nv)):
                    report["pair_overlap"] += 1
                if not (len(nv) * (1 - 5 * epsilon) <= len(nu) <= len(nv) / (1 - 5 * epsilon)):
                    report["pair_degree"] += 1
                if common == 0:
                    report["pair_meet"] += 1
    return report


def _label_map_clusters(labels):
    if isinstance(labels, ClusterLabels):
        return labels.clusters()
    groups = {}
    for u, c in labels.items():
        groups.setdefault(c, set()).add(u)
    return list(groups.values())


def dense_violations(g, labels):
    """Nodes u in a non-trivial cluster C with |N(u) ∩ C| < ¾|C|.

    N(u) is the open neighborhood, so u does not count toward its own cluster
    and a cluster of two or three nodes can never pass.
    """
    out = []
    for cluster in _label_map_clusters(labels):
        if len(cluster) < 2:
            continue
        for u in cluster:
            if len(cluster.intersection(g.adjacency(u))) < 0.75 * len(cluster):
                out.append(u)
    return sorted(out)


# ─── Pivot ───


def pivot_with_order(g, order):
    """Greedy Pivot: each unclustered node in `order` takes its unclustered neighbors."""
    labels = {}
    for p in order:
        if p in labels:
            continue
        labels[p] = p
        for v in g.adjacency(p):
            if v not in labels:
                labels[v] = p
    return ClusterLabels(labels)


def pivot(g, rng):
    order = sorted(g.nodes())
    rng.shuffle(order)
    return pivot_with_order(g, order)


class DynamicPivot:
    """Pivot under node updates with fixed random priorities.

    A node is a pivot iff no lower-priority-value neighbor is a pivot;
    otherwise it joins its smallest-priority pivot neighbor. Updates repair
    only the nodes whose status can change, in priority order, so the
    clustering always equals offline Pivot run in priority order.
    `touched` counts node visits made by repairs.
    """

    def __init__(self, rng, graph=None):
        self.rng = rng
        self.graph = graph if graph is not None else DynamicGraph()
        self.priority = {}
        self.owner = {}          # node -> its pivot
        self.members = {}        # pivot -> nodes it holds (itself included)
        self.touched = 0
        self.reassignments = 0

    def _key(self, u):
        return (self.priority[u], u)

    def _status(self, u):
        """Pivot owning u given the current status of earlier nodes."""
        self.touched += 1
        ku = self._key(u)
        best = None
        for v in self.graph.adjacency(u):
            self.touched += 1
            kv = self._key(v)
            if kv < ku and self.owner.get(v) == v and (best is None or kv < self._key(best)):
                best = v
        return u if best is None else best

    def _assign(self, u, p):
        old = self.owner.get(u)
        if old == p:
            return False
        if old is not None:
            self.members[old].discard(u)
            if not self.members[old]:
                del self.members[old]
        self.owner[u] = p
        self.members.setdefault(p, set()).add(u)
        self.reassignments += 1
        return True

    def _repair(self, seeds):
        heap = [(self._key(u), u) for u in seeds]
        heapq.heapify(heap)
        queued = set(seeds)
        while heap:
            _, u = heapq.heappop(heap)
            queued.discard(u)
            if u not in self.graph:
                continue
            was_pivot = self.owner.get(u) == u
            p = self._status(u)
            self._assign(u, p)
            if (p == u) != was_pivot:
                ku = self._key(u)
                for v in self.graph.adjacency(u):
                    if self._key(v) > ku and v not in queued:
                        queued.add(v)
                        heapq.heappush(heap, (self._key(v), v))

    def insert(self, u, neighbors):
        self.graph.insert_node(u, neighbors)
        self.priority[u] = self.rng.random()
        self._repair([u])

    def delete(self, u):
        was_pivot = self.owner.get(u) == u
        held = sorted(self.members.get(u, ())) if was_pivot else []
        p = self.owner.pop(u, None)
        if p is not None and p in self.members:
            self.members[p].discard(u)
            if not self.members[p]:
                del self.members[p]
        self.members.pop(u, None)
        self.graph.delete_node(u)
        self.priority.pop(u, None)
        for v in held:
            if v != u:
                self.owner.pop(v, None)
        self._repair([v for v in held if v != u])

    def apply(self, event):
        if event.kind == INSERT:
            self.insert(event.node, event.edges)
        elif event.kind == DELETE:
            self.delete(event.node)
        else:
            raise ValueError(f"unknown event kind {event.kind!r}")

    def order(self):
        return sorted(self.graph.nodes(), key=self._key)

    def labels(self):
        return ClusterLabels(dict(self.owner))


# ─── Exhaustive optimum ───


def _set_partitions(n):
    """All restricted growth strings of length n."""
    if n == 0:
        return [[]]
    out = []
    a = [0] * n

    def grow(i, top):
        if i == n:
            out.append(list(a))
            return
        for c in range(top + 2):
            a[i] = c
            grow(i + 1, max(top, c))

    a[0] = 0
    grow(1, 0)
    return out


def brute_force_opt(g):
    """Exact minimum-cost clustering by enumerating all set partitions."""
    nodes = sorted(g.nodes())
    n = len(nodes)
    if n > config.BRUTE_FORCE_MAX_NODES:
        raise ValueError(f"too-large: brute force supports at most "
                         f"{config.BRUTE_FORCE_MAX_NODES} nodes, got {n}")
    if n == 0:
        return ClusterLabels({}), CostBreakdown(0, 0)
    parts = np.asarray(_set_partitions(n), dtype=np.int8)
    index = {u: i for i, u in enumerate(nodes)}
    scores = np.zeros(len(parts), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            same = parts[:, i] == parts[:, j]
            if nodes[j] in g.adjacency(nodes[i]):
                scores += ~same
            else:
                scores += same
    best = parts[int(np.argmin(scores))]
    labels = ClusterLabels({u: int(best[index[u]]) for u in nodes})
    return labels, cost(g, labels)
