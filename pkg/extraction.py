"""Clustering read-out: connected components of the sparse solution.

compute_components labels G̃ in O(|V|) label assignments by flooding only
the neighborhoods of anchors, which is exact when every node is covered by
an anchor and anchors of one component share sparse neighbors.
components_bfs is the plain BFS answer used to check it.
"""

import csv
from dataclasses import dataclass, field

import networkx as nx


@dataclass
class ClusterLabels:
    labels: dict = field(default_factory=dict)
    assignments: int = 0          # label writes made while computing
    uncovered: list = field(default_factory=list)

    def __getitem__(self, u):
        return self.labels[u]

    def __len__(self):
        return len(self.labels)

    def clusters(self):
        groups = {}
        for u, c in self.labels.items():
            groups.setdefault(c, set()).add(u)
        return list(groups.values())

    def partition(self):
        """Label-free view for comparing clusterings."""
        return frozenset(frozenset(c) for c in self.clusters())

    def same_partition(self, other):
        return self.partition() == other.partition()

    def to_csv(self, path):
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["node", "cluster"])
            for u in sorted(self.labels):
                w.writerow([u, self.labels[u]])


def compute_components(sol, present):
    """Label the present nodes by their G̃ component.

    Anchors are taken in ascending id order. Each one not yet reached takes
    a fresh id and floods its sparse neighbors; on reaching a labeled node
    the nodes flooded so far switch to that label and the flood stops.
    Unlabeled non-anchors then copy the label of their smallest anchor, and
    anything still unlabeled becomes a singleton and is reported uncovered.
    """
    present = list(present)
    members = set(present)
    f = dict.fromkeys(present, -1)
    assignments = 0
    next_id = 0
    removed = set()
    for u in sorted(a for a in sol.anchors if a in members):
        if u in removed:
            continue
        f[u] = next_id
        assignments += 1
        flooded = [u]
        for v in sorted(sol.neighbors(u)):
            if v not in members:
                continue
            if f[v] == -1:
                f[v] = next_id
                assignments += 1
                flooded.append(v)
            else:
                target = f[v]
                for x in flooded:
                    f[x] = target
                    assignments += 1
                break
        next_id += 1
        removed.update(flooded)

    uncovered = []
    for v in sorted(present):
        if f[v] != -1:
            continue
        phi = sorted(a for a in sol.phi_of(v) if a in members)
        if phi:
            f[v] = f[phi[0]]
        else:
            f[v] = next_id
            next_id += 1
            uncovered.append(v)
        assignments += 1
    return ClusterLabels(f, assignments, uncovered)


def _sparse_graph(sol, present):
    h = nx.Graph()
    h.add_nodes_from(present)
    members = set(present)
    h.add_edges_from((u, v) for u, v in sol.edges() if u in members and v in members)
    return h


def components_bfs(sol, present):
    """Exact components of G̃ restricted to the present nodes."""
    h = _sparse_graph(sol, present)
    labels = {}
    for i, comp in enumerate(sorted(nx.connected_components(h), key=min)):
        for u in comp:
            labels[u] = i
    return ClusterLabels(labels)


def check_preconditions(sol, present):
    """Conditions under which compute_components is exact.

    Returns a list of problems: nodes covered by no anchor, and anchor
    pairs in one component whose sparse neighborhoods are disjoint.
    """
    h = _sparse_graph(sol, present)
    problems = []
    for v in sorted(h.nodes):
        if v not in sol.anchors and not any(a in sol.anchors for a in h[v]):
            problems.append(f"node {v} is not covered by an anchor")
    for comp in nx.connected_components(h):
        anchors = sorted(a for a in comp if a in sol.anchors)
        for i, a in enumerate(anchors):
            for b in anchors[i + 1:]:
                if not (set(h[a]) & set(h[b])):
                    problems.append(f"anchors {a} and {b} share no sparse neighbor")
    return problems
