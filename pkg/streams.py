"""Sources and node streams: edge lists, point clouds, planted partitions.

A source graph is turned into a stream of node arrivals in random order,
interleaved with random deletions of present nodes. Each arrival carries
its edges to the nodes present at that moment, so every stream replays
cleanly into an empty DynamicGraph.
"""

import math
import random
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

INSERT = "I"
DELETE = "D"


class StreamFormatError(ValueError):
    """Malformed input file. Carries the offending line number."""

    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class StreamEvent:
    kind: str
    node: int
    edges: tuple = ()

    @classmethod
    def insert(cls, node, edges=()):
        return cls(INSERT, node, tuple(edges))

    @classmethod
    def delete(cls, node):
        return cls(DELETE, node)


@dataclass
class SourceGraph:
    """Static graph on nodes 0..n-1 with edges stored as (u, v), u < v."""

    n: int
    edges: list = field(default_factory=list)
    points: object = None
    blocks: object = None     # planted block of each node, when known

    def adjacency(self):
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    @property
    def m(self):
        return len(self.edges)


# ─── Loaders ───


def load_edge_list(path):
    """Read whitespace-separated integer pairs; '#' starts a comment.

    Ids are compacted to 0..n-1 in sorted order, duplicates and reversed
    pairs collapse, self-loops are dropped but still register the node.
    """
    raw = []
    ids = set()
    with open(path) as f:
        for line_no, line in enumerate(f, 1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            parts = text.split()
            if len(parts) < 2:
                raise StreamFormatError(line_no, f"expected two node ids, got {text!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise StreamFormatError(line_no, f"non-integer node id in {text!r}")
            ids.add(u)
            ids.add(v)
            raw.append((u, v))
    index = {x: i for i, x in enumerate(sorted(ids))}
    edges = set()
    for u, v in raw:
        if u == v:
            continue
        a, b = index[u], index[v]
        edges.add((min(a, b), max(a, b)))
    return SourceGraph(len(index), sorted(edges))


def load_points(path):
    """Read one point per line as whitespace-separated reals."""
    rows = []
    dim = None
    with open(path) as f:
        for line_no, line in enumerate(f, 1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                row = [float(x) for x in text.replace(",", " ").split()]
            except ValueError:
                raise StreamFormatError(line_no, f"non-numeric coordinate in {text!r}")
            if dim is None:
                dim = len(row)
            elif len(row) != dim:
                raise StreamFormatError(line_no, f"dimension mismatch: {len(row)} != {dim}")
            rows.append(row)
    return np.asarray(rows, dtype=float).reshape(len(rows), dim or 0)


# ─── Generators ───


def _as_points(points):
    if isinstance(points, np.ndarray):
        arr = points.astype(float)
    else:
        points = list(points)
        if points and all(np.ndim(p) == 0 for p in points):
            arr = np.asarray(points, dtype=float)
        else:
            dims = {len(p) for p in points}
            if len(dims) > 1:
                raise ValueError(f"dimension mismatch: {sorted(dims)}")
            arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    return arr


def threshold_graph(points, tau):
    """Edge (i, j) iff ‖p_i − p_j‖ < τ (strict)."""
    arr = _as_points(points)
    n = len(arr)
    if n < 2 or tau <= 0:
        return SourceGraph(n, [], points=arr)
    if math.isinf(tau):
        return SourceGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)], points=arr)
    tree = cKDTree(arr)
    pairs = tree.query_pairs(r=tau, output_type="ndarray")
    if len(pairs):
        dist = np.linalg.norm(arr[pairs[:, 0]] - arr[pairs[:, 1]], axis=1)
        pairs = pairs[dist < tau]
    edges = sorted((int(min(a, b)), int(max(a, b))) for a, b in pairs)
    return SourceGraph(n, edges, points=arr)


def planted_partition(k, s, p_in, p_out, seed=0):
    """k blocks of s nodes; same-block pairs link w.p. p_in, others w.p. p_out."""
    for name, p in (("p_in", p_in), ("p_out", p_out)):
        if not 0 <= p <= 1:
            raise ValueError(f"{name} must be in [0, 1], got {p}")
    if k < 0 or s < 0:
        raise ValueError("block count and size must be non-negative")
    n = k * s
    rng = np.random.default_rng(seed)
    blocks = np.repeat(np.arange(k), s)
    if n < 2:
        return SourceGraph(n, [], blocks=blocks)
    probs = np.where(blocks[:, None] == blocks[None, :], p_in, p_out)
    draws = rng.random((n, n))
    hits = np.argwhere(np.triu(draws < probs, 1))
    edges = [(int(a), int(b)) for a, b in hits]
    return SourceGraph(n, edges, blocks=blocks)


def gaussian_points(n, dim, centers, spread=1.0, box=10.0, seed=0):
    """n points around `centers` uniform random centers in a box."""
    rng = np.random.default_rng(seed)
    mu = rng.uniform(-box, box, size=(centers, dim))
    which = rng.integers(0, centers, size=n)
    return mu[which] + rng.normal(0.0, spread, size=(n, dim))


def gen_stream(src, p_delete, seed=0, geometric=False):
    """Random-order arrivals of every source node with random deletions.

    Before each arrival one coin with probability p_delete removes a
    uniformly random present node (geometric=True keeps flipping until the
    coin fails). When p_delete > 0 the nodes still present after the last
    arrival are deleted in random order; p_delete = 0 gives a pure
    insertion stream.
    """
    if not 0 <= p_delete < 1:
        raise ValueError(f"p_delete must be in [0, 1), got {p_delete}")
    rng = random.Random(seed)
    adj = src.adjacency()
    order = list(range(src.n))
    rng.shuffle(order)
    present = []
    slot = {}
    events = []

    def drop_random():
        i = rng.randrange(len(present))
        u = present[i]
        last = present.pop()
        if last != u:
            present[i] = last
            slot[last] = i
        del slot[u]
        events.append(StreamEvent.delete(u))

    for u in order:
        while present and rng.random() < p_delete:
            drop_random()
            if not geometric:
                break
        edges = tuple(sorted(v for v in adj[u] if v in slot))
        events.append(StreamEvent.insert(u, edges))
        slot[u] = len(present)
        present.append(u)
    if p_delete > 0:
        rng.shuffle(present)
        for u in present:
            events.append(StreamEvent.delete(u))
    return events


# ─── Stream files ───


def write_stream(events, path):
    """One event per line: 'I <id> <nbr>...' or 'D <id>'."""
    with open(path, "w") as f:
        for ev in events:
            if ev.kind == INSERT:
                f.write(" ".join(["I", str(ev.node), *map(str, ev.edges)]) + "\n")
            else:
                f.write(f"D {ev.node}\n")


def read_stream(path):
    events = []
    with open(path) as f:
        for line_no, line in enumerate(f, 1):
            parts = line.split()
            if not parts:
                continue
            try:
                ids = [int(x) for x in parts[1:]]
            except ValueError:
                raise StreamFormatError(line_no, f"non-integer id in {line.strip()!r}")
            if parts[0] == INSERT and ids:
                events.append(StreamEvent.insert(ids[0], ids[1:]))
            elif parts[0] == DELETE and len(ids) == 1:
                events.append(StreamEvent.delete(ids[0]))
            else:
                raise StreamFormatError(line_no, f"bad event {line.strip()!r}")
    return events
