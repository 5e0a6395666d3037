"""Dynamic undirected graph under node insertions and deletions.

Neighbor sets are dense lists plus a position index so that membership,
insertion, swap-removal and uniform sampling are all O(1). Every query the
algorithms make goes through DynamicGraph and is charged to a Counters
instance, which is how the bench measures query cost.
"""

from state import Counters

# GraphError codes
DUPLICATE_ID = "duplicate-id"
UNKNOWN_NEIGHBOR = "unknown-neighbor"
SELF_LOOP = "self-loop"
DUPLICATE_NEIGHBOR = "duplicate-neighbor"
UNKNOWN_ID = "unknown-id"
ZERO_DEGREE = "zero-degree"


class GraphError(Exception):
    """Raised on an invalid update or query. `code` is one of the module constants."""

    def __init__(self, code, message):
        super().__init__(f"{code}: {message}")
        self.code = code


class NeighborSet:
    """Dense list + index map. Removal swaps the last item into the hole."""

    __slots__ = ("items", "pos")

    def __init__(self, items=()):
        self.items = []
        self.pos = {}
        for x in items:
            self.add(x)

    def add(self, x):
        if x in self.pos:
            return False
        self.pos[x] = len(self.items)
        self.items.append(x)
        return True

    def remove(self, x):
        i = self.pos.pop(x)
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i

    def pick(self, rng):
        return self.items[rng.randrange(len(self.items))]

    def __contains__(self, x):
        return x in self.pos

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


class DynamicGraph:
    """Simple undirected graph over integer node ids. Ids are never reused."""

    def __init__(self, counters=None):
        self.counters = counters if counters is not None else Counters()
        self._adj = {}
        self._retired = set()
        self.edge_count = 0

    @classmethod
    def from_edges(cls, n, edges, counters=None):
        """Graph on nodes 0..n-1, inserted in id order."""
        earlier = [set() for _ in range(n)]
        for u, v in edges:
            a, b = min(u, v), max(u, v)
            earlier[b].add(a)
        g = cls(counters)
        for u in range(n):
            g.insert_node(u, sorted(earlier[u]))
        return g

    # ─── Updates ───

    def insert_node(self, u, neighbors):
        """Add node u with edges to the given present nodes."""
        if u in self._adj or u in self._retired:
            raise GraphError(DUPLICATE_ID, f"node {u} was already inserted")
        seen = set()
        for v in neighbors:
            if v == u:
                raise GraphError(SELF_LOOP, f"node {u} lists itself")
            if v in seen:
                raise GraphError(DUPLICATE_NEIGHBOR, f"node {u} lists {v} twice")
            if v not in self._adj:
                raise GraphError(UNKNOWN_NEIGHBOR, f"node {u} lists absent node {v}")
            seen.add(v)
        hood = NeighborSet()
        for v in neighbors:
            hood.add(v)
            self._adj[v].add(u)
        self._adj[u] = hood
        self.edge_count += len(hood)

    def delete_node(self, u):
        """Remove node u and its incident edges. Returns the former neighbors."""
        hood = self._adj.pop(u, None)
        if hood is None:
            raise GraphError(UNKNOWN_ID, f"node {u} is not present")
        former = list(hood.items)
        for v in former:
            self._adj[v].remove(u)
        self.edge_count -= len(former)
        self._retired.add(u)
        return former

    # ─── Queries (charged) ───

    def _hood(self, u):
        hood = self._adj.get(u)
        if hood is None:
            raise GraphError(UNKNOWN_ID, f"node {u} is not present")
        return hood

    def degree(self, u):
        self.counters.degree_queries += 1
        return len(self._hood(u))

    def has_edge(self, u, v):
        self.counters.edge_queries += 1
        hood = self._hood(u)
        self._hood(v)
        return v in hood

    def sample_neighbor(self, u, rng):
        """Uniform random neighbor of u."""
        self.counters.sample_queries += 1
        hood = self._hood(u)
        if not hood:
            raise GraphError(ZERO_DEGREE, f"node {u} has no neighbors")
        return hood.pick(rng)

    def neighbors(self, u):
        """Snapshot of N(u). Charged as degree(u) queries."""
        hood = self._hood(u)
        self.counters.neighborhood_reads += len(hood)
        return list(hood.items)

    # ─── Uncharged views (baselines, cost, checks) ───

    def __contains__(self, u):
        return u in self._adj

    def __len__(self):
        return len(self._adj)

    def nodes(self):
        return list(self._adj)

    def adjacency(self, u):
        """Live neighbor set of u without charging a query."""
        return self._hood(u)

    def edges(self):
        for u, hood in self._adj.items():
            for v in hood:
                if u < v:
                    yield u, v

    def check_invariants(self):
        """Return a list of violated structural invariants (empty when sound)."""
        problems = []
        total = 0
        for u, hood in self._adj.items():
            if len(hood.items) != len(hood.pos):
                problems.append(f"node {u}: list/index size mismatch")
            for i, v in enumerate(hood.items):
                if hood.pos.get(v) != i:
                    problems.append(f"node {u}: index of {v} is stale")
                if v == u:
                    problems.append(f"node {u}: self-loop")
                elif v not in self._adj:
                    problems.append(f"node {u}: neighbor {v} is absent")
                elif u not in self._adj[v]:
                    problems.append(f"edge {u}-{v} is not symmetric")
            total += len(hood)
        if total != 2 * self.edge_count:
            problems.append(f"edge count {self.edge_count} != {total // 2}")
        return problems
