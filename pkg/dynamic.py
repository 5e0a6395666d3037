"""Dynamic Agreement: maintain a sparse anchor solution under node updates.

The world holds the input graph, the notification state and a sparse
solution G̃ = (V, Ẽ) with an anchor set Φ. After each event only the
interesting nodes are revisited, each with Clean → Anchor → Connect. The
clustering is read off G̃ by extraction.compute_components.
"""

import math
import random
from dataclasses import dataclass, field, replace

import config
import extraction
import notify
import state
from graph_store import DynamicGraph
from probes import ProbeConfig, Probes
from streams import INSERT, DELETE


@dataclass(frozen=True)
class DccConfig:
    probe: ProbeConfig = field(default_factory=ProbeConfig)
    anchor_numerator: float = config.ANCHOR_NUMERATOR
    connect_samples: int = config.PRACTICAL_SAMPLES
    notify_samples: int = config.PRACTICAL_SAMPLES
    cap_samples_by_degree: bool = False
    phi_scan: int | None = config.PHI_SCAN
    deferred_phi: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.anchor_numerator <= 0:
            raise ValueError("anchor_numerator must be positive")
        if self.connect_samples < 1 or self.notify_samples < 1:
            raise ValueError("sample sizes must be >= 1")
        if self.phi_scan is not None and self.phi_scan < 1:
            raise ValueError("phi_scan must be >= 1 or None")

    @property
    def epsilon(self):
        return self.probe.epsilon

    @classmethod
    def practical(cls, epsilon=config.EPSILON, seed=0, convention=config.NEIGHBORHOOD,
                  exact=False, deferred_phi=False):
        return cls(
            probe=ProbeConfig.practical(epsilon, convention=convention, exact=exact),
            seed=seed,
            deferred_phi=deferred_phi,
        )

    @classmethod
    def theory(cls, n, epsilon=config.EPSILON, seed=0, scale=config.THEORY_SCALE,
               probe_scale=config.PROBE_SCALE, convention=config.NEIGHBORHOOD,
               exact=False, deferred_phi=False):
        """Constants c·ln n / ε with c from config, scaled by `scale`."""
        log_n = math.log(max(n, 2))
        return cls(
            probe=ProbeConfig.theory(n, epsilon, scale=probe_scale, convention=convention, exact=exact),
            anchor_numerator=scale * config.ANCHOR_CONST * log_n / epsilon,
            connect_samples=max(1, math.ceil(scale * config.CONNECT_SAMPLE_CONST * log_n / epsilon)),
            notify_samples=notify.theory_sample_size(n, epsilon, scale),
            cap_samples_by_degree=True,
            phi_scan=None,
            deferred_phi=deferred_phi,
            seed=seed,
        )

    def with_seed(self, seed):
        return replace(self, seed=seed)


class SparseSolution:
    """Ẽ as a symmetric adjacency map plus the anchor set Φ.

    Each anchor keeps the G̃-degree it had when it entered Φ and the number
    of its G̃ edges Clean has removed since; Clean evicts it once those
    losses exceed ε times that entry degree. Edges that go with a deleted
    node or an evicted neighbor are not losses.
    """

    def __init__(self):
        self.adj = {}
        self.anchors = set()
        self.entry_degree = {}
        self.losses = {}
        # churn counters
        self.edges_added = 0
        self.edges_removed = 0
        self.anchor_joins = 0
        self.anchor_leaves = 0

    def neighbors(self, u):
        return self.adj.get(u, ())

    def phi_of(self, u):
        """Φ_u: anchors adjacent to u in G̃."""
        return {w for w in self.adj.get(u, ()) if w in self.anchors}

    def has_edge(self, u, v):
        return v in self.adj.get(u, ())

    def add_edge(self, u, v):
        if u == v or v in self.adj.get(u, ()):
            return False
        self.adj.setdefault(u, set()).add(v)
        self.adj.setdefault(v, set()).add(u)
        self.edges_added += 1
        return True

    def remove_edge(self, u, v):
        if v not in self.adj.get(u, ()):
            return False
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.edges_removed += 1
        return True

    def drop_for_loss(self, w, u):
        """Remove (w, u) on Clean's verdict and charge it to anchor w."""
        if self.remove_edge(w, u):
            self.losses[w] += 1

    def promote(self, u):
        if u not in self.anchors:
            self.anchor_joins += 1
        self.anchors.add(u)
        self.entry_degree[u] = len(self.adj.get(u, ()))
        self.losses[u] = 0

    def demote(self, u):
        """Leave Φ and drop u's edges to non-anchors."""
        if u in self.anchors:
            self.anchor_leaves += 1
        self.anchors.discard(u)
        self.entry_degree.pop(u, None)
        self.losses.pop(u, None)
        for v in [v for v in self.adj.get(u, ()) if v not in self.anchors]:
            self.remove_edge(u, v)

    def evict(self, u):
        """Leave Φ and drop every G̃ edge of u."""
        self.demote(u)
        for v in list(self.adj.get(u, ())):
            self.remove_edge(u, v)

    def drop_node(self, u):
        self.evict(u)
        self.adj.pop(u, None)

    def edges(self):
        for u, hood in self.adj.items():
            for v in hood:
                if u < v:
                    yield u, v

    @property
    def edge_count(self):
        return sum(len(h) for h in self.adj.values()) // 2

    def check_invariants(self, g):
        problems = []
        for a in self.anchors:
            if a not in g:
                problems.append(f"absent node {a} is an anchor")
        for u, hood in self.adj.items():
            for v in hood:
                if u not in self.adj.get(v, ()):
                    problems.append(f"sparse edge {u}-{v} is not symmetric")
                if u < v:
                    if u not in g or v not in g or v not in g.adjacency(u):
                        problems.append(f"sparse edge {u}-{v} is not a graph edge")
                    if u not in self.anchors and v not in self.anchors:
                        problems.append(f"sparse edge {u}-{v} has no anchor endpoint")
        return problems


@dataclass
class StepReport:
    event: str
    node: int
    interesting: int = 0
    agreement_calls: int = 0
    heavy_calls: int = 0
    notifications: int = 0
    resamples: int = 0
    queries: int = 0
    anchor_joins: int = 0
    anchor_leaves: int = 0
    edges_added: int = 0
    edges_removed: int = 0

    @property
    def probes(self):
        return self.agreement_calls + self.heavy_calls

    @property
    def churn(self):
        return self.anchor_joins + self.anchor_leaves + self.edges_added + self.edges_removed


class DynamicAgreement:
    """One DA world: graph, notify state, sparse solution, probes and rng."""

    def __init__(self, cfg=None, counters=None):
        self.cfg = cfg or DccConfig()
        self.counters = counters if counters is not None else state.Counters()
        self.graph = DynamicGraph(self.counters)
        self.rng = random.Random(self.cfg.seed)
        self.notify = notify.NotifyState(self.cfg.notify_samples, self.cfg.cap_samples_by_degree)
        self.sol = SparseSolution()
        self.probes = Probes(self.graph, self.cfg.probe, self.rng)

    # ─── Per-node steps ───

    def _scan(self, anchors):
        """Anchors to examine, in id order; at most phi_scan of them, drawn uniformly."""
        pool = sorted(anchors)
        cap = self.cfg.phi_scan
        if cap is not None and len(pool) > cap:
            pool = sorted(self.rng.sample(pool, cap))
        return pool

    def clean(self, u):
        """Re-check u's anchors; drop failing edges, evict anchors that lost too much."""
        sol = self.sol
        eps = self.cfg.epsilon
        for w in self._scan(sol.phi_of(u)):
            if w not in sol.anchors or not sol.has_edge(w, u):
                continue
            if not (self.probes.agree(w, u) and self.probes.heavy(w)):
                sol.drop_for_loss(w, u)
            if sol.losses[w] > eps * sol.entry_degree[w]:
                sol.evict(w)

    def anchor(self, u):
        """Flip u's anchor coin; a heavy node that wins it links to its agreeing neighbors.

        Returns True / False for the Φ membership u should take, or None to
        leave it unchanged. Only a heavy node joins Φ.
        """
        g = self.graph
        sol = self.sol
        d = g.degree(u)
        if d == 0:
            return None
        pick = self.rng.random() < min(self.cfg.anchor_numerator / d, 1.0)
        if u in sol.anchors:
            for v in [v for v in sol.neighbors(u) if v not in sol.anchors]:
                sol.remove_edge(u, v)
        if pick and self.probes.heavy(u):
            for v in sorted(g.neighbors(u)):
                if self.probes.agree(u, v):
                    sol.add_edge(u, v)
            return True
        return False if u in sol.anchors else None

    def connect(self, u):
        """Link u to agreeing heavy anchors found through sampled neighbors."""
        g = self.graph
        sol = self.sol
        d = g.degree(u)
        if d == 0:
            return
        k = min(self.cfg.connect_samples, d) if self.cfg.cap_samples_by_degree else self.cfg.connect_samples
        sampled = dict.fromkeys(g.sample_neighbor(u, self.rng) for _ in range(k))
        for w in sampled:
            for r in self._scan(sol.phi_of(w)):
                if r == u or sol.has_edge(u, r) or not g.has_edge(u, r):
                    continue
                if self.probes.heavy(r) and self.probes.agree(r, u):
                    sol.add_edge(u, r)

    def _apply_phi(self, u, verdict):
        if verdict is True:
            self.sol.promote(u)
        elif verdict is False:
            self.sol.demote(u)

    # ─── Events ───

    def process_event(self, event):
        """Apply one stream event and repair the sparse solution around it."""
        before = self.counters.snapshot()
        sol = self.sol
        churn0 = (sol.anchor_joins, sol.anchor_leaves, sol.edges_added, sol.edges_removed)
        if event.kind == INSERT:
            self.graph.insert_node(event.node, event.edges)
            batch = notify.on_event(event, self.graph, self.notify, self.rng)
        elif event.kind == DELETE:
            if event.node in self.graph:
                sol.drop_node(event.node)
            batch = notify.on_event(event, self.graph, self.notify, self.rng)
        else:
            raise ValueError(f"unknown event kind {event.kind!r}")

        deferred = []
        for u in sorted(batch.interesting):
            if u not in self.graph:
                continue
            self.clean(u)
            verdict = self.anchor(u)
            self.connect(u)
            if self.cfg.deferred_phi:
                deferred.append((u, verdict))
            else:
                self._apply_phi(u, verdict)
        for u, verdict in deferred:
            self._apply_phi(u, verdict)

        delta = self.counters.since(before)
        return StepReport(
            event=event.kind,
            node=event.node,
            interesting=len(batch.interesting),
            agreement_calls=delta["agreement_calls"],
            heavy_calls=delta["heavy_calls"],
            notifications=delta["notify_t0"] + delta["notify_t1"] + delta["notify_t2"],
            resamples=delta["resamples"],
            queries=(delta["degree_queries"] + delta["edge_queries"]
                     + delta["sample_queries"] + delta["neighborhood_reads"]),
            anchor_joins=sol.anchor_joins - churn0[0],
            anchor_leaves=sol.anchor_leaves - churn0[1],
            edges_added=sol.edges_added - churn0[2],
            edges_removed=sol.edges_removed - churn0[3],
        )

    def run(self, events):
        for ev in events:
            self.process_event(ev)
        return self

    def labels(self):
        return extraction.compute_components(self.sol, self.graph.nodes())

    def check_invariants(self):
        return (self.graph.check_invariants()
                + self.notify.check_invariants(self.graph)
                + self.sol.check_invariants(self.graph))
