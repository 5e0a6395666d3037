"""Experiment runners behind dcc.py.

run_stream drives every requested algorithm through one node stream and
scores them at checkpoints; density_sweep repeats DA and the Pivot stand-in
over threshold graphs of growing density; final_comparison scores the
clusterings left after a pure-insertion stream.
"""

import csv
import math
import os
import random
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import pdist

import baselines
import config
import state
import streams
from dynamic import DccConfig, DynamicAgreement
from graph_store import DynamicGraph
from probes import THEORY

FIELDS = [
    "t", "alg", "seed", "n", "m", "cross_positive", "intra_negative", "total",
    "relative", "clusters", "probe_calls", "touched", "queries", "query_cost_log",
    "notifications", "anchors", "sparse_edges",
]

DENSITY_FIELDS = [
    "target_degree", "tau", "avg_degree", "n", "m", "alg", "seed", "updates",
    "probe_calls_per_update", "touched_per_update", "queries_per_update",
    "relative_objective",
]

COMPARE_FIELDS = ["alg", "seed", "n", "m", "total", "relative"]


@dataclass
class RunSpec:
    """Everything one seeded run needs."""

    src: streams.SourceGraph
    source: str = "planted"
    algs: tuple = config.ALGORITHMS
    epsilon: float = config.EPSILON
    mode: str = "practical"
    p_delete: float = config.P_DELETE
    seed: int = 0
    checkpoint_every: int = config.CHECKPOINT_EVERY
    geometric: bool = False
    convention: str = config.NEIGHBORHOOD
    theory_scale: float = config.THEORY_SCALE
    probe_scale: float = config.PROBE_SCALE
    deferred_phi: bool = False
    exact: bool = False
    events: list = field(default=None, repr=False)

    def __post_init__(self):
        if self.checkpoint_every < 1:
            raise ValueError(f"checkpoint_every must be >= 1, got {self.checkpoint_every}")

    def dcc_config(self):
        if self.mode == THEORY:
            return DccConfig.theory(self.src.n, self.epsilon, self.seed, self.theory_scale,
                                    self.probe_scale, self.convention, self.exact, self.deferred_phi)
        return DccConfig.practical(self.epsilon, self.seed, self.convention, self.exact, self.deferred_phi)


# ─── Trackers: one per algorithm, all fed the same events ───


class DATracker:
    name = "da"

    def __init__(self, spec, ref):
        self.world = DynamicAgreement(spec.dcc_config())
        self.ref = ref
        self.cost_log = 0.0

    def apply(self, ev):
        before = self.world.counters.queries
        self.world.process_event(ev)
        spent = self.world.counters.queries - before
        self.cost_log += spent * math.log2(max(len(self.world.graph), 2))

    def labels(self):
        return self.world.labels()

    def stats(self):
        c = self.world.counters
        return {
            "probe_calls": c.probe_calls,
            "touched": 0,
            "queries": c.queries,
            "query_cost_log": round(self.cost_log, 3),
            "notifications": c.notifications,
            "anchors": len(self.world.sol.anchors),
            "sparse_edges": self.world.sol.edge_count,
        }


class PivotTracker:
    name = "pivot-dyn"

    def __init__(self, spec, ref):
        self.pd = baselines.DynamicPivot(random.Random(spec.seed))

    def apply(self, ev):
        self.pd.apply(ev)

    def labels(self):
        return self.pd.labels()

    def stats(self):
        return {"probe_calls": 0, "touched": self.pd.touched, "queries": 0,
                "query_cost_log": 0, "notifications": 0, "anchors": 0, "sparse_edges": 0}


class StaticTracker:
    """Recomputes an offline clustering of the reference graph on demand."""

    def __init__(self, name, spec, ref):
        self.name = name
        self.ref = ref
        self.epsilon = spec.epsilon
        self.convention = spec.convention
        self.rng = random.Random(spec.seed)

    def apply(self, ev):
        pass

    def labels(self):
        if self.name == "singletons":
            return baselines.singletons(self.ref)
        if self.name == "agree-static":
            return baselines.static_agreement(self.ref, self.epsilon, self.convention)
        return baselines.pivot(self.ref, self.rng)

    def stats(self):
        return {"probe_calls": 0, "touched": 0, "queries": 0, "query_cost_log": 0,
                "notifications": 0, "anchors": 0, "sparse_edges": 0}


def make_tracker(name, spec, ref):
    if name == "da":
        return DATracker(spec, ref)
    if name == "pivot-dyn":
        return PivotTracker(spec, ref)
    if name in ("singletons", "agree-static", "pivot"):
        return StaticTracker(name, spec, ref)
    raise ValueError(f"unknown algorithm {name!r}")


def _apply_ref(ref, ev):
    if ev.kind == streams.INSERT:
        ref.insert_node(ev.node, ev.edges)
    else:
        ref.delete_node(ev.node)


def _score(ref, tr, t, seed):
    labels = tr.labels()
    c = baselines.cost(ref, labels)
    base = baselines.CostBreakdown(ref.edge_count, 0)
    row = {
        "t": t, "alg": tr.name, "seed": seed, "n": len(ref), "m": ref.edge_count,
        "cross_positive": c.cross_positive, "intra_negative": c.intra_negative,
        "total": c.total, "relative": round(c.relative_to(base), 6),
        "clusters": len(set(labels.labels.values())),
    }
    row.update(tr.stats())
    return row


# ─── Runs ───


def run_stream(spec):
    """Checkpointed run of every algorithm in spec.algs. Returns CSV rows."""
    events = spec.events
    if events is None:
        events = streams.gen_stream(spec.src, spec.p_delete, spec.seed, spec.geometric)
    ref = DynamicGraph()
    trackers = [make_tracker(name, spec, ref) for name in spec.algs]
    rows = []
    state.log("run_start", f"seed={spec.seed} events={len(events)} algs={','.join(spec.algs)}")
    last = len(events) - 1
    for t, ev in enumerate(events):
        _apply_ref(ref, ev)
        for tr in trackers:
            tr.apply(ev)
        if (t + 1) % spec.checkpoint_every == 0 or t == last:
            for tr in trackers:
                rows.append(_score(ref, tr, t, spec.seed))
    state.log("run_end", f"seed={spec.seed} rows={len(rows)}")
    return rows


def final_comparison(src, seed=0, epsilon=config.EPSILON, algs=config.COMPARE_ALGORITHMS,
                     convention=config.NEIGHBORHOOD):
    """Objective relative to singletons after a pure-insertion stream."""
    spec = RunSpec(src=src, algs=tuple(algs), epsilon=epsilon, p_delete=0.0, seed=seed,
                   convention=convention)
    events = streams.gen_stream(src, 0.0, seed)
    ref = DynamicGraph()
    trackers = [make_tracker(name, spec, ref) for name in spec.algs]
    for ev in events:
        _apply_ref(ref, ev)
        for tr in trackers:
            tr.apply(ev)
    out = []
    for tr in trackers:
        row = _score(ref, tr, len(events) - 1, seed)
        out.append({k: row[k] for k in COMPARE_FIELDS})
    return out


def calibrate_tau(points, target_degree):
    """Distance threshold giving roughly the target average degree."""
    dists = pdist(points)
    if not len(dists):
        return 0.0
    frac = min(1.0, target_degree * len(points) / 2 / len(dists))
    return float(np.quantile(dists, frac))


def density_sweep(points=config.DENSITY_POINTS, dim=config.DENSITY_DIM, centers=config.DENSITY_CENTERS,
                  targets=config.DENSITY_TARGETS, p_delete=config.P_DELETE, seed=0,
                  epsilon=config.EPSILON, quality_every=config.QUALITY_EVERY, algs=("da", "pivot-dyn")):
    """Per-update work and mean relative objective of each algorithm per density."""
    pts = streams.gaussian_points(points, dim, centers, seed=seed)
    rows = []
    for target in targets:
        tau = calibrate_tau(pts, target)
        src = streams.threshold_graph(pts, tau)
        events = streams.gen_stream(src, p_delete, seed)
        spec = RunSpec(src=src, algs=tuple(algs), epsilon=epsilon, p_delete=p_delete,
                       seed=seed, checkpoint_every=quality_every, events=events)
        scored = run_stream(spec)
        updates = len(events)
        for name in spec.algs:
            mine = [r for r in scored if r["alg"] == name]
            final = mine[-1]
            rel = [r["relative"] for r in mine if r["m"] > 0]
            rows.append({
                "target_degree": target,
                "tau": round(tau, 6),
                "avg_degree": round(2 * src.m / max(src.n, 1), 3),
                "n": src.n,
                "m": src.m,
                "alg": name,
                "seed": seed,
                "updates": updates,
                "probe_calls_per_update": round(final["probe_calls"] / updates, 4),
                "touched_per_update": round(final["touched"] / updates, 4),
                "queries_per_update": round(final["queries"] / updates, 4),
                "relative_objective": round(float(np.mean(rel)), 6) if rel else 1.0,
            })
        state.log("density_point", f"target={target} tau={tau:.4f} m={src.m}")
    return rows


# ─── Output ───


def write_csv(rows, path, fields=FIELDS):
    """Write rows; parent directory is created. Rows keep their given order."""
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=fields)
        w.writeheader()
        for r in rows:
            w.writerow(r)
