"""Differential and statistical self-checks behind `dcc.py oracle`.

Each suite returns a SuiteResult with the measured rate, the threshold it
had to meet and the number of trials.
"""

import random
from dataclasses import dataclass

import networkx as nx

import baselines
import config
import extraction
import state
import streams
from dynamic import DccConfig, DynamicAgreement, SparseSolution
from graph_store import DynamicGraph
from probes import ProbeConfig, heavy_probe, probabilistic_agreement


@dataclass
class SuiteResult:
    name: str
    passed: bool
    rate: float
    threshold: float
    trials: int
    detail: str = ""


# ─── Probe fixture ───


def probe_fixture(n=1024):
    """Graph with named test nodes, padded with isolated nodes to n.

    close_pair: 0.1ε-agreement at ε = 0.2. far_pair: not in agreement.
    heavy: member of a 60-clique. light: joins two 30-cliques.
    """
    edges = []
    common = range(0, 200)
    edges += [(200, c) for c in common] + [(201, c) for c in common]
    edges += [(200, 201), (200, 202)]
    shared = range(300, 400)
    edges += [(400, c) for c in shared] + [(401, c) for c in shared]
    edges += [(400, p) for p in range(402, 432)] + [(401, p) for p in range(432, 462)]
    clique = range(500, 560)
    edges += [(a, b) for a in clique for b in clique if a < b]
    left, right = range(600, 630), range(630, 660)
    for block in (left, right):
        edges += [(a, b) for a in block for b in block if a < b]
    edges += [(660, x) for x in list(left) + list(right)]
    g = DynamicGraph.from_edges(n, edges)
    nodes = {"close_pair": (200, 201), "far_pair": (400, 401), "heavy": 500, "light": 660}
    return g, nodes


def probe_sandwich(trials=100, seed=0, epsilon=config.EPSILON, heavy_scale=0.005):
    """Probe YES / NO rates on nodes whose true answer is known."""
    g, nodes = probe_fixture()
    rng = random.Random(seed)
    agree_cfg = ProbeConfig.theory(len(g), epsilon)
    heavy_cfg = ProbeConfig.theory(len(g), epsilon, scale=heavy_scale)
    need = 1 - 1 / len(g)
    out = []
    checks = (
        ("agreement_yes", lambda: bool(probabilistic_agreement(g, *nodes["close_pair"], agree_cfg, rng)), True),
        ("agreement_no", lambda: bool(probabilistic_agreement(g, *nodes["far_pair"], agree_cfg, rng)), False),
        ("heavy_yes", lambda: bool(heavy_probe(g, nodes["heavy"], heavy_cfg, rng)), True),
        ("heavy_no", lambda: bool(heavy_probe(g, nodes["light"], heavy_cfg, rng)), False),
    )
    for name, probe, expect in checks:
        hits = sum(1 for _ in range(trials) if probe() == expect)
        rate = hits / trials
        out.append(SuiteResult(name, rate >= need, rate, need, trials))
    return out


# ─── Extraction vs BFS ───


def random_valid_solution(rng, max_nodes=512):
    """Sparse solution meeting the extraction preconditions, with its node list.

    Nodes are split into groups; each group's anchors all touch one hub so
    anchors of a component always share a neighbor, and every other member
    hangs off some anchor of its group. A few nodes stay isolated.
    """
    n = rng.randint(1, max_nodes)
    nodes = list(range(n))
    rng.shuffle(nodes)
    sol = SparseSolution()
    i = 0
    while i < n:
        size = rng.randint(1, 12)
        group = nodes[i:i + size]
        i += size
        if len(group) == 1:
            if rng.random() < 0.5:
                sol.promote(group[0])
            continue
        hub = group[0]
        k = rng.randint(1, max(1, len(group) // 3))
        anchors = group[1:1 + k]
        for a in anchors:
            sol.add_edge(a, hub)
        for a, b in zip(anchors, anchors[1:]):
            if rng.random() < 0.3:
                sol.add_edge(a, b)
        for v in group[1 + k:]:
            sol.add_edge(v, rng.choice(anchors))
            if rng.random() < 0.3:
                sol.add_edge(v, rng.choice(anchors))
        for a in anchors:
            sol.promote(a)
    return sol, sorted(nodes)


def extraction_suite(trials=1000, seed=0):
    rng = random.Random(seed)
    bad = 0
    over_budget = 0
    for _ in range(trials):
        sol, present = random_valid_solution(rng)
        fast = extraction.compute_components(sol, present)
        if not fast.same_partition(extraction.components_bfs(sol, present)):
            bad += 1
        if fast.assignments > 3 * len(present):
            over_budget += 1
    rate = (trials - bad - over_budget) / trials
    return [SuiteResult("extraction_vs_bfs", bad == 0 and over_budget == 0, rate, 1.0, trials,
                        f"mismatches={bad} over_budget={over_budget}")]


# ─── Dynamic Pivot vs offline Pivot ───


def pivot_suite(trials=100, seed=0):
    rng = random.Random(seed)
    bad = 0
    checks = 0
    for trial in range(trials):
        n = rng.randint(2, 40)
        g = nx.gnp_random_graph(n, rng.choice((0.1, 0.3, 0.6)), seed=rng.randrange(2 ** 31))
        src = streams.SourceGraph(n, sorted((min(u, v), max(u, v)) for u, v in g.edges()))
        pd = baselines.DynamicPivot(random.Random(trial))
        for ev in streams.gen_stream(src, 0.3, seed=trial):
            pd.apply(ev)
            offline = baselines.pivot_with_order(pd.graph, pd.order())
            checks += 1
            if not pd.labels().same_partition(offline):
                bad += 1
    rate = (checks - bad) / max(checks, 1)
    return [SuiteResult("dynamic_pivot_vs_offline", bad == 0, rate, 1.0, checks)]


# ─── DA vs OPT on tiny graphs ───


def tiny_graph(rng):
    """Random G(n, p) or disjoint cliques on at most 9 nodes."""
    n = rng.randint(3, 9)
    if rng.random() < 0.3:
        sizes = []
        left = n
        while left:
            s = rng.randint(1, left)
            sizes.append(s)
            left -= s
        edges, base = [], 0
        for s in sizes:
            edges += [(base + a, base + b) for a in range(s) for b in range(a + 1, s)]
            base += s
        return streams.SourceGraph(n, edges)
    g = nx.gnp_random_graph(n, rng.choice((0.2, 0.5, 0.8)), seed=rng.randrange(2 ** 31))
    return streams.SourceGraph(n, sorted((min(u, v), max(u, v)) for u, v in g.edges()))


def da_after_arrivals(src, seed, p_delete=config.P_DELETE, cfg=None):
    """Run DA up to the last arrival and return the world."""
    events = streams.gen_stream(src, p_delete, seed)
    last = max(i for i, ev in enumerate(events) if ev.kind == streams.INSERT)
    world = DynamicAgreement(cfg or DccConfig.practical(seed=seed))
    for ev in events[:last + 1]:
        world.process_event(ev)
    return world


def opt_suite(trials=50, seed=0, ratio=5.0, need=0.9):
    rng = random.Random(seed)
    good = 0
    for trial in range(trials):
        src = tiny_graph(rng)
        world = da_after_arrivals(src, seed=seed * 1000 + trial)
        g = world.graph
        _, opt = baselines.brute_force_opt(g)
        mine = baselines.cost(g, world.labels())
        if (opt.total == 0 and mine.total == 0) or (opt.total > 0 and mine.total <= ratio * opt.total):
            good += 1
    rate = good / trials
    return [SuiteResult("da_vs_opt", rate >= need, rate, need, trials)]


# ─── Invariant fuzz ───


def invariant_suite(events=2000, seed=0, inject=False):
    """Run DA on a planted-partition stream, checking every invariant after each event."""
    src = streams.planted_partition(8, 16, 0.8, 0.02, seed=seed)
    stream = streams.gen_stream(src, config.P_DELETE, seed)[:events]
    world = DynamicAgreement(DccConfig.practical(seed=seed))
    bad_events = 0
    first = ""
    for t, ev in enumerate(stream):
        world.process_event(ev)
        if inject and t == len(stream) // 2:
            present = sorted(u for u in world.graph.nodes() if u not in world.sol.anchors)
            if len(present) >= 2:
                world.sol.add_edge(present[0], present[1])
        problems = world.check_invariants()
        if problems:
            bad_events += 1
            if not first:
                first = f"t={t}: {problems[0]}"
                state.log("invariant_violation", first)
    rate = (len(stream) - bad_events) / max(len(stream), 1)
    return [SuiteResult("invariants", bad_events == 0, rate, 1.0, len(stream), first)]


SUITES = {
    "probes": probe_sandwich,
    "extraction": extraction_suite,
    "pivot": pivot_suite,
    "opt": opt_suite,
    "invariants": invariant_suite,
}


def run_suites(names=None, seed=0, inject=False, scale=1.0):
    """Run the named suites (all by default); `scale` shrinks trial counts."""
    results = []
    for name in names or SUITES:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
        if name == "probes":
            results += probe_sandwich(trials=max(1, int(100 * scale)), seed=seed)
        elif name == "extraction":
            results += extraction_suite(trials=max(1, int(1000 * scale)), seed=seed)
        elif name == "pivot":
            results += pivot_suite(trials=max(1, int(100 * scale)), seed=seed)
        elif name == "opt":
            results += opt_suite(trials=max(1, int(50 * scale)), seed=seed)
        else:
            results += invariant_suite(events=max(10, int(2000 * scale)), seed=seed, inject=inject)
    for r in results:
        state.log("oracle", f"{r.name} {'pass' if r.passed else 'FAIL'} rate={r.rate:.4f} n={r.trials}")
    return results
