"""Agreement and heaviness: exact definitions and sampling probes.

Two nodes u, v are in ε-agreement when |N(u) △ N(v)| < ε·max(|N(u)|, |N(v)|).
A node is ε-heavy when more than a (1 − ε) fraction of its neighbors agree
with it. The probes estimate both from a few random neighbor samples and
one-sided membership checks, never reading a full neighborhood.
"""

import math
from dataclasses import dataclass

import config
from graph_store import GraphError, ZERO_DEGREE

YES = "YES"
NO = "NO"

THEORY = "theory"
PRACTICAL = "practical"


@dataclass(frozen=True)
class ProbeConfig:
    epsilon: float = config.EPSILON
    mode: str = PRACTICAL
    theory_agree_samples: int = 1
    theory_heavy_samples: int = 1
    practical_samples: int = config.PRACTICAL_SAMPLES
    neighborhood_convention: str = config.NEIGHBORHOOD
    exact: bool = False

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if self.mode not in (THEORY, PRACTICAL):
            raise ValueError(f"unknown probe mode {self.mode!r}")
        if self.neighborhood_convention not in ("open", "closed"):
            raise ValueError(f"unknown neighborhood convention {self.neighborhood_convention!r}")
        for name in ("theory_agree_samples", "theory_heavy_samples", "practical_samples"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")

    @classmethod
    def practical(cls, epsilon=config.EPSILON, samples=config.PRACTICAL_SAMPLES,
                  convention=config.NEIGHBORHOOD, exact=False):
        return cls(epsilon=epsilon, mode=PRACTICAL, practical_samples=samples,
                   neighborhood_convention=convention, exact=exact)

    @classmethod
    def theory(cls, n, epsilon=config.EPSILON, scale=config.PROBE_SCALE,
               convention=config.NEIGHBORHOOD, exact=False):
        """Sample counts ⌈c·ln n / ε⌉ (times scale) for a graph on n nodes."""
        log_n = math.log(max(n, 2))
        return cls(
            epsilon=epsilon,
            mode=THEORY,
            theory_agree_samples=max(1, math.ceil(scale * config.AGREE_SAMPLE_CONST * log_n / epsilon)),
            theory_heavy_samples=max(1, math.ceil(scale * config.HEAVY_SAMPLE_CONST * log_n / epsilon)),
            neighborhood_convention=convention,
            exact=exact,
        )

    @property
    def closed(self):
        return self.neighborhood_convention == "closed"

    @property
    def agree_samples(self):
        return self.theory_agree_samples if self.mode == THEORY else self.practical_samples

    @property
    def heavy_samples(self):
        return self.theory_heavy_samples if self.mode == THEORY else self.practical_samples


@dataclass(frozen=True)
class ProbeVerdict:
    answer: str
    stat_x: float
    stat_y: float = 0.0

    def __bool__(self):
        return self.answer == YES


# ─── Exact definitions ───


def _hood_set(g, u, closed):
    hood = set(g.adjacency(u))
    if closed:
        hood.add(u)
    return hood


def exact_agreement(g, u, v, epsilon, convention=config.NEIGHBORHOOD):
    """Ground-truth ε-agreement of present nodes u and v."""
    closed = convention == "closed"
    nu = _hood_set(g, u, closed)
    nv = _hood_set(g, v, closed)
    return len(nu ^ nv) < epsilon * max(len(nu), len(nv))


def exact_heavy(g, u, epsilon, convention=config.NEIGHBORHOOD):
    """Ground-truth ε-heaviness of a node with at least one neighbor."""
    hood = g.adjacency(u)
    if not hood:
        raise GraphError(ZERO_DEGREE, f"heaviness of {u} needs degree >= 1")
    agreeing = sum(1 for v in hood if exact_agreement(g, u, v, epsilon, convention))
    return agreeing > (1 - epsilon) * len(hood)


# ─── Sampling probes ───


def _draw(g, u, rng, closed):
    """Uniform element of N[u] (closed) or N(u) (open)."""
    if closed:
        d = g.degree(u)
        if rng.randrange(d + 1) == d:
            return u
    return g.sample_neighbor(u, rng)


def _member(g, r, u, closed):
    """r ∈ N[u] / N(u), one edge query."""
    if r == u:
        g.counters.edge_queries += 1
        return closed
    return g.has_edge(r, u)


def probabilistic_agreement(g, u, v, cfg, rng):
    """Estimate whether u and v are in ε-agreement.

    x_i marks a sample of u's neighborhood missing from v's, y_i the reverse.
    YES iff both miss rates stay below 0.4ε.
    """
    g.counters.agreement_calls += 1
    if g.degree(u) == 0 or g.degree(v) == 0:
        raise GraphError(ZERO_DEGREE, f"agreement probe on {u}, {v} needs both degrees >= 1")
    if cfg.exact:
        ok = exact_agreement(g, u, v, cfg.epsilon, cfg.neighborhood_convention)
        return ProbeVerdict(YES if ok else NO, 0.0 if ok else 1.0, 0.0 if ok else 1.0)
    closed = cfg.closed
    k = cfg.agree_samples
    x = y = 0
    for _ in range(k):
        r = _draw(g, u, rng, closed)
        s = _draw(g, v, rng, closed)
        if _member(g, r, u, closed) and not _member(g, r, v, closed):
            x += 1
        if _member(g, s, v, closed) and not _member(g, s, u, closed):
            y += 1
    threshold = config.AGREE_THRESHOLD * cfg.epsilon
    mx, my = x / k, y / k
    return ProbeVerdict(YES if mx < threshold and my < threshold else NO, mx, my)


def heavy_probe(g, u, cfg, rng):
    """Estimate whether u is ε-heavy.

    Samples neighbors and asks the agreement probe about each; YES iff the
    disagreeing fraction stays below 1.2ε. Stops at the first sample that
    settles a NO, so stat_x is the fraction seen up to that point.
    """
    g.counters.heavy_calls += 1
    if g.degree(u) == 0:
        raise GraphError(ZERO_DEGREE, f"heavy probe on {u} needs degree >= 1")
    if cfg.exact:
        ok = exact_heavy(g, u, cfg.epsilon, cfg.neighborhood_convention)
        return ProbeVerdict(YES if ok else NO, 0.0 if ok else 1.0)
    k = cfg.heavy_samples
    limit = config.HEAVY_THRESHOLD * cfg.epsilon * k
    misses = 0
    for _ in range(k):
        v = g.sample_neighbor(u, rng)
        if not probabilistic_agreement(g, u, v, cfg, rng):
            misses += 1
            if misses >= limit:
                return ProbeVerdict(NO, misses / k)
    return ProbeVerdict(YES, misses / k)


class Probes:
    """Probe front end bound to one graph, config and generator."""

    def __init__(self, graph, cfg, rng):
        self.graph = graph
        self.cfg = cfg
        self.rng = rng

    def agree(self, u, v):
        return bool(probabilistic_agreement(self.graph, u, v, self.cfg, self.rng))

    def heavy(self, u):
        return bool(heavy_probe(self.graph, u, self.cfg, self.rng))
