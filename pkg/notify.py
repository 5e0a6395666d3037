"""Notification propagation: who must be re-examined after an event.

Each node u keeps a neighbor sample I_u tagged with the degree level
⌊log₂ deg⌋ it was drawn at, and backpointers B_v^i = {u : v ∈ I_u at level i}.
An arrival samples and sends Type₀ to its sample; a deletion sends Type₀ to
everyone holding the deleted node in their sample. Recipients resample and
Type₀ / Type₁ recipients forward the next type to their fresh sample, for
three rounds in total. The interesting set handed to the clustering update
is the arriving node plus all Type₀ and Type₁ recipients.
"""

import math
from dataclasses import dataclass, field

import config
from streams import INSERT, DELETE

ROUNDS = 3


def level(d):
    """⌊log₂ d⌋ for d >= 1."""
    if d < 1:
        raise ValueError("level is undefined for degree 0")
    return d.bit_length() - 1


def theory_sample_size(n, epsilon, scale=config.THEORY_SCALE):
    return max(1, math.ceil(scale * config.NOTIFY_SAMPLE_CONST * math.log(max(n, 2)) / epsilon))


@dataclass
class NotificationBatch:
    messages: list = field(default_factory=list)     # (target, type) in send order
    interesting: set = field(default_factory=set)

    def count(self, kind):
        return sum(1 for _, t in self.messages if t == kind)

    def recipients(self, kind):
        return {w for w, t in self.messages if t == kind}


class NotifyState:
    """Per-node samples and backpointers.

    samples[u] = (level, set of sampled neighbors); at most one level is
    live per node. backs[v][i] = nodes whose level-i sample contains v.
    """

    def __init__(self, sample_size=config.PRACTICAL_SAMPLES, cap_by_degree=False):
        self.sample_size = sample_size
        self.cap_by_degree = cap_by_degree
        self.samples = {}
        self.backs = {}

    def sample_of(self, u):
        entry = self.samples.get(u)
        return set(entry[1]) if entry else set()

    def backpointers(self, v):
        """∪_i B_v^i."""
        out = set()
        for holders in self.backs.get(v, {}).values():
            out |= holders
        return out

    def _purge(self, u):
        entry = self.samples.pop(u, None)
        if entry is None:
            return
        lvl, drawn = entry
        for v in drawn:
            holders = self.backs.get(v, {}).get(lvl)
            if holders is not None:
                holders.discard(u)
                if not holders:
                    del self.backs[v][lvl]

    def resample(self, u, g, rng):
        """Replace u's sample with a fresh one at its current level."""
        self._purge(u)
        g.counters.resamples += 1
        d = g.degree(u)
        if d == 0:
            return set()
        lvl = level(d)
        s = min(self.sample_size, d) if self.cap_by_degree else self.sample_size
        drawn = {g.sample_neighbor(u, rng) for _ in range(s)}
        self.samples[u] = (lvl, drawn)
        for v in drawn:
            self.backs.setdefault(v, {}).setdefault(lvl, set()).add(u)
        return drawn

    def forget(self, u):
        """Drop u's own sample footprint and its backpointer sets."""
        self._purge(u)
        self.backs.pop(u, None)

    def check_invariants(self, g):
        problems = []
        for u, (lvl, drawn) in self.samples.items():
            if u not in g:
                problems.append(f"absent node {u} holds a sample")
                continue
            for v in drawn:
                if v not in g:
                    problems.append(f"sample of {u} holds absent node {v}")
                if u not in self.backs.get(v, {}).get(lvl, ()):
                    problems.append(f"{v} in I_{u}^{lvl} without backpointer")
        for v, levels in self.backs.items():
            for lvl, holders in levels.items():
                for u in holders:
                    entry = self.samples.get(u)
                    if entry is None or entry[0] != lvl or v not in entry[1]:
                        problems.append(f"{u} in B_{v}^{lvl} without sample entry")
        return problems


def _propagate(first, g, state, rng, batch, counters):
    """Three rounds of resample-and-forward starting from Type₀ targets."""
    pending = set(first)
    for kind in range(ROUNDS):
        nxt = set()
        for w in sorted(pending):
            if w not in g:
                continue
            drawn = state.resample(w, g, rng)
            if kind < 2:
                batch.interesting.add(w)
            if kind + 1 < ROUNDS:
                for v in sorted(drawn):
                    batch.messages.append((v, kind + 1))
                    if kind == 0:
                        counters.notify_t1 += 1
                    else:
                        counters.notify_t2 += 1
                    nxt.add(v)
        pending = nxt


def on_event(event, g, state, rng):
    """Run notification for one event and return the batch.

    Insert events must already be applied to g. Delete events must not:
    the deleted node's backpointers are read first, then on_event removes
    it from g before recipients resample.
    """
    counters = g.counters
    batch = NotificationBatch()
    u = event.node
    if event.kind == INSERT:
        batch.interesting.add(u)
        drawn = state.resample(u, g, rng)
        first = sorted(drawn)
    elif event.kind == DELETE:
        first = sorted(state.backpointers(u) - {u})
        state.forget(u)
        g.delete_node(u)
    else:
        raise ValueError(f"unknown event kind {event.kind!r}")
    for v in first:
        batch.messages.append((v, 0))
        counters.notify_t0 += 1
    _propagate(first, g, state, rng, batch, counters)
    return batch
