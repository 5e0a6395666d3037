"""DCC run state: instrumentation counters and timeline tracking."""

import sqlite3
import uuid
from dataclasses import dataclass, asdict

import env
import memory


def new_run_id():
    return uuid.uuid4().hex[:12]


def log(event, details=None):
    """Log an internal event to the timeline. Never raises."""
    if not env.JOURNAL:
        return
    try:
        memory.log_event(event, details)
    except (sqlite3.Error, OSError):
        pass


def record_run(run_id, command, alg, seed, source, events, final_cost, relative, out_path):
    if not env.JOURNAL:
        return
    try:
        memory.record_run(run_id, command, alg, seed, source, events, final_cost, relative, out_path)
    except (sqlite3.Error, OSError):
        pass


def set_state(key, value):
    if not env.JOURNAL:
        return
    try:
        memory.kv_set(key, value)
    except (sqlite3.Error, OSError):
        pass


def get_state(key, default=None):
    try:
        return memory.kv_get(key, default)
    except (sqlite3.Error, OSError):
        return default


def format_timeline(limit=30):
    """Format timeline for display."""
    rows = memory.get_timeline(limit)
    if not rows:
        return "  No events yet."
    lines = []
    for r in rows:
        detail = f" — {r['details']}" if r["details"] else ""
        lines.append(f"  [{r['ts']}] {r['event']}{detail}")
    return "\n".join(lines)


def format_status(limit=10):
    """Format the run ledger for the status command."""
    rows = memory.get_runs(limit)
    lines = [f"  Last output: {get_state('last_out', 'none')}"]
    if not rows:
        lines.append("  No runs recorded.")
        return "\n".join(lines)
    for r in rows:
        rel = f"{r['relative']:.3f}" if r["relative"] is not None else "-"
        lines.append(
            f"  [{r['ts']}] {r['command']} {r['alg']} seed={r['seed']} "
            f"events={r['events']} cost={r['final_cost']} rel={rel}"
        )
    return "\n".join(lines)


# ─── Instrumentation ───


@dataclass
class Counters:
    """Per-run query and probe counts. One instance is shared by a world."""

    degree_queries: int = 0
    edge_queries: int = 0
    sample_queries: int = 0
    neighborhood_reads: int = 0
    agreement_calls: int = 0
    heavy_calls: int = 0
    notify_t0: int = 0
    notify_t1: int = 0
    notify_t2: int = 0
    resamples: int = 0

    @property
    def queries(self):
        return self.degree_queries + self.edge_queries + self.sample_queries + self.neighborhood_reads

    @property
    def probe_calls(self):
        return self.agreement_calls + self.heavy_calls

    @property
    def notifications(self):
        return self.notify_t0 + self.notify_t1 + self.notify_t2

    def snapshot(self):
        return asdict(self)

    def since(self, snap):
        """Counts accumulated since a snapshot()."""
        return {k: getattr(self, k) - v for k, v in snap.items()}
