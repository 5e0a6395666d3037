"""Run journal: SQLite backed timeline, run ledger and kv state."""

import sqlite3
import os
import threading
import env

_local = threading.local()


def _get_conn():
    """Thread-local SQLite connection, reopened when env.DB_PATH moves."""
    path = env.DB_PATH
    if getattr(_local, "conn", None) is None or getattr(_local, "path", None) != path:
        if path != ":memory:":
            os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        conn = sqlite3.connect(path)
        conn.row_factory = sqlite3.Row
        if path != ":memory:":
            conn.execute("PRAGMA journal_mode=WAL")
        _local.conn = conn
        _local.path = path
        init_db()
    return _local.conn


def close():
    """Drop this thread's connection."""
    conn = getattr(_local, "conn", None)
    if conn is not None:
        try:
            conn.close()
        except Exception:
            pass
    _local.conn = None
    _local.path = None


def init_db():
    """Create tables if they don't exist."""
    conn = _local.conn
    conn.executescript("""
        CREATE TABLE IF NOT EXISTS timeline (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            ts DATETIME DEFAULT (datetime('now')),
            event TEXT NOT NULL,
            details TEXT
        );

        CREATE TABLE IF NOT EXISTS runs (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            ts DATETIME DEFAULT (datetime('now')),
            run_id TEXT NOT NULL,
            command TEXT NOT NULL,
            alg TEXT NOT NULL,
            seed INTEGER,
            source TEXT,
            events INTEGER DEFAULT 0,
            final_cost INTEGER,
            relative REAL,
            out_path TEXT
        );

        CREATE TABLE IF NOT EXISTS kv (
            key TEXT PRIMARY KEY,
            value TEXT,
            updated_at DATETIME DEFAULT (datetime('now'))
        );
    """)
    conn.commit()


# ─── Timeline ───


def log_event(event, details=None):
    conn = _get_conn()
    conn.execute("INSERT INTO timeline (event, details) VALUES (?, ?)", (event, details))
    conn.commit()


def get_timeline(limit=30):
    conn = _get_conn()
    rows = conn.execute(
        "SELECT ts, event, details FROM timeline ORDER BY id DESC LIMIT ?", (limit,)
    ).fetchall()
    return list(reversed(rows))


# ─── Run ledger ───


def record_run(run_id, command, alg, seed, source, events, final_cost, relative, out_path):
    conn = _get_conn()
    conn.execute(
        "INSERT INTO runs (run_id, command, alg, seed, source, events, final_cost, relative, out_path) "
        "VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)",
        (run_id, command, alg, seed, source, events, final_cost, relative, out_path),
    )
    conn.commit()


def get_runs(limit=20):
    conn = _get_conn()
    rows = conn.execute(
        "SELECT ts, run_id, command, alg, seed, source, events, final_cost, relative, out_path "
        "FROM runs ORDER BY id DESC LIMIT ?", (limit,)
    ).fetchall()
    return list(reversed(rows))


# ─── KV state ───


def kv_set(key, value):
    conn = _get_conn()
    conn.execute(
        "INSERT INTO kv (key, value, updated_at) VALUES (?, ?, datetime('now')) "
        "ON CONFLICT(key) DO UPDATE SET value=excluded.value, updated_at=excluded.updated_at",
        (key, str(value)),
    )
    conn.commit()


def kv_get(key, default=None):
    conn = _get_conn()
    row = conn.execute("SELECT value FROM kv WHERE key = ?", (key,)).fetchone()
    return row["value"] if row else default
