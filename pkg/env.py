"""DCC environment config: single source of truth for paths and machine facts.

All values overridable via environment variables.
"""

import os

# ─── Paths ───

DCC_HOME = os.path.dirname(os.path.abspath(__file__))
DATA_DIR = os.environ.get("DCC_DATA_DIR") or os.path.join(DCC_HOME, "data")
DB_PATH = os.environ.get("DCC_DB_PATH") or os.path.join(DATA_DIR, "dcc.db")
RESULTS_DIR = os.environ.get("DCC_RESULTS_DIR") or os.path.join(DATA_DIR, "results")

# Journal on/off (DCC_JOURNAL=0 disables the SQLite timeline)
JOURNAL = os.environ.get("DCC_JOURNAL", "1") != "0"


# ─── Machine detection ───


def detect_cpu_cores():
    """Detect number of CPU cores."""
    try:
        return os.cpu_count() or 4
    except Exception:
        return 4


# ─── Computed values (cached at import time) ───

CPU_CORES = detect_cpu_cores()
WORKERS = int(os.environ.get("DCC_WORKERS", 0)) or max(1, min(4, CPU_CORES))
THEORY_SCALE = float(os.environ.get("DCC_THEORY_SCALE", 0)) or None
