from __future__ import annotations

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import env  # noqa: E402
import memory  # noqa: E402


@pytest.fixture(autouse=True)
def journal_in_tmp(tmp_path, monkeypatch):
    """Every test journals into its own throwaway database."""
    monkeypatch.setattr(env, "DB_PATH", str(tmp_path / "dcc.db"))
    monkeypatch.setattr(env, "RESULTS_DIR", str(tmp_path / "results"))
    yield
    memory.close()
