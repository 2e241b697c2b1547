"""Pytest configuration.

Tests import modules from the repository root (e.g. `from hermgrs.gf import build_tower`).
When running pytest from outside the repo the root isn't always on `sys.path`, which
can cause `ModuleNotFoundError: hermgrs` during collection.

Field towers are cached per (p, m), so the session fixtures below are cheap to share.
"""

import os
import sys

import pytest


PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))

if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from hermgrs.gf import build_tower  # noqa: E402


@pytest.fixture(scope="session")
def f4():
    return build_tower(2, 1)


@pytest.fixture(scope="session")
def f9():
    return build_tower(3, 1)


@pytest.fixture(scope="session")
def f16():
    return build_tower(2, 2)


@pytest.fixture(scope="session")
def f25():
    return build_tower(5, 1)


@pytest.fixture(autouse=True)
def _clean_caps_env(monkeypatch):
    for name in ('HERMGRS_MAX_FIELD', 'HERMGRS_MAX_ENUM', 'HERMGRS_JOBS', 'HERMGRS_LOG_LEVEL', 'HERMGRS_SWEEP_FILE'):
        monkeypatch.delenv(name, raising=False)
