import sys
from pathlib import Path

import pytest

from suite_paths import CORPUS_ROOT, REPLAY_ROOT, STUB_SHIM


@pytest.fixture(scope="session")
def corpus_root() -> Path:
    return CORPUS_ROOT


@pytest.fixture(scope="session")
def replay_root() -> Path:
    return REPLAY_ROOT


@pytest.fixture(scope="session")
def stub_shim() -> Path:
    return STUB_SHIM


@pytest.fixture(scope="session")
def interpreter() -> str:
    return sys.executable
