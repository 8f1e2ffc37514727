import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mcgap.simulator import birth_death_chain, random_walk_on_weighted_graph  # noqa: E402


def two_state(p, q):
    return birth_death_chain(2, [p], [q])


def bd8():
    """Lazy symmetric birth-death chain on 8 states."""
    return birth_death_chain(8, [0.45] * 7, [0.45] * 7)


def graph8(seed=8):
    """Random walk on a complete graph with seeded weights; mixes fast."""
    rng = np.random.default_rng(seed)
    W = rng.uniform(0.5, 1.5, (8, 8))
    return random_walk_on_weighted_graph((W + W.T) / 2)


def bd5():
    return birth_death_chain(5, [0.3, 0.25, 0.4, 0.35], [0.2, 0.3, 0.25, 0.3])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def record(criterion, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
