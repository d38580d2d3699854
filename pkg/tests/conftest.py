import sys

import pytest


def pytest_configure(config):
    # deep pedigrees are walked iteratively, but keep headroom for recursive helpers
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))


@pytest.fixture
def rng():
    import numpy as np

    return np.random.Generator(np.random.PCG64(12345))


def pytest_terminal_summary(terminalreporter):
    lines = []
    for mod in list(sys.modules.values()):
        lines += getattr(mod, "ACCEPTANCE_RESULTS", None) or []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
