import random

import pytest

from vass3.vass import Configuration, Transition, Vass


def loops(*effects, state="p"):
    """One state carrying one self-loop per effect, named t0, t1, ..."""
    dim = len(effects[0])
    return Vass(dim, [state], [Transition(f"t{i}", state, e, state) for i, e in enumerate(effects)])


def cfg(state, *vec):
    return Configuration(state, tuple(vec))


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
