import os

import pytest
from hypothesis import settings

from affine_cells.group import AffineWeylGroup
from affine_cells.ordered import WeightFunction

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def C2():
    return AffineWeylGroup("C", 2)


@pytest.fixture(scope="session")
def G2():
    return AffineWeylGroup("G", 2)


def c2_weight(W, t, s, tp):
    return WeightFunction.integer(W, {"t": t, "s": s, "t'": tp})


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
