import pytest

from twistlab.config import CurveSystem

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Repeat the acceptance PASS/FAIL lines where capture cannot hide them."""
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def pair_system():
    """Two filling curves at distance 3, each its own multicurve."""
    return CurveSystem(
        ["a", "b"],
        multicurves={"A": ["a"], "B": ["b"]},
        dist=[("a", "b", 3)],
        inter=[("a", "b", 1)],
    )


@pytest.fixture
def triple_system():
    """Three curves pairwise at distance >= 3 with full projection data."""
    return CurveSystem(
        ["a", "b", "c"],
        dist=[("a", "b", 3), ("b", "c", 4), ("a", "c", 4)],
        inter=[("a", "b", 2), ("b", "c", 2), ("a", "c", 2)],
        proj=[("a", "b", "c", 1), ("b", "a", "c", 2), ("c", "a", "b", 0)],
    )


@pytest.fixture
def multi_system():
    """Multicurves A = {a1, a2}, B = {b1} with dist(A, B) = 3."""
    return CurveSystem(
        ["a1", "a2", "b1"],
        multicurves={"A": ["a1", "a2"], "B": ["b1"]},
        dist=[("a1", "b1", 3), ("a2", "b1", 4)],
        inter=[("a1", "a2", 0), ("a1", "b1", 2), ("a2", "b1", 3)],
        proj=[("b1", "a1", "a2", 1)],
    )
