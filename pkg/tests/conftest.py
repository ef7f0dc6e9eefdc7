import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import hyperhitchin as hh

settings.register_profile(
    "default", deadline=None, max_examples=25, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def quintic():
    """y^2 = x^5 + 1."""
    return hh.HyperellipticCurve(2, (1, 0, 0, 0, 0))


@pytest.fixture
def a1():
    return hh.LieAlgebraSpec("A", 1)


def random_problem(series, rank, genus, seed):
    spec = hh.LieAlgebraSpec(series, rank)
    rng = np.random.default_rng(seed)
    curve = hh.HyperellipticCurve.random(genus, rng)
    layout = hh.enumerate_basis(spec, genus)
    H = hh.random_hamiltonians(layout, rng)
    return spec, curve, layout, H
