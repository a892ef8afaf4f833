import numpy as np
import pytest

from rrdirac.gauge import FluxConfig

from helpers import ACCEPTANCE_LINES


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def single_flux():
    return FluxConfig(((0j, 1),))


@pytest.fixture
def pair_i():
    """Fluxes n=1 at +i and -i; flux divisor {i:1, -i:1}."""
    return FluxConfig(((1j, 1), (-1j, 1)))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
