import math

import numpy as np
import pytest

from lowrankdm.norms import NormSpec

SCHATTEN_GRID = [1, 1.1, 1.5, 2, 2.5, 3, 3.5, 4, 5, 6, 8, 12, 20, math.inf]


def spec_grid(n, max_r=6):
    """Schatten exponents above plus Ky Fan 1..min(n, max_r); 20 specs for n >= 6."""
    specs = [NormSpec.schatten(p) for p in SCHATTEN_GRID]
    specs += [NormSpec.kyfan(r) for r in range(1, min(n, max_r) + 1)]
    return specs


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_acceptance_lines = []


def record_acceptance(line):
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
