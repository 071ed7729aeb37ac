import numpy as np
import pytest

from olshanski.params import make_alpha

ACCEPTANCE_LINES = []


@pytest.fixture
def report_criterion():
    """Record a one-line verdict for an acceptance criterion."""

    def record(label, passed, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}".rstrip())

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_alpha(rng, p_max=4, bound=3.0, p=None):
    if p is None:
        p = int(rng.integers(0, p_max + 1))
    return make_alpha(rng.uniform(-bound, bound, p))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
