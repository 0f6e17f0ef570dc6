import numpy as np
import pytest

from qentropy.algorithms import DEFAULT_GROVER_RUNS, GroverSpec
from qentropy.runner import RunConfig, execute

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def grover_runs():
    """The three default Grover runs under both enumeration conventions.

    Keyed by (total qubits, convention) -> (reports, traces, manifest).
    """
    out = {}
    for m, goal in DEFAULT_GROVER_RUNS:
        for convention in ("proper", "padded"):
            traces = []
            reports, manifest = execute(
                RunConfig("grover", GroverSpec(m, goal, 16), convention=convention), traces)
            out[m + 1, convention] = reports, traces, manifest
    return out


@pytest.fixture
def record():
    def _record(criterion, ok, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  criterion {criterion}  {detail}")
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
