"""Shared fixtures.

The autouse ``elitism_guard`` wraps the result constructors so that every
solver run made anywhere in the test suite has its best-penalized history
(single-objective) or ideal-point history (multi-objective) checked for
exact monotonicity.
"""

import numpy as np
import pytest
from hypothesis import settings

from jaya.multi import MultiRunResult
from jaya.single import RunResult

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

RUNS_CHECKED = {"single": 0, "multi": 0}


def _single_monotone(history):
    vals = [h.best_penalized for h in history]
    return all(b <= a for a, b in zip(vals, vals[1:]))


def _multi_monotone(history):
    pts = np.array([h.ideal_point for h in history], dtype=float)
    return bool(np.all(np.diff(pts, axis=0) <= 0.0)) if len(pts) > 1 else True


@pytest.fixture(scope="session", autouse=True)
def elitism_guard():
    monkeypatch = pytest.MonkeyPatch()
    orig_single = RunResult.__init__
    orig_multi = MultiRunResult.__init__

    def single_init(self, *args, **kwargs):
        orig_single(self, *args, **kwargs)
        RUNS_CHECKED["single"] += 1
        assert _single_monotone(self.history), "best_penalized history increased"
        assert len(self.history) == self.iterations_run

    def multi_init(self, *args, **kwargs):
        orig_multi(self, *args, **kwargs)
        RUNS_CHECKED["multi"] += 1
        assert _multi_monotone(self.history), "ideal point worsened"
        assert len(self.history) == self.iterations_run

    monkeypatch.setattr(RunResult, "__init__", single_init)
    monkeypatch.setattr(MultiRunResult, "__init__", multi_init)
    yield RUNS_CHECKED
    monkeypatch.undo()


class StubRng:
    """Replays fixed numbers in place of an RngStream."""

    def __init__(self, values):
        self.values = np.asarray(values, dtype=float).ravel()
        self.pos = 0

    def random(self, shape=None):
        size = 1 if shape is None else int(np.prod(shape))
        out = self.values[self.pos : self.pos + size]
        if out.size < size:
            raise AssertionError("stub rng exhausted")
        self.pos += size
        return float(out[0]) if shape is None else out.reshape(shape)


@pytest.fixture
def stub_rng():
    return StubRng


ACCEPTANCE_LINES = []


def record_acceptance(ok: bool, name: str, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
    if any(RUNS_CHECKED.values()):
        terminalreporter.write_line(
            f"monotone-elitism guard checked {RUNS_CHECKED['single']} single-objective and "
            f"{RUNS_CHECKED['multi']} multi-objective runs"
        )
