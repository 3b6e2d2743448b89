"""Classic single-objective test functions and a repeated-run suite runner."""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from .core import Bounds, derive_seed
from .errors import DimensionError, InvalidConfigError, JayaError
from .single import SolverConfig, jaya

__all__ = [
    "sphere",
    "rastrigin",
    "rosenbrock",
    "ackley",
    "griewank",
    "BenchmarkProblem",
    "get_problem",
    "standard_problems",
    "PROBLEM_NAMES",
    "SuiteRow",
    "SuiteReport",
    "run_suite",
    "SUITE_COLUMNS",
]

TWO_PI = 2.0 * math.pi


def sphere(x) -> float:
    """Sum of squares; minimum 0 at the origin."""
    x = np.asarray(x, dtype=float)
    return float(np.dot(x, x))


def rastrigin(x) -> float:
    """``10 n + sum(x_i^2 - 10 cos(2 pi x_i))``; minimum 0 at the origin."""
    x = np.asarray(x, dtype=float)
    return float(10.0 * x.size + np.sum(x * x - 10.0 * np.cos(TWO_PI * x)))


def rosenbrock(x) -> float:
    """Banana valley; minimum 0 at all-ones. Needs at least two variables."""
    x = np.asarray(x, dtype=float)
    if x.size < 2:
        raise DimensionError(f"rosenbrock needs n >= 2, got {x.size}")
    a, b = x[:-1], x[1:]
    return float(np.sum(100.0 * (b - a * a) ** 2 + (a - 1.0) ** 2))


def ackley(x) -> float:
    x = np.asarray(x, dtype=float)
    n = x.size
    s1 = np.dot(x, x) / n
    s2 = np.sum(np.cos(TWO_PI * x)) / n
    return float(-20.0 * math.exp(-0.2 * math.sqrt(s1)) - math.exp(s2) + 20.0 + math.e)


def griewank(x) -> float:
    """``1 + sum(x^2)/4000 - prod(cos(x_i / sqrt(i)))`` with 1-based ``i``."""
    x = np.asarray(x, dtype=float)
    i = np.arange(1, x.size + 1)
    return float(1.0 + np.dot(x, x) / 4000.0 - np.prod(np.cos(x / np.sqrt(i))))


@dataclass(frozen=True)
class BenchmarkProblem:
    name: str
    f: Callable
    default_bounds: Bounds
    known_optimum_value: float
    known_optimum_x: np.ndarray

    def __post_init__(self):
        got = self.f(self.known_optimum_x)
        if abs(got - self.known_optimum_value) > 1e-12:
            raise JayaError(f"{self.name}: f(x*)={got!r} but registered optimum is {self.known_optimum_value!r}")

    @property
    def n_var(self) -> int:
        return self.default_bounds.n_var


# name -> (function, half-box or (lo, hi), optimum coordinate)
_REGISTRY = {
    "sphere": (sphere, (-5.12, 5.12), 0.0),
    "rastrigin": (rastrigin, (-5.12, 5.12), 0.0),
    "rosenbrock": (rosenbrock, (-5.0, 10.0), 1.0),
    "ackley": (ackley, (-32.768, 32.768), 0.0),
    "griewank": (griewank, (-600.0, 600.0), 0.0),
}
PROBLEM_NAMES = tuple(_REGISTRY)


def get_problem(name: str, n_var: int = 2) -> BenchmarkProblem:
    """Build a registered benchmark in ``n_var`` dimensions on its usual box."""
    try:
        f, (lo, hi), opt = _REGISTRY[name]
    except KeyError:
        raise InvalidConfigError(f"unknown problem {name!r}; choose from {', '.join(PROBLEM_NAMES)}") from None
    if name == "rosenbrock" and n_var < 2:
        raise DimensionError("rosenbrock needs n_var >= 2")
    if n_var < 1:
        raise DimensionError(f"n_var must be >= 1, got {n_var}")
    return BenchmarkProblem(name, f, Bounds.uniform(lo, hi, n_var), 0.0, np.full(n_var, opt))


def standard_problems(n_var: int = 2) -> list[BenchmarkProblem]:
    return [get_problem(name, n_var) for name in PROBLEM_NAMES]


SUITE_COLUMNS = ("problem", "n_var", "pop_size", "max_iter", "seed", "achieved", "evaluations", "stopped_early")


@dataclass(frozen=True)
class SuiteRow:
    problem: str
    n_var: int
    pop_size: int
    max_iter: int
    seed: int
    achieved: float
    evaluations: int
    stopped_early: bool


@dataclass
class SuiteReport:
    rows: list[SuiteRow]

    def problems(self) -> list[str]:
        return list(dict.fromkeys(r.problem for r in self.rows))

    def achieved(self, problem: str) -> np.ndarray:
        return np.array([r.achieved for r in self.rows if r.problem == problem])

    def aggregate(self) -> list[dict]:
        """Best / median / worst achieved value and mean evaluations per problem."""
        out = []
        for name in self.problems():
            vals = self.achieved(name)
            evals = [r.evaluations for r in self.rows if r.problem == name]
            out.append(
                {
                    "problem": name,
                    "runs": vals.size,
                    "best": float(vals.min()),
                    "median": float(np.median(vals)),
                    "worst": float(vals.max()),
                    "mean_evaluations": float(np.mean(evals)),
                }
            )
        return out


def run_suite(
    problems: Sequence[BenchmarkProblem],
    cfg: SolverConfig,
    seeds: Sequence[int],
) -> SuiteReport:
    """Run :func:`jaya` on every problem once per seed.

    The seed of run ``r`` on problem ``p`` is ``derive_seed(seeds[r], p, r)``;
    that derived value is what the report records. Solver errors propagate
    with the problem name prefixed to the message and stored on ``.problem``.
    """
    if not problems:
        raise InvalidConfigError("run_suite needs at least one problem")
    if not seeds:
        raise InvalidConfigError("run_suite needs at least one seed")
    rows = []
    for p, prob in enumerate(problems):
        for r, base in enumerate(seeds):
            run_seed = derive_seed(int(base), p, r)
            try:
                res = jaya(prob.f, prob.default_bounds, None, cfg.with_(seed=run_seed))
            except JayaError as exc:
                exc.problem = prob.name
                exc.args = (f"{prob.name}: {exc}",)
                raise
            rows.append(
                SuiteRow(
                    problem=prob.name,
                    n_var=prob.n_var,
                    pop_size=cfg.pop_size,
                    max_iter=cfg.max_iter,
                    seed=run_seed,
                    achieved=res.best_value,
                    evaluations=res.evaluations,
                    stopped_early=res.stopped_early,
                )
            )
    return SuiteReport(rows)
