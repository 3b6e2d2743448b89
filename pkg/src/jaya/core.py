"""Foundational types and the Jaya move shared by both solvers.

Random numbers come from :class:`RngStream`, a PCG64 generator (XSL-RR
128/64 output) whose 128-bit state and increment are filled from four
consecutive SplitMix64 outputs of the user seed::

    state = (s0 << 64) | s1
    inc   = ((s2 << 64) | s3) | 1

Doubles are ``(next_u64 >> 11) * 2**-53``, uniform on [0, 1). Draw order
is fixed so golden values stay stable: population fill is member-major,
variable-minor; an update consumes one ``(r1, r2)`` pair per coordinate,
in coordinate order.
"""

from __future__ import annotations

import secrets
from collections.abc import Callable, Sequence
from concurrent.futures import Executor, ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionError,
    EvaluationOrderError,
    InvalidBoundsError,
    InvalidConfigError,
    NonFiniteObjectiveError,
)

__all__ = [
    "Bounds",
    "Candidate",
    "Population",
    "RngStream",
    "splitmix64",
    "derive_seed",
    "initialize_population",
    "update_rule",
    "jaya_update",
    "select_best_worst",
    "clamp",
    "evaluate_batch",
    "MINIMIZE",
    "MAXIMIZE",
]

MINIMIZE = "minimize"
MAXIMIZE = "maximize"
_MASK64 = (1 << 64) - 1


def check_sense(sense: str) -> str:
    if sense not in (MINIMIZE, MAXIMIZE):
        raise InvalidConfigError(f"sense must be 'minimize' or 'maximize', got {sense!r}")
    return sense


# --------------------------------------------------------------------------
# Random numbers
# --------------------------------------------------------------------------


def splitmix64(seed: int, count: int) -> list[int]:
    """Return ``count`` successive SplitMix64 outputs starting from ``seed``."""
    out = []
    s = seed & _MASK64
    for _ in range(count):
        s = (s + 0x9E3779B97F4A7C15) & _MASK64
        z = s
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        out.append(z ^ (z >> 31))
    return out


def derive_seed(base: int, *keys: int) -> int:
    """Deterministically mix integer keys into a 64-bit child seed."""
    s = base & _MASK64
    for k in keys:
        s = splitmix64(s ^ (k & _MASK64), 1)[0]
    return s


class RngStream:
    """Seeded uniform [0, 1) stream, identical on every platform.

    Args:
        seed: 64-bit seed. ``None`` draws one from the OS; the chosen value
            is kept on ``self.seed`` so the run can be replayed.
    """

    def __init__(self, seed: int | None = None):
        if seed is None:
            seed = secrets.randbits(64)
        if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
            raise InvalidConfigError(f"seed must be an integer, got {seed!r}")
        self.seed = int(seed) & _MASK64
        s0, s1, s2, s3 = splitmix64(self.seed, 4)
        bitgen = np.random.PCG64()
        state = bitgen.state
        state["state"] = {"state": (s0 << 64) | s1, "inc": ((s2 << 64) | s3) | 1}
        state["has_uint32"] = 0
        state["uinteger"] = 0
        bitgen.state = state
        self._gen = np.random.Generator(bitgen)

    def random(self, shape=None):
        """Uniform draws on [0, 1), filled in C order."""
        return self._gen.random(shape)

    def index(self, n: int) -> int:
        """Uniform integer in ``range(n)`` built from a single draw."""
        return min(int(self._gen.random() * n), n - 1)


# --------------------------------------------------------------------------
# Types
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Bounds:
    """Axis-aligned search box; ``lower[i] == upper[i]`` pins a variable."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        try:
            lo = np.array(self.lower, dtype=float).reshape(-1)
            hi = np.array(self.upper, dtype=float).reshape(-1)
        except (TypeError, ValueError) as exc:
            raise InvalidBoundsError(f"bounds are not numeric: {exc}") from None
        if lo.size == 0 or lo.shape != hi.shape:
            raise InvalidBoundsError(
                f"lower and upper must be non-empty and equal length, got {lo.size} and {hi.size}"
            )
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise InvalidBoundsError("bounds must be finite")
        bad = np.flatnonzero(lo > hi)
        if bad.size:
            i = int(bad[0])
            raise InvalidBoundsError(f"lower[{i}]={lo[i]} exceeds upper[{i}]={hi[i]}")
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def uniform(cls, low: float, high: float, n_var: int) -> Bounds:
        return cls(np.full(n_var, float(low)), np.full(n_var, float(high)))

    @property
    def n_var(self) -> int:
        return self.lower.size

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


@dataclass
class Candidate:
    """One decision vector and its cached evaluation.

    ``penalized`` is the comparison fitness: the penalized, minimize-form
    objective for single-objective runs, and the constraint violation alone
    for multi-objective runs.
    """

    x: np.ndarray
    raw_objectives: np.ndarray | None = None
    penalized: float | None = None

    @property
    def evaluated(self) -> bool:
        return self.penalized is not None


@dataclass
class Population:
    """Ordered candidates stored column-wise for vectorised updates.

    Rows of ``x`` are members. ``raw`` holds objectives in the caller's
    sense (one column per objective), ``fitness`` the minimize-form
    comparison values (single-objective: penalized objective; multi: the
    penalized objective vector), ``violation`` the constraint violation.
    Unevaluated rows carry NaN.
    """

    bounds: Bounds
    x: np.ndarray
    raw: np.ndarray
    fitness: np.ndarray
    violation: np.ndarray
    generation: int = 0
    n_obj: int = field(default=1)

    @classmethod
    def empty_scores(cls, bounds: Bounds, x: np.ndarray, n_obj: int = 1) -> Population:
        m = x.shape[0]
        fit_shape = (m,) if n_obj == 1 else (m, n_obj)
        return cls(
            bounds=bounds,
            x=x,
            raw=np.full((m, n_obj), np.nan),
            fitness=np.full(fit_shape, np.nan),
            violation=np.full(m, np.nan),
            n_obj=n_obj,
        )

    def __len__(self) -> int:
        return self.x.shape[0]

    @property
    def evaluated(self) -> np.ndarray:
        return ~np.isnan(self.violation)

    @property
    def penalized(self) -> np.ndarray:
        """Per-member comparison value (violation in multi-objective mode)."""
        return self.fitness if self.n_obj == 1 else self.violation

    @property
    def members(self) -> list[Candidate]:
        out = []
        for i in range(len(self)):
            if self.evaluated[i]:
                out.append(Candidate(self.x[i].copy(), self.raw[i].copy(), float(self.penalized[i])))
            else:
                out.append(Candidate(self.x[i].copy()))
        return out

    def store(self, rows, raw, fitness, violation) -> None:
        self.raw[rows] = raw
        self.fitness[rows] = fitness
        self.violation[rows] = violation

    def append(self, x_new: np.ndarray) -> None:
        """Add unevaluated members at the end."""
        other = Population.empty_scores(self.bounds, x_new, self.n_obj)
        self.x = np.vstack([self.x, other.x])
        self.raw = np.vstack([self.raw, other.raw])
        self.fitness = np.concatenate([self.fitness, other.fitness])
        self.violation = np.concatenate([self.violation, other.violation])

    def keep(self, rows) -> None:
        """Retain only ``rows``, preserving their relative order."""
        rows = np.sort(np.asarray(rows, dtype=int))
        self.x = self.x[rows]
        self.raw = self.raw[rows]
        self.fitness = self.fitness[rows]
        self.violation = self.violation[rows]


# --------------------------------------------------------------------------
# Operations
# --------------------------------------------------------------------------


def initialize_population(bounds: Bounds, pop_size: int, rng: RngStream, n_obj: int = 1) -> Population:
    """Sample ``pop_size`` members uniformly in the box, member-major."""
    if not isinstance(bounds, Bounds):
        raise InvalidBoundsError(f"expected Bounds, got {type(bounds).__name__}")
    if isinstance(pop_size, bool) or not isinstance(pop_size, (int, np.integer)) or pop_size < 2:
        raise InvalidConfigError(f"pop_size must be an integer >= 2, got {pop_size!r}")
    u = rng.random((int(pop_size), bounds.n_var))
    x = bounds.lower + u * bounds.width
    return Population.empty_scores(bounds, x, n_obj)


def clamp(x, bounds: Bounds) -> np.ndarray:
    """Project ``x`` (a vector or a stack of row vectors) onto the box."""
    return np.minimum(np.maximum(np.asarray(x, dtype=float), bounds.lower), bounds.upper)


def update_rule(x_old, x_best, x_worst, r1, r2) -> np.ndarray:
    """``x_old + r1*(x_best - |x_old|) - r2*(x_worst - |x_old|)``, elementwise, unclamped."""
    a = np.abs(x_old)
    return x_old + r1 * (x_best - a) - r2 * (x_worst - a)


def jaya_update(x_old, x_best, x_worst, rng, bounds: Bounds | None = None) -> np.ndarray:
    """Move one candidate toward ``x_best`` and away from ``x_worst``.

    Draws one ``(r1, r2)`` pair per coordinate from ``rng`` and clamps the
    result into ``bounds`` when given.
    """
    x_old = np.asarray(x_old, dtype=float)
    x_best = np.asarray(x_best, dtype=float)
    x_worst = np.asarray(x_worst, dtype=float)
    if not (x_old.shape == x_best.shape == x_worst.shape) or x_old.ndim != 1:
        raise DimensionError(
            f"x_old, x_best, x_worst must be equal-length vectors, got shapes "
            f"{x_old.shape}, {x_best.shape}, {x_worst.shape}"
        )
    if bounds is not None and bounds.n_var != x_old.size:
        raise DimensionError(f"vector length {x_old.size} does not match {bounds.n_var} bounds")
    r = np.asarray(rng.random((x_old.size, 2)), dtype=float)
    x_new = update_rule(x_old, x_best, x_worst, r[:, 0], r[:, 1])
    return x_new if bounds is None else clamp(x_new, bounds)


def select_best_worst(pop, sense: str = MINIMIZE) -> tuple[int, int]:
    """Indices of the best and worst members; ties go to the lowest index.

    ``pop`` may be a :class:`Population` or a 1-D array of penalized values.
    """
    values = np.asarray(pop.penalized if isinstance(pop, Population) else pop, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise DimensionError("select_best_worst needs a non-empty 1-D set of values")
    if np.isnan(values).any():
        raise EvaluationOrderError(
            f"member {int(np.flatnonzero(np.isnan(values))[0])} has not been evaluated"
        )
    if check_sense(sense) == MINIMIZE:
        return int(np.argmin(values)), int(np.argmax(values))
    return int(np.argmax(values)), int(np.argmin(values))


def evaluate_batch(
    objectives: Sequence[Callable],
    x: np.ndarray,
    executor: Executor | None = None,
) -> np.ndarray:
    """Evaluate every objective on every row of ``x``.

    Returns an ``(m, k)`` array. Rows are dispatched to ``executor`` when
    one is given; results are placed by row index so the outcome does not
    depend on scheduling.
    """

    def one(row):
        return [float(f(row)) for f in objectives]

    rows = [x[i] for i in range(x.shape[0])]
    if executor is None:
        out = [one(r) for r in rows]
    else:
        out = list(executor.map(one, rows))
    values = np.array(out, dtype=float).reshape(len(rows), len(objectives))
    bad = ~np.isfinite(values)
    if bad.any():
        i, k = map(int, np.argwhere(bad)[0])
        raise NonFiniteObjectiveError(x[i].copy(), values[i, k], k)
    return values


def make_executor(workers: int) -> Executor | None:
    """Thread pool for ``workers > 1``; ``None`` means evaluate inline."""
    if workers is None or workers <= 1:
        return None
    return ThreadPoolExecutor(max_workers=int(workers))
