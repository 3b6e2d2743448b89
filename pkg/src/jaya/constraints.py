"""Static quadratic exterior penalty for inequality constraints ``g(x) <= 0``."""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidConfigError, NonFiniteConstraintError

__all__ = ["ConstraintSet", "violation", "penalize", "DEFAULT_PENALTY_WEIGHT"]

DEFAULT_PENALTY_WEIGHT = 1e6


@dataclass(frozen=True)
class ConstraintSet:
    """Inequality constraints, each feasible where it returns a value <= 0.

    Equality constraints ``h(x) = 0`` are written as the pair ``h <= 0`` and
    ``-h <= 0``.
    """

    constraints: Sequence[Callable] = field(default_factory=tuple)
    penalty_weight: float = DEFAULT_PENALTY_WEIGHT

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        w = self.penalty_weight
        if not (isinstance(w, (int, float)) and math.isfinite(w) and w > 0):
            raise InvalidConfigError(f"penalty_weight must be a positive finite number, got {w!r}")
        for j, g in enumerate(self.constraints):
            if not callable(g):
                raise InvalidConfigError(f"constraint {j} is not callable")

    def __len__(self):
        return len(self.constraints)


NO_CONSTRAINTS = ConstraintSet()


def violation(x, cs: ConstraintSet | None) -> float:
    """Sum of squared positive parts of the constraint values; 0 iff feasible."""
    if cs is None or not cs.constraints:
        return 0.0
    x = np.asarray(x, dtype=float)
    total = 0.0
    for j, g in enumerate(cs.constraints):
        try:
            v = float(g(x))
        except Exception as exc:
            raise NonFiniteConstraintError(j, x, f"{type(exc).__name__}: {exc}") from exc
        if not math.isfinite(v):
            raise NonFiniteConstraintError(j, x, f"returned {v!r}")
        if v > 0.0:
            total += v * v
    return total


def penalize(raw: float, x, cs: ConstraintSet | None, v: float | None = None) -> float:
    """``raw + penalty_weight * violation(x)`` for a minimize-form ``raw``.

    Pass a precomputed violation as ``v`` to skip re-evaluating constraints.
    """
    if v is None:
        v = violation(x, cs)
    if v == 0.0:
        return float(raw)
    return float(raw) + cs.penalty_weight * v


def violations(x_rows: np.ndarray, cs: ConstraintSet | None) -> np.ndarray:
    """Row-wise :func:`violation` for a stack of candidates."""
    if cs is None or not cs.constraints:
        return np.zeros(x_rows.shape[0])
    return np.array([violation(row, cs) for row in x_rows], dtype=float)
