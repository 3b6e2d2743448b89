"""Single-objective Jaya solver."""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np

from .constraints import NO_CONSTRAINTS, ConstraintSet, violations
from .core import (
    MAXIMIZE,
    MINIMIZE,
    Bounds,
    Population,
    RngStream,
    check_sense,
    clamp,
    evaluate_batch,
    initialize_population,
    make_executor,
    select_best_worst,
    update_rule,
)
from .errors import InvalidConfigError

__all__ = [
    "EarlyStop",
    "SolverConfig",
    "HistoryRecord",
    "RunResult",
    "jaya",
    "early_stop_check",
    "adapt_population",
    "stall_window",
]

# Stall window used by adaptive sizing when no early-stop rule is configured.
DEFAULT_STALL_WINDOW = 5


@dataclass(frozen=True)
class EarlyStop:
    """Stop once the best value improves by less than ``tolerance`` over ``patience`` iterations."""

    tolerance: float
    patience: int

    def __post_init__(self):
        if not (math.isfinite(self.tolerance) and self.tolerance > 0):
            raise InvalidConfigError(f"tolerance must be positive, got {self.tolerance!r}")
        if isinstance(self.patience, bool) or not isinstance(self.patience, int) or self.patience < 1:
            raise InvalidConfigError(f"patience must be an integer >= 1, got {self.patience!r}")


def _is_int(v) -> bool:
    return isinstance(v, (int, np.integer)) and not isinstance(v, bool)


@dataclass(frozen=True)
class SolverConfig:
    """Run settings shared by :func:`jaya` and :func:`jaya_multi`.

    When ``adaptive_pop`` is on and ``min_pop``/``max_pop`` are omitted they
    default to ``max(2, pop_size // 2)`` and ``2 * pop_size``.
    ``stall_tolerance`` is the improvement adaptive sizing counts as progress;
    it falls back to the early-stop tolerance, then to "any improvement".
    """

    max_iter: int
    pop_size: int = 50
    sense: str = MINIMIZE
    seed: int | None = None
    adaptive_pop: bool = False
    min_pop: int | None = None
    max_pop: int | None = None
    early_stop: EarlyStop | None = None
    stall_tolerance: float | None = None
    workers: int = 1

    def __post_init__(self):
        if not _is_int(self.max_iter) or self.max_iter < 1:
            raise InvalidConfigError(f"max_iter must be an integer >= 1, got {self.max_iter!r}")
        if not _is_int(self.pop_size) or self.pop_size < 2:
            raise InvalidConfigError(f"pop_size must be an integer >= 2, got {self.pop_size!r}")
        if not _is_int(self.workers) or self.workers < 1:
            raise InvalidConfigError(f"workers must be an integer >= 1, got {self.workers!r}")
        if self.stall_tolerance is not None and not (
            math.isfinite(self.stall_tolerance) and self.stall_tolerance >= 0
        ):
            raise InvalidConfigError(f"stall_tolerance must be >= 0, got {self.stall_tolerance!r}")
        if isinstance(self.sense, str):
            check_sense(self.sense)
        else:
            object.__setattr__(self, "sense", tuple(self.sense))
            for s in self.sense:
                check_sense(s)
        if self.adaptive_pop:
            lo = max(2, self.pop_size // 2) if self.min_pop is None else self.min_pop
            hi = 2 * self.pop_size if self.max_pop is None else self.max_pop
            if not (_is_int(lo) and _is_int(hi)):
                raise InvalidConfigError("min_pop and max_pop must be integers")
            if lo < 2:
                raise InvalidConfigError(f"min_pop must be >= 2, got {lo}")
            if not lo <= self.pop_size <= hi:
                raise InvalidConfigError(
                    f"adaptive range requires min_pop <= pop_size <= max_pop, got {lo} <= {self.pop_size} <= {hi}"
                )
            object.__setattr__(self, "min_pop", int(lo))
            object.__setattr__(self, "max_pop", int(hi))

    def with_(self, **changes) -> SolverConfig:
        return replace(self, **changes)


class HistoryRecord(NamedTuple):
    iteration: int
    best_penalized: float
    pop_size: int


@dataclass
class RunResult:
    """Outcome of :func:`jaya`.

    ``best_value`` is the raw objective at ``best_x`` in the caller's sense.
    ``history[t].best_penalized`` is minimize-form (negated for maximize).
    """

    best_x: np.ndarray
    best_value: float
    best_penalized: float
    history: list[HistoryRecord]
    iterations_run: int
    stopped_early: bool
    evaluations: int
    bounds: Bounds
    config: SolverConfig
    seed: int
    population: Population = field(repr=False)
    best_violation: float = 0.0

    @property
    def feasible(self) -> bool:
        return self.best_violation == 0.0


def early_stop_check(history, tolerance: float, patience: int) -> bool:
    """True when the last ``patience`` iterations improved by less than ``tolerance``.

    ``history`` holds minimize-form best values, either scalars or one vector
    per iteration; for vectors every coordinate must have stalled.
    """
    h = np.asarray(history, dtype=float)
    if h.shape[0] < patience + 1:
        return False
    gain = h[-1 - patience] - h[-1]
    return bool(np.all(gain < tolerance))


def stall_window(cfg: SolverConfig) -> tuple[int, float]:
    """Window length and improvement threshold for adaptive sizing."""
    if cfg.early_stop is None:
        window, tol = DEFAULT_STALL_WINDOW, 0.0
    else:
        window, tol = math.ceil(cfg.early_stop.patience / 2), cfg.early_stop.tolerance
    if cfg.stall_tolerance is not None:
        tol = cfg.stall_tolerance
    return window, tol


def improved_recently(history, cfg: SolverConfig) -> bool | None:
    """Whether the best value moved enough over the stall window.

    Returns ``None`` until the window has filled. With no early-stop rule any
    strict improvement counts.
    """
    window, tol = stall_window(cfg)
    h = np.asarray(history, dtype=float)
    if h.shape[0] < window + 1:
        return None
    gain = h[-1 - window] - h[-1]
    if tol == 0.0:
        return bool(np.any(gain > 0.0))
    return bool(np.any(gain >= tol))


def adapt_population(
    pop: Population,
    improved_recently: bool,
    cfg: SolverConfig,
    rng: RngStream,
    badness: np.ndarray | None = None,
) -> Population:
    """Grow on stall, shrink on progress, by ceil(10%) of the current size.

    Growth appends fresh uniform samples (unevaluated) up to ``max_pop``.
    Shrinking drops the members with the largest ``badness`` (default: the
    penalized fitness) down to ``min_pop`` and never drops the best member.
    Ties among equally bad members drop the later index first.
    """
    if not cfg.adaptive_pop:
        raise InvalidConfigError("adapt_population called with adaptive_pop disabled")
    m = len(pop)
    step = math.ceil(0.1 * m)
    if not improved_recently:
        k = min(cfg.max_pop, m + step) - m
        if k > 0:
            b = pop.bounds
            pop.append(b.lower + rng.random((k, b.n_var)) * b.width)
        return pop
    k = m - max(cfg.min_pop, m - step)
    if k <= 0:
        return pop
    key = np.asarray(pop.fitness if badness is None else badness, dtype=float)
    best = int(np.argmin(key))
    idx = np.arange(m)
    # largest badness first; among ties the highest index first
    order = np.lexsort((-idx, -key))
    drop = [i for i in order if i != best][:k]
    pop.keep(np.setdiff1d(idx, drop))
    return pop


def as_bounds(bounds) -> Bounds:
    if isinstance(bounds, Bounds):
        return bounds
    lower, upper = bounds
    return Bounds(lower, upper)


def as_constraints(constraints) -> ConstraintSet:
    if constraints is None:
        return NO_CONSTRAINTS
    if isinstance(constraints, ConstraintSet):
        return constraints
    return ConstraintSet(tuple(constraints))


def as_config(config, kwargs) -> SolverConfig:
    if config is None:
        if "max_iter" not in kwargs:
            raise InvalidConfigError("max_iter is required")
        return SolverConfig(**kwargs)
    return config.with_(**kwargs) if kwargs else config


def jaya(
    objective: Callable,
    bounds: Bounds | tuple[Sequence[float], Sequence[float]],
    constraints: ConstraintSet | Sequence[Callable] | None = None,
    config: SolverConfig | None = None,
    *,
    executor=None,
    **kwargs,
) -> RunResult:
    """Minimize (or maximize) ``objective`` over a box with the Jaya update.

    Each iteration evaluates any unevaluated members, picks the best and
    worst once, proposes one move per member, and keeps a proposal only if
    its penalized fitness is strictly better than its parent's.

    Args:
        objective: ``f(x) -> float`` on a 1-D array. Must be pure when run
            with ``workers > 1``.
        bounds: :class:`Bounds` or a ``(lower, upper)`` pair.
        constraints: :class:`ConstraintSet` or a list of ``g(x) <= 0`` callables.
        config: :class:`SolverConfig`; keyword arguments override its fields
            or build one when it is omitted.
        executor: optional ``concurrent.futures.Executor`` for objective
            calls; overrides ``config.workers``.

    Returns:
        :class:`RunResult` with the best-ever candidate and per-iteration history.
    """
    bounds = as_bounds(bounds)
    cs = as_constraints(constraints)
    cfg = as_config(config, kwargs)
    if not isinstance(cfg.sense, str):
        raise InvalidConfigError("jaya takes a single sense string")
    sign = 1.0 if cfg.sense == MINIMIZE else -1.0
    rng = RngStream(cfg.seed)
    pop = initialize_population(bounds, cfg.pop_size, rng)
    n = bounds.n_var

    own_executor = executor is None and cfg.workers > 1
    ex = make_executor(cfg.workers) if own_executor else executor

    evaluations = 0

    def evaluate(x):
        raw = evaluate_batch((objective,), x, ex)
        v = violations(x, cs)
        fit = sign * raw[:, 0]
        hit = v > 0.0
        fit[hit] = fit[hit] + cs.penalty_weight * v[hit]
        return raw, fit, v

    history: list[HistoryRecord] = []
    best_fit = math.inf
    best_x = best_raw = None
    best_v = 0.0
    stopped = False
    try:
        for t in range(1, cfg.max_iter + 1):
            todo = np.flatnonzero(~pop.evaluated)
            if todo.size:
                pop.store(todo, *evaluate(pop.x[todo]))
                evaluations += todo.size

            b, w = select_best_worst(pop.fitness)
            m = len(pop)
            r = rng.random((m, n, 2))
            proposal = clamp(update_rule(pop.x, pop.x[b], pop.x[w], r[..., 0], r[..., 1]), bounds)
            raw, fit, v = evaluate(proposal)
            evaluations += m
            accept = fit < pop.fitness
            pop.x[accept] = proposal[accept]
            pop.store(accept, raw[accept], fit[accept], v[accept])
            pop.generation = t

            i = int(np.argmin(pop.fitness))
            if pop.fitness[i] < best_fit:
                best_fit = float(pop.fitness[i])
                best_x = pop.x[i].copy()
                best_raw = float(pop.raw[i, 0])
                best_v = float(pop.violation[i])
            history.append(HistoryRecord(t, best_fit, m))

            if cfg.early_stop is not None and early_stop_check(
                [h.best_penalized for h in history], cfg.early_stop.tolerance, cfg.early_stop.patience
            ):
                stopped = True
                break
            if cfg.adaptive_pop:
                improved = improved_recently([h.best_penalized for h in history], cfg)
                if improved is not None:
                    adapt_population(pop, improved, cfg, rng)
    finally:
        if own_executor:
            ex.shutdown()

    return RunResult(
        best_x=best_x,
        best_value=best_raw,
        best_penalized=best_fit,
        history=history,
        iterations_run=len(history),
        stopped_early=stopped,
        evaluations=evaluations,
        bounds=bounds,
        config=cfg,
        seed=rng.seed,
        population=pop,
        best_violation=best_v,
    )
