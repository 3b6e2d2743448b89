"""Multi-objective Jaya with an external Pareto archive.

All comparisons are minimize-form: objectives with sense ``"maximize"`` are
negated, and the constraint violation times the penalty weight is added to
every objective before dominance is checked.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .constraints import ConstraintSet, violations
from .core import (
    MINIMIZE,
    Bounds,
    Population,
    RngStream,
    clamp,
    evaluate_batch,
    initialize_population,
    make_executor,
    update_rule,
)
from .errors import DimensionError, InvalidConfigError, UseJayaInsteadError
from .single import (
    SolverConfig,
    adapt_population,
    as_bounds,
    as_config,
    as_constraints,
    early_stop_check,
    improved_recently,
)

__all__ = [
    "dominates",
    "pareto_filter",
    "domination_counts",
    "ParetoArchive",
    "ParetoFront",
    "MultiHistoryRecord",
    "MultiRunResult",
    "jaya_multi",
]

_CHUNK = 256


def dominates(a, b) -> bool:
    """True iff ``a`` is no worse than ``b`` everywhere and better somewhere (minimize)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionError(f"objective vectors differ in length: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


def _dominance_block(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``out[i, j]`` is True when ``a[i]`` dominates ``b[j]``.

    Built one objective at a time to avoid a 3-D temporary.
    """
    le = a[:, None, 0] <= b[None, :, 0]
    lt = a[:, None, 0] < b[None, :, 0]
    for j in range(1, a.shape[1]):
        le &= a[:, None, j] <= b[None, :, j]
        lt |= a[:, None, j] < b[None, :, j]
    return le & lt


def _dominated_by(attackers: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Mask over ``targets``: dominated by at least one row of ``attackers``."""
    out = np.zeros(targets.shape[0], dtype=bool)
    for s in range(0, attackers.shape[0], _CHUNK):
        out |= np.any(_dominance_block(attackers[s : s + _CHUNK], targets), axis=0)
    return out


def domination_counts(points) -> np.ndarray:
    """For each point, how many other points dominate it."""
    p = np.asarray(points, dtype=float)
    counts = np.zeros(p.shape[0], dtype=int)
    for s in range(0, p.shape[0], _CHUNK):
        counts += np.sum(_dominance_block(p[s : s + _CHUNK], p), axis=0)
    return counts


def pareto_filter(points) -> np.ndarray:
    """Sorted indices of the non-dominated points; equal vectors are all kept."""
    p = np.asarray(points, dtype=float)
    if p.shape[0] == 0:
        return np.zeros(0, dtype=int)
    if p.ndim != 2:
        raise DimensionError("pareto_filter expects a 2-D array of objective vectors")
    return np.flatnonzero(~_dominated_by(p, p))


@dataclass
class ParetoFront:
    """Non-dominated solutions in the caller's objective sense."""

    x: np.ndarray
    objectives: np.ndarray
    capacity: int | None = None

    def __len__(self) -> int:
        return self.x.shape[0]

    @property
    def entries(self) -> list[dict]:
        return [{"x": self.x[i].copy(), "objectives": self.objectives[i].copy()} for i in range(len(self))]


class ParetoArchive:
    """Unbounded (or capacity-limited) store of mutually non-dominated points.

    Infeasible points are admitted only until the first feasible one shows
    up; at that moment the infeasible entries are purged and later
    infeasible points are ignored. Rows with an ``x`` already present are
    skipped.
    """

    def __init__(self, n_var: int, n_obj: int, capacity: int | None = None):
        if capacity is not None and capacity < 1:
            raise InvalidConfigError(f"archive capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self.x = np.zeros((0, n_var))
        self.raw = np.zeros((0, n_obj))
        self.fitness = np.zeros((0, n_obj))
        self.violation = np.zeros(0)
        self.feasible_seen = False

    def __len__(self) -> int:
        return self.x.shape[0]

    def _take(self, keep) -> None:
        self.x, self.raw = self.x[keep], self.raw[keep]
        self.fitness, self.violation = self.fitness[keep], self.violation[keep]

    def add(self, x, raw, fitness, violation) -> None:
        x, raw, fitness, violation = map(np.asarray, (x, raw, fitness, violation))
        feasible = violation == 0.0
        if feasible.any():
            if not self.feasible_seen:
                self._take(self.violation == 0.0)
                self.feasible_seen = True
        if self.feasible_seen:
            x, raw, fitness, violation = x[feasible], raw[feasible], fitness[feasible], violation[feasible]
        if x.shape[0] == 0:
            return
        # drop exact repeats of decision vectors, within the batch and vs the archive
        _, first = np.unique(x, axis=0, return_index=True)
        fresh = np.zeros(x.shape[0], dtype=bool)
        fresh[np.sort(first)] = True
        if len(self):
            known = {row.tobytes() for row in self.x}
            fresh &= np.array([row.tobytes() not in known for row in x])
        x, raw, fitness, violation = x[fresh], raw[fresh], fitness[fresh], violation[fresh]
        if x.shape[0] == 0:
            return

        nd = pareto_filter(fitness)
        x, raw, fitness, violation = x[nd], raw[nd], fitness[nd], violation[nd]
        if len(self):
            survive = ~_dominated_by(self.fitness, fitness)
            x, raw, fitness, violation = x[survive], raw[survive], fitness[survive], violation[survive]
            self._take(~_dominated_by(fitness, self.fitness))
        self.x = np.vstack([self.x, x])
        self.raw = np.vstack([self.raw, raw])
        self.fitness = np.vstack([self.fitness, fitness])
        self.violation = np.concatenate([self.violation, violation])
        if self.capacity is not None:
            self._evict()

    def _evict(self) -> None:
        """Trim to capacity, each time dropping the most crowded entry.

        Crowding is the distance to the nearest neighbour in range-normalised
        objective space; the per-objective extremes are never dropped.
        """
        while len(self) > self.capacity:
            f = self.fitness
            span = f.max(axis=0) - f.min(axis=0)
            span[span == 0] = 1.0
            z = (f - f.min(axis=0)) / span
            d = np.sqrt(((z[:, None, :] - z[None, :, :]) ** 2).sum(axis=2))
            np.fill_diagonal(d, np.inf)
            nearest = d.min(axis=1)
            protected = set(np.argmin(f, axis=0).tolist())
            if len(protected) >= len(self):
                protected = set()
            nearest[list(protected)] = np.inf
            victim = len(self) - 1 - int(np.argmin(nearest[::-1]))
            self._take(np.arange(len(self)) != victim)

    def front(self) -> ParetoFront:
        return ParetoFront(self.x.copy(), self.raw.copy(), self.capacity)


class MultiHistoryRecord(NamedTuple):
    iteration: int
    front_size: int
    ideal_point: tuple
    pop_size: int


@dataclass
class MultiRunResult:
    """Outcome of :func:`jaya_multi`.

    ``front`` and ``final_population`` report objectives in the caller's
    sense. ``history[t].ideal_point`` is minimize-form (maximized objectives
    appear negated) and never increases.
    """

    front: ParetoFront
    final_population: list[dict]
    iterations_run: int
    history: list[MultiHistoryRecord]
    stopped_early: bool
    evaluations: int
    bounds: Bounds
    config: SolverConfig
    seed: int
    senses: tuple
    population: Population = field(repr=False)

    @property
    def ideal_point(self) -> np.ndarray:
        return np.array(self.history[-1].ideal_point)


def _senses(cfg: SolverConfig, senses, k: int) -> tuple:
    if senses is None:
        senses = cfg.sense
    if isinstance(senses, str):
        return (senses,) * k
    senses = tuple(senses)
    if len(senses) != k:
        raise InvalidConfigError(f"got {len(senses)} senses for {k} objectives")
    return senses


def _pick(pool, u):
    return pool[np.minimum((u * pool.size).astype(int), pool.size - 1)]


def select_guides(pop: Population, archive: ParetoArchive, counts, u0, u1, rule: str = "elite"):
    """Guide and repeller positions for every member.

    ``"elite"``: member ``i`` works on objective ``j = floor(u0[i] * k)``; its
    guide is the archive entry best on ``j`` and its repeller the population
    member worst on ``j`` (ties to the lowest index). ``u1`` is unused.

    ``"dominance"``: guide drawn uniformly from the non-dominated members,
    repeller drawn uniformly from the members dominated by the most others.
    """
    if rule == "elite":
        k = pop.fitness.shape[1]
        j = np.minimum((u0 * k).astype(int), k - 1)
        guide = archive.x[np.argmin(archive.fitness, axis=0)[j]]
        repel = pop.x[np.argmax(pop.fitness, axis=0)[j]]
        return guide, repel
    if rule == "dominance":
        leaders = np.flatnonzero(counts == 0)
        laggards = np.flatnonzero(counts == counts.max())
        return pop.x[_pick(leaders, u0)], pop.x[_pick(laggards, u1)]
    raise InvalidConfigError(f"unknown selection rule {rule!r}; use 'elite' or 'dominance'")


SELECTION_RULES = ("elite", "dominance")


def _badness(counts: np.ndarray, violation: np.ndarray) -> np.ndarray:
    """Rank members by (violation, domination count); higher is worse."""
    order = np.lexsort((counts, violation))
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    return rank.astype(float)


def jaya_multi(
    objectives: Sequence[Callable],
    bounds,
    constraints: ConstraintSet | Sequence[Callable] | None = None,
    config: SolverConfig | None = None,
    *,
    senses: Sequence[str] | str | None = None,
    capacity: int | None = None,
    selection: str = "elite",
    executor=None,
    **kwargs,
) -> MultiRunResult:
    """Pareto-based Jaya over two or more objectives.

    Each iteration draws, per member, two selection numbers and one
    ``(r1, r2)`` pair per coordinate, all serially. ``selection`` picks how
    those two numbers become a guide and a repeller (see
    :func:`select_guides`). A proposal replaces its parent if it dominates
    it, or, when neither dominates, if its constraint violation is strictly
    lower. Every evaluated point is offered to the archive.

    Args:
        objectives: list of ``f(x) -> float``; at least two.
        senses: per-objective ``"minimize"``/``"maximize"``; defaults to
            ``config.sense`` for every objective.
        capacity: optional archive size limit.
        selection: ``"elite"`` (default) or ``"dominance"``.

    Other arguments follow :func:`jaya`.
    """
    objectives = tuple(objectives)
    if selection not in SELECTION_RULES:
        raise InvalidConfigError(f"unknown selection rule {selection!r}; use 'elite' or 'dominance'")
    if len(objectives) < 2:
        raise UseJayaInsteadError("jaya_multi needs at least two objectives; use jaya() for one")
    bounds = as_bounds(bounds)
    cs = as_constraints(constraints)
    cfg = as_config(config, kwargs)
    k = len(objectives)
    sen = _senses(cfg, senses, k)
    sign = np.array([1.0 if s == MINIMIZE else -1.0 for s in sen])
    n = bounds.n_var

    rng = RngStream(cfg.seed)
    pop = initialize_population(bounds, cfg.pop_size, rng, n_obj=k)
    archive = ParetoArchive(n, k, capacity)

    own_executor = executor is None and cfg.workers > 1
    ex = make_executor(cfg.workers) if own_executor else executor

    def evaluate(x):
        raw = evaluate_batch(objectives, x, ex)
        v = violations(x, cs)
        fit = raw * sign + (cs.penalty_weight * v)[:, None]
        archive.add(x, raw, fit, v)
        return raw, fit, v

    evaluations = 0
    history: list[MultiHistoryRecord] = []
    ideal = np.full(k, np.inf)
    stopped = False
    try:
        for t in range(1, cfg.max_iter + 1):
            todo = np.flatnonzero(~pop.evaluated)
            if todo.size:
                pop.store(todo, *evaluate(pop.x[todo]))
                evaluations += todo.size

            m = len(pop)
            counts = domination_counts(pop.fitness) if selection == "dominance" else None
            r = rng.random((m, 2 + 2 * n))
            gx, wx = select_guides(pop, archive, counts, r[:, 0], r[:, 1], selection)
            pairs = r[:, 2:].reshape(m, n, 2)
            proposal = clamp(update_rule(pop.x, gx, wx, pairs[..., 0], pairs[..., 1]), bounds)
            raw, fit, v = evaluate(proposal)
            evaluations += m

            new_dom = np.all(fit <= pop.fitness, axis=1) & np.any(fit < pop.fitness, axis=1)
            old_dom = np.all(pop.fitness <= fit, axis=1) & np.any(pop.fitness < fit, axis=1)
            accept = new_dom | (~new_dom & ~old_dom & (v < pop.violation))
            pop.x[accept] = proposal[accept]
            pop.store(accept, raw[accept], fit[accept], v[accept])
            pop.generation = t

            ideal = np.minimum(ideal, archive.fitness.min(axis=0))
            history.append(MultiHistoryRecord(t, len(archive), tuple(float(c) for c in ideal), m))

            ideals = [h.ideal_point for h in history]
            if cfg.early_stop is not None and early_stop_check(
                ideals, cfg.early_stop.tolerance, cfg.early_stop.patience
            ):
                stopped = True
                break
            if cfg.adaptive_pop:
                improved = improved_recently(ideals, cfg)
                if improved is not None:
                    bad = _badness(domination_counts(pop.fitness), pop.violation)
                    adapt_population(pop, improved, cfg, rng, badness=bad)
    finally:
        if own_executor:
            ex.shutdown()

    done = pop.evaluated
    final = [{"x": pop.x[i].copy(), "objectives": pop.raw[i].copy()} for i in np.flatnonzero(done)]
    return MultiRunResult(
        front=archive.front(),
        final_population=final,
        iterations_run=len(history),
        history=history,
        stopped_early=stopped,
        evaluations=evaluations,
        bounds=bounds,
        config=cfg,
        seed=rng.seed,
        senses=sen,
        population=pop,
    )
