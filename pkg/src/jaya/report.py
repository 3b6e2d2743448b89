"""Text summaries and CSV / JSON-lines exports of solver results.

Floats are written with 17 significant digits so every value reads back to
the identical double. Output is deterministic: the same result always
produces the same bytes.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .benchmarks import SUITE_COLUMNS, SuiteReport
from .energy import FRONT_COLUMNS as ENERGY_COLUMNS
from .energy import EnergyCaseResult
from .multi import MultiRunResult
from .single import RunResult

__all__ = [
    "fmt_float",
    "emit_summary",
    "emit_history_csv",
    "emit_front_csv",
    "emit_suite_csv",
    "emit_energy_csv",
    "write_table",
]

FORMATS = ("csv", "json-lines")


def fmt_float(v) -> str:
    return format(float(v), ".17g")


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return fmt_float(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, str):
        return v
    return float(v)


def write_table(path, columns, rows, fmt: str = "csv") -> Path:
    """Write ``rows`` (sequences aligned with ``columns``) to ``path``."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown output format {fmt!r}")
    path = Path(path)
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([v if isinstance(v, str) else _cell(v) for v in row])
    else:
        for row in rows:
            buf.write(json.dumps({c: _json_value(v) for c, v in zip(columns, row)}) + "\n")
    try:
        path.write_text(buf.getvalue())
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc
    return path


def _limit(v: float) -> str:
    return format(float(v), "g")


def emit_summary(result) -> str:
    """Human-readable report of a finished run."""
    if isinstance(result, EnergyCaseResult):
        return _summary_multi(result.run, names=("emissions", "cost", "reliability"))
    if isinstance(result, MultiRunResult):
        return _summary_multi(result)
    if isinstance(result, RunResult):
        return _summary_single(result)
    raise TypeError(f"cannot summarise {type(result).__name__}")


def _header(lines, cfg, iterations, n_var, pop_now):
    lines.append("Jaya Algorithm")
    lines.append(f"Population Size      = {cfg.pop_size}")
    if cfg.adaptive_pop:
        lines.append(f"Final Population     = {pop_now} (adaptive {cfg.min_pop}-{cfg.max_pop})")
    lines.append(f"Number of iterations = {iterations}")
    lines.append(f"Number of variables  = {n_var}")
    lines.append("")


def _limits(lines, bounds):
    lines.append("Limits:")
    for i, (lo, hi) in enumerate(zip(bounds.lower, bounds.upper), start=1):
        lines.append(f"x{i} = [{_limit(lo)}, {_limit(hi)}]")
    lines.append("")


def _summary_single(res: RunResult) -> str:
    lines = []
    _header(lines, res.config, res.iterations_run, res.bounds.n_var, len(res.population))
    lines.append(f"Objective: {res.config.sense}")
    if res.stopped_early:
        lines.append(f"Stopped early after {res.iterations_run} of {res.config.max_iter} iterations")
    lines.append(f"Evaluations: {res.evaluations}")
    lines.append(f"Seed: {res.seed}")
    lines.append("")
    _limits(lines, res.bounds)
    lines.append("Best Result:")
    for i, v in enumerate(res.best_x, start=1):
        lines.append(f"Best.x{i} = {v:.6e}")
    lines.append(f"Best.f.x. = {res.best_value:.6e}")
    if not res.feasible:
        lines.append(f"Warning: best solution violates constraints (violation {res.best_violation:.3e})")
    return "\n".join(lines) + "\n"


def _summary_multi(res: MultiRunResult, names=None) -> str:
    k = len(res.senses)
    names = names or tuple(f"f{j}" for j in range(1, k + 1))
    lines = []
    _header(lines, res.config, res.iterations_run, res.bounds.n_var, len(res.population))
    lines.append("Objectives: " + ", ".join(f"{n} ({s})" for n, s in zip(names, res.senses)))
    if res.stopped_early:
        lines.append(f"Stopped early after {res.iterations_run} of {res.config.max_iter} iterations")
    lines.append(f"Evaluations: {res.evaluations}")
    lines.append(f"Seed: {res.seed}")
    lines.append("")
    _limits(lines, res.bounds)
    lines.append(f"Pareto front size = {len(res.front)}")
    if res.history:
        ideal = ", ".join(f"{v:.6e}" for v in res.ideal_point)
        lines.append(f"Ideal point (minimize form) = ({ideal})")
    if len(res.front):
        obj = res.front.objectives
        lines.append("Best per objective over the front:")
        for j, (n, s) in enumerate(zip(names, res.senses)):
            v = obj[:, j].max() if s == "maximize" else obj[:, j].min()
            lines.append(f"  {n} = {v:.6e}")
    return "\n".join(lines) + "\n"


def emit_history_csv(result, path, fmt: str = "csv") -> Path:
    """Per-iteration history.

    Single-objective columns: iteration, best_penalized, pop_size. Multi-objective
    columns: iteration, front_size, pop_size, ideal_f1..ideal_fk (minimize form).
    """
    if isinstance(result, EnergyCaseResult):
        result = result.run
    if isinstance(result, MultiRunResult):
        k = len(result.senses)
        cols = ["iteration", "front_size", "pop_size"] + [f"ideal_f{j}" for j in range(1, k + 1)]
        rows = [[h.iteration, h.front_size, h.pop_size, *h.ideal_point] for h in result.history]
    else:
        cols = ["iteration", "best_penalized", "pop_size"]
        rows = [[h.iteration, h.best_penalized, h.pop_size] for h in result.history]
    return write_table(path, cols, rows, fmt)


def emit_front_csv(result, path, fmt: str = "csv") -> Path:
    """Pareto front with columns x1..xn, f1..fk (objectives in the caller's sense)."""
    if isinstance(result, EnergyCaseResult):
        result = result.run
    front = result.front
    n = result.bounds.n_var
    k = front.objectives.shape[1]
    cols = [f"x{i}" for i in range(1, n + 1)] + [f"f{j}" for j in range(1, k + 1)]
    rows = [list(front.x[i]) + list(front.objectives[i]) for i in range(len(front))]
    return write_table(path, cols, rows, fmt)


def emit_energy_csv(result: EnergyCaseResult, path, fmt: str = "csv") -> Path:
    """Energy front: wind, solar, hydro, storage, total, emissions, cost, reliability."""
    return write_table(path, ENERGY_COLUMNS, result.table().tolist(), fmt)


def emit_suite_csv(report: SuiteReport, path, fmt: str = "csv") -> Path:
    rows = [[getattr(r, c) for c in SUITE_COLUMNS] for r in report.rows]
    return write_table(path, SUITE_COLUMNS, rows, fmt)


def suite_table(report: SuiteReport) -> str:
    """Aligned text table of best / median / worst achieved values per problem."""
    lines = [f"{'problem':<12}{'runs':>6}{'best':>14}{'median':>14}{'worst':>14}{'evals':>10}"]
    for a in report.aggregate():
        lines.append(
            f"{a['problem']:<12}{a['runs']:>6}{a['best']:>14.4e}{a['median']:>14.4e}"
            f"{a['worst']:>14.4e}{a['mean_evaluations']:>10.0f}"
        )
    return "\n".join(lines) + "\n"
