"""Command-line harness: ``jaya --mode single --problem sphere --max-iter 50``.

Settings come from an optional JSON config file, then command-line flags,
with flags winning. Every run writes ``summary.txt`` plus machine-readable
tables into ``--out-dir``:

=================  =============================================
mode               files
=================  =============================================
single             summary.txt, history.csv
multi              summary.txt, history.csv, front.csv
energy-case        summary.txt, history.csv, front.csv
benchmark-suite    summary.txt, suite.csv
=================  =============================================

With ``--format json-lines`` the tables get a ``.jsonl`` suffix instead.
Exit status is 0 on success; any error prints one ``error: ...`` line to
stderr and exits with status 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import report
from .benchmarks import PROBLEM_NAMES, get_problem, run_suite
from .core import Bounds
from .energy import EnergyCase, EnergyFactors, run_energy_case
from .errors import InvalidConfigError, JayaError
from .multi import jaya_multi
from .single import EarlyStop, SolverConfig, jaya

__all__ = ["RunConfig", "parse_config", "run", "main", "MODES", "MULTI_PROBLEMS"]

MODES = ("benchmark-suite", "single", "multi", "energy-case")
DEFAULT_TOLERANCE = 1e-3
DEFAULT_SUITE_RUNS = 10


def _two_sphere(n_var):
    return [lambda x: float(np.dot(x, x)), lambda x: float(np.dot(x - 2.0, x - 2.0))], Bounds.uniform(-5, 5, n_var)


def _linear_pair(n_var):
    if n_var != 2:
        raise InvalidConfigError("linear-pair is defined for n_var = 2 only")
    return [lambda x: float(x[0]), lambda x: float(x[1])], Bounds.uniform(0, 1, 2)


# name -> (builder(n_var) -> (objectives, bounds), default n_var)
MULTI_PROBLEMS = {"two-sphere": (_two_sphere, 3), "linear-pair": (_linear_pair, 2)}

# config-file key -> RunConfig field; camel-case and snake-case spellings both work
_KEY_ALIASES = {
    "popSize": "pop_size",
    "maxiter": "max_iter",
    "n_var": "n_var",
    "pop_size": "pop_size",
    "max_iter": "max_iter",
}
_PLAIN_KEYS = {
    "mode",
    "problem",
    "sense",
    "seed",
    "seeds",
    "runs",
    "adaptive_pop",
    "min_pop",
    "max_pop",
    "tolerance",
    "patience",
    "out_dir",
    "format",
    "workers",
    "lower",
    "upper",
    "energy",
}
_ENERGY_KEYS = {"factors", "lower", "upper", "min_total"}


@dataclass
class RunConfig:
    """Validated settings for one CLI invocation."""

    mode: str
    problem: str | None = None
    n_var: int | None = None
    pop_size: int | None = None
    max_iter: int | None = None
    sense: str = "minimize"
    seed: int | None = None
    seeds: list | None = None
    runs: int = DEFAULT_SUITE_RUNS
    adaptive_pop: bool | None = None
    min_pop: int | None = None
    max_pop: int | None = None
    tolerance: float | None = None
    patience: int | None = None
    out_dir: Path = Path("jaya-out")
    format: str = "csv"
    workers: int = field(default_factory=lambda: os.cpu_count() or 1)
    lower: object = None
    upper: object = None
    energy: dict = field(default_factory=dict)

    def solver_config(self, **defaults) -> SolverConfig:
        """SolverConfig from these settings; ``defaults`` fill unset fields."""

        def pick(name):
            v = getattr(self, name)
            return defaults.get(name) if v is None else v

        tol, patience = pick("tolerance"), pick("patience")
        early = None
        if patience is not None:
            early = EarlyStop(DEFAULT_TOLERANCE if tol is None else float(tol), int(patience))
        adaptive = bool(pick("adaptive_pop"))
        return SolverConfig(
            max_iter=pick("max_iter"),
            pop_size=pick("pop_size") or 50,
            sense=self.sense,
            seed=self.seed,
            adaptive_pop=adaptive,
            min_pop=pick("min_pop") if adaptive else None,
            max_pop=pick("max_pop") if adaptive else None,
            early_stop=early,
            stall_tolerance=None if tol is None else float(tol),
            workers=self.workers,
        )


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidConfigError(message)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="jaya", description="Run Jaya optimisation experiments.")
    p.add_argument("--config", metavar="FILE", help="JSON config file; flags override its values")
    p.add_argument("--mode", action="append", choices=MODES, help="what to run")
    p.add_argument(
        "--problem",
        help=f"single: {', '.join(PROBLEM_NAMES)}; multi: {', '.join(MULTI_PROBLEMS)}; "
        "benchmark-suite: comma-separated subset (default all)",
    )
    p.add_argument("--n-var", type=int, dest="n_var")
    p.add_argument("--pop-size", type=int, dest="pop_size", help="initial population (default 50)")
    p.add_argument("--max-iter", type=int, dest="max_iter")
    p.add_argument("--sense", choices=("minimize", "maximize"))
    p.add_argument("--seed", type=int)
    p.add_argument("--adaptive-pop", action=argparse.BooleanOptionalAction, dest="adaptive_pop", default=None)
    p.add_argument("--min-pop", type=int, dest="min_pop")
    p.add_argument("--max-pop", type=int, dest="max_pop")
    p.add_argument("--tolerance", type=float, help="improvement threshold (early stop and adaptive sizing)")
    p.add_argument("--patience", type=int, help="enable early stopping after this many flat iterations")
    p.add_argument("--out-dir", dest="out_dir")
    p.add_argument("--format", choices=report.FORMATS)
    p.add_argument("--workers", type=int, help="parallel objective evaluations (default: CPU count)")
    return p


def _read_config_file(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(exc.errno, f"cannot read config {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise InvalidConfigError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(data, dict):
        raise InvalidConfigError(f"{path}: top level must be a JSON object")
    out = {}
    for key, value in data.items():
        if key in _KEY_ALIASES:
            name = _KEY_ALIASES[key]
        elif key in _PLAIN_KEYS:
            name = key
        else:
            raise InvalidConfigError(f"unknown config key {key!r}")
        if name in out:
            raise InvalidConfigError(f"config sets {name!r} twice (via {key!r})")
        out[name] = value
    energy = out.get("energy", {})
    if not isinstance(energy, dict):
        raise InvalidConfigError("'energy' must be an object")
    bad = sorted(set(energy) - _ENERGY_KEYS)
    if bad:
        raise InvalidConfigError(f"unknown config key 'energy.{bad[0]}'")
    return out


def _required_missing(s: dict) -> list[str]:
    missing = []
    if s.get("mode") is None:
        return ["mode", "maxiter", "problem"]
    if s["mode"] in ("single", "multi") and s.get("problem") is None:
        missing.append("problem")
    if s["mode"] != "energy-case" and s.get("max_iter") is None:
        missing.append("maxiter")
    return missing


def parse_config(argv=None) -> RunConfig:
    """Merge the optional config file with command-line flags and validate."""
    args = _build_parser().parse_args(argv)
    modes = set(args.mode or ())
    if len(modes) > 1:
        raise InvalidConfigError(f"conflicting modes: {', '.join(sorted(modes))}")
    settings = _read_config_file(args.config) if args.config else {}
    flags = {k: v for k, v in vars(args).items() if v is not None and k not in ("config", "mode")}
    if modes:
        flags["mode"] = modes.pop()
    settings.update(flags)

    missing = _required_missing(settings)
    if missing:
        raise InvalidConfigError(f"missing required field(s): {', '.join(missing)}")
    if settings["mode"] not in MODES:
        raise InvalidConfigError(f"unknown mode {settings['mode']!r}; choose from {', '.join(MODES)}")
    if "out_dir" in settings:
        settings["out_dir"] = Path(settings["out_dir"])
    cfg = RunConfig(**settings)
    _validate(cfg)
    return cfg


def _positive_int(name, v, minimum=1):
    if v is not None and (isinstance(v, bool) or not isinstance(v, int) or v < minimum):
        raise InvalidConfigError(f"{name} must be an integer >= {minimum}, got {v!r}")


def _validate(cfg: RunConfig) -> None:
    _positive_int("maxiter", cfg.max_iter)
    _positive_int("popSize", cfg.pop_size, 2)
    _positive_int("n_var", cfg.n_var)
    _positive_int("workers", cfg.workers)
    _positive_int("runs", cfg.runs)
    _positive_int("patience", cfg.patience)
    if cfg.format not in report.FORMATS:
        raise InvalidConfigError(f"format must be one of {', '.join(report.FORMATS)}, got {cfg.format!r}")
    if cfg.mode == "single" and cfg.problem not in PROBLEM_NAMES:
        raise InvalidConfigError(f"unknown single-objective problem {cfg.problem!r}; choose from {', '.join(PROBLEM_NAMES)}")
    if cfg.mode == "multi" and cfg.problem not in MULTI_PROBLEMS:
        raise InvalidConfigError(f"unknown multi-objective problem {cfg.problem!r}; choose from {', '.join(MULTI_PROBLEMS)}")
    if cfg.mode == "benchmark-suite" and cfg.problem:
        for name in _suite_names(cfg):
            if name not in PROBLEM_NAMES:
                raise InvalidConfigError(f"unknown problem {name!r}; choose from {', '.join(PROBLEM_NAMES)}")
    if cfg.seeds is not None and (not isinstance(cfg.seeds, list) or not cfg.seeds):
        raise InvalidConfigError("seeds must be a non-empty list of integers")


def _suite_names(cfg: RunConfig) -> list[str]:
    if not cfg.problem:
        return list(PROBLEM_NAMES)
    return [p.strip() for p in str(cfg.problem).split(",") if p.strip()]


def _override_bounds(cfg: RunConfig, bounds: Bounds) -> Bounds:
    if cfg.lower is None and cfg.upper is None:
        return bounds
    n = bounds.n_var
    lower = bounds.lower if cfg.lower is None else np.broadcast_to(np.asarray(cfg.lower, dtype=float), (n,))
    upper = bounds.upper if cfg.upper is None else np.broadcast_to(np.asarray(cfg.upper, dtype=float), (n,))
    return Bounds(lower, upper)


def _table_path(out_dir: Path, stem: str, fmt: str) -> Path:
    return out_dir / (stem + (".csv" if fmt == "csv" else ".jsonl"))


def run(cfg: RunConfig) -> dict:
    """Execute ``cfg``; returns ``{"summary": text, "files": [paths], "result": obj}``."""
    out = cfg.out_dir
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot create output directory {out}: {exc.strerror}") from exc
    files = []

    if cfg.mode == "single":
        prob = get_problem(cfg.problem, cfg.n_var or 2)
        result = jaya(prob.f, _override_bounds(cfg, prob.default_bounds), None, cfg.solver_config())
        text = report.emit_summary(result)
        files.append(report.emit_history_csv(result, _table_path(out, "history", cfg.format), cfg.format))
    elif cfg.mode == "multi":
        build, n_default = MULTI_PROBLEMS[cfg.problem]
        objectives, bounds = build(cfg.n_var or n_default)
        result = jaya_multi(objectives, _override_bounds(cfg, bounds), None, cfg.solver_config())
        text = report.emit_summary(result)
        files.append(report.emit_history_csv(result, _table_path(out, "history", cfg.format), cfg.format))
        files.append(report.emit_front_csv(result, _table_path(out, "front", cfg.format), cfg.format))
    elif cfg.mode == "energy-case":
        result = _run_energy(cfg)
        text = report.emit_summary(result)
        files.append(report.emit_history_csv(result, _table_path(out, "history", cfg.format), cfg.format))
        files.append(report.emit_energy_csv(result, _table_path(out, "front", cfg.format), cfg.format))
    else:
        n_var = cfg.n_var or 2
        problems = [get_problem(name, n_var) for name in _suite_names(cfg)]
        base = 0 if cfg.seed is None else cfg.seed
        seeds = cfg.seeds if cfg.seeds is not None else [base + r for r in range(cfg.runs)]
        result = run_suite(problems, cfg.solver_config(), seeds)
        text = report.suite_table(result)
        files.append(report.emit_suite_csv(result, _table_path(out, "suite", cfg.format), cfg.format))

    summary_path = out / "summary.txt"
    try:
        summary_path.write_text(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {summary_path}: {exc.strerror}") from exc
    files.insert(0, summary_path)
    return {"summary": text, "files": files, "result": result}


def _run_energy(cfg: RunConfig):
    d = EnergyCase()
    e = cfg.energy
    factors = EnergyFactors.from_dict(e["factors"]) if "factors" in e else d.factors
    case = EnergyCase(
        lower=float(e.get("lower", d.lower)),
        upper=float(e.get("upper", d.upper)),
        min_total=float(e.get("min_total", d.min_total)),
        pop_size=cfg.pop_size or d.pop_size,
        max_iter=cfg.max_iter or d.max_iter,
        adaptive_pop=d.adaptive_pop if cfg.adaptive_pop is None else cfg.adaptive_pop,
        min_pop=cfg.min_pop or d.min_pop,
        max_pop=cfg.max_pop or d.max_pop,
        tolerance=d.tolerance if cfg.tolerance is None else cfg.tolerance,
        patience=cfg.patience,
        seed=cfg.seed,
        workers=cfg.workers,
        factors=factors,
    )
    return run_energy_case(case)


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
        outcome = run(cfg)
    except (JayaError, ValueError, TypeError, OSError) as exc:
        msg = " ".join(str(exc).split()) or type(exc).__name__
        print(f"error: {msg}", file=sys.stderr)
        return 2
    sys.stdout.write(outcome["summary"])
    for path in outcome["files"]:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
