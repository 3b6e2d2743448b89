"""Renewable energy-mix case study: emissions, cost and reliability trade-offs.

Decision variables are the percentage shares of wind, solar, hydro and
storage, each in [10, 40], with the total share at least 70.

The three objective models are illustrative linear models, not calibrated
energy-system data. The shipped factors encode the qualitative picture
only: wind and solar are cheap and clean, hydro and storage are costly but
stabilise supply, and intermittent sources erode reliability. Sign
convention: reliability is positive and higher is better.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from .constraints import ConstraintSet
from .core import Bounds
from .errors import InvalidConfigError
from .multi import MultiRunResult, jaya_multi
from .single import EarlyStop, SolverConfig

__all__ = [
    "SOURCES",
    "EnergyMix",
    "EnergyFactors",
    "emissions_model",
    "cost_model",
    "reliability_model",
    "EnergyCase",
    "EnergyCaseResult",
    "run_energy_case",
    "grid_ideal",
    "FRONT_COLUMNS",
]

SOURCES = ("wind", "solar", "hydro", "storage")
FRONT_COLUMNS = SOURCES + ("total", "emissions", "cost", "reliability")


@dataclass(frozen=True)
class EnergyMix:
    wind: float
    solar: float
    hydro: float
    storage: float

    @classmethod
    def from_array(cls, x) -> EnergyMix:
        return cls(*map(float, x))

    def as_array(self) -> np.ndarray:
        return np.array([self.wind, self.solar, self.hydro, self.storage])

    @property
    def total(self) -> float:
        return self.wind + self.solar + self.hydro + self.storage


def _vec(d: dict, name: str) -> np.ndarray:
    missing = [s for s in SOURCES if s not in d]
    extra = [k for k in d if k not in SOURCES]
    if missing or extra:
        raise InvalidConfigError(f"{name}: expected keys {SOURCES}, missing {missing}, unknown {extra}")
    return np.array([float(d[s]) for s in SOURCES])


@dataclass(frozen=True)
class EnergyFactors:
    """Per-source coefficients, one value per percentage point of share.

    emissions    = sum(share * emission)
    cost         = sum(share * (capital + operational))
    reliability  = sum(share * stability) - intermittency * (wind + solar)
    """

    emission: dict = field(default_factory=lambda: {"wind": 10.0, "solar": 15.0, "hydro": 25.0, "storage": 30.0})
    capital: dict = field(default_factory=lambda: {"wind": 4.0, "solar": 3.0, "hydro": 7.0, "storage": 6.0})
    operational: dict = field(default_factory=lambda: {"wind": 1.0, "solar": 1.0, "hydro": 2.0, "storage": 3.0})
    stability: dict = field(default_factory=lambda: {"wind": 1.0, "solar": 1.0, "hydro": 3.0, "storage": 3.0})
    intermittency: float = 0.5

    def __post_init__(self):
        for name in ("emission", "capital", "operational", "stability"):
            _vec(getattr(self, name), name)

    @classmethod
    def from_dict(cls, d: dict) -> EnergyFactors:
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(d) - known)
        if unknown:
            raise InvalidConfigError(f"unknown energy factor key(s): {', '.join(unknown)}")
        base = cls()
        kwargs = {}
        for k, v in d.items():
            if isinstance(v, dict):
                merged = dict(getattr(base, k))
                merged.update(v)
                kwargs[k] = merged
            else:
                kwargs[k] = float(v)
        return cls(**kwargs)

    @property
    def emission_vector(self) -> np.ndarray:
        return _vec(self.emission, "emission")

    @property
    def cost_vector(self) -> np.ndarray:
        return _vec(self.capital, "capital") + _vec(self.operational, "operational")

    @property
    def reliability_vector(self) -> np.ndarray:
        return _vec(self.stability, "stability") - self.intermittency * np.array([1.0, 1.0, 0.0, 0.0])


DEFAULT_FACTORS = EnergyFactors()


def _shares(mix) -> np.ndarray:
    return mix.as_array() if isinstance(mix, EnergyMix) else np.asarray(mix, dtype=float)


def emissions_model(mix, factors=None) -> float:
    """Dot product of shares with per-source emission factors.

    ``factors`` may be an :class:`EnergyFactors` or a plain 4-vector.
    """
    f = DEFAULT_FACTORS.emission_vector if factors is None else _coeffs(factors, "emission_vector")
    return float(_shares(mix) @ f)


def cost_model(mix, factors=None) -> float:
    f = DEFAULT_FACTORS.cost_vector if factors is None else _coeffs(factors, "cost_vector")
    return float(_shares(mix) @ f)


def reliability_model(mix, factors=None) -> float:
    """Stability-weighted shares minus the intermittency penalty on wind and solar."""
    f = DEFAULT_FACTORS.reliability_vector if factors is None else _coeffs(factors, "reliability_vector")
    return float(_shares(mix) @ f)


def _coeffs(factors, attr: str) -> np.ndarray:
    if isinstance(factors, EnergyFactors):
        return getattr(factors, attr)
    f = np.asarray(factors, dtype=float)
    if f.shape != (4,):
        raise InvalidConfigError(f"expected 4 coefficients, got shape {f.shape}")
    return f


@dataclass(frozen=True)
class EnergyCase:
    """Case-study settings: population 100, 100 iterations, adaptive 50-200.

    ``tolerance`` is the improvement threshold for adaptive population sizing.
    Early stopping is off unless ``patience`` is set, in which case it uses
    the same tolerance.
    """

    lower: float = 10.0
    upper: float = 40.0
    min_total: float = 70.0
    pop_size: int = 100
    max_iter: int = 100
    adaptive_pop: bool = True
    min_pop: int = 50
    max_pop: int = 200
    tolerance: float = 1e-3
    patience: int | None = None
    seed: int | None = None
    workers: int = 1
    factors: EnergyFactors = field(default_factory=EnergyFactors)

    @property
    def bounds(self) -> Bounds:
        return Bounds.uniform(self.lower, self.upper, len(SOURCES))

    def solver_config(self) -> SolverConfig:
        return SolverConfig(
            max_iter=self.max_iter,
            pop_size=self.pop_size,
            seed=self.seed,
            adaptive_pop=self.adaptive_pop,
            min_pop=self.min_pop if self.adaptive_pop else None,
            max_pop=self.max_pop if self.adaptive_pop else None,
            early_stop=EarlyStop(self.tolerance, self.patience) if self.patience else None,
            stall_tolerance=self.tolerance,
            workers=self.workers,
        )

    def constraints(self) -> ConstraintSet:
        need = float(self.min_total)
        return ConstraintSet([lambda x: need - float(np.sum(x))])

    def objectives(self):
        f = self.factors
        return [
            lambda x: emissions_model(x, f),
            lambda x: cost_model(x, f),
            lambda x: reliability_model(x, f),
        ]


@dataclass
class EnergyCaseResult:
    case: EnergyCase
    run: MultiRunResult

    @property
    def feasible(self) -> bool:
        """False when no mix satisfying every constraint was ever evaluated."""
        x = self.run.front.x
        return len(x) > 0 and bool(np.all(np.sum(x, axis=1) >= self.case.min_total))

    def table(self) -> np.ndarray:
        """Front rows: wind, solar, hydro, storage, total, emissions, cost, reliability."""
        x = self.run.front.x
        return np.column_stack([x, x.sum(axis=1), self.run.front.objectives])


def run_energy_case(case: EnergyCase | None = None, **overrides) -> EnergyCaseResult:
    """Optimise the energy mix; keyword overrides replace :class:`EnergyCase` fields."""
    case = case or EnergyCase()
    if overrides:
        if isinstance(overrides.get("factors"), dict):
            overrides["factors"] = EnergyFactors.from_dict(overrides["factors"])
        case = EnergyCase(**{**case.__dict__, **overrides})
    run = jaya_multi(
        case.objectives(),
        case.bounds,
        case.constraints(),
        case.solver_config(),
        senses=("minimize", "minimize", "maximize"),
    )
    return EnergyCaseResult(case, run)


def grid_ideal(case: EnergyCase | None = None, step: float = 1.0) -> np.ndarray:
    """Best emissions, cost and reliability over a regular grid of feasible mixes.

    Brute-force reference for the solver: every grid point in the box with
    total share >= ``min_total`` is evaluated.
    """
    case = case or EnergyCase()
    axis = np.arange(case.lower, case.upper + step / 2, step)
    g = np.stack(np.meshgrid(axis, axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 4)
    g = g[g.sum(axis=1) >= case.min_total]
    f = case.factors
    return np.array(
        [
            (g @ f.emission_vector).min(),
            (g @ f.cost_vector).min(),
            (g @ f.reliability_vector).max(),
        ]
    )


def load_factors(path) -> EnergyFactors:
    """Read factor overrides from a JSON file (the ``energy.factors`` block or a bare dict)."""
    data = json.loads(Path(path).read_text())
    data = data.get("energy", data).get("factors", data) if isinstance(data, dict) else data
    return EnergyFactors.from_dict(data)
