"""Jaya optimisation: a parameter-free population metaheuristic.

Quick start::

    from jaya import jaya, sphere
    res = jaya(sphere, ([-5] * 3, [5] * 3), max_iter=50, pop_size=20, seed=1)
    res.best_value
"""

from .benchmarks import (
    PROBLEM_NAMES,
    BenchmarkProblem,
    SuiteReport,
    ackley,
    get_problem,
    griewank,
    rastrigin,
    rosenbrock,
    run_suite,
    sphere,
    standard_problems,
)
from .constraints import ConstraintSet, penalize, violation
from .core import Bounds, Candidate, Population, RngStream, clamp, initialize_population, jaya_update, select_best_worst
from .energy import EnergyCase, EnergyFactors, EnergyMix, run_energy_case
from .errors import (
    DimensionError,
    EvaluationOrderError,
    InvalidBoundsError,
    InvalidConfigError,
    JayaError,
    NonFiniteConstraintError,
    NonFiniteObjectiveError,
    UseJayaInsteadError,
)
from .multi import MultiRunResult, ParetoArchive, ParetoFront, dominates, jaya_multi, pareto_filter
from .single import EarlyStop, RunResult, SolverConfig, early_stop_check, jaya

__version__ = "0.1.0"

__all__ = [
    "jaya",
    "jaya_multi",
    "SolverConfig",
    "EarlyStop",
    "RunResult",
    "MultiRunResult",
    "Bounds",
    "Candidate",
    "Population",
    "RngStream",
    "ConstraintSet",
    "violation",
    "penalize",
    "clamp",
    "initialize_population",
    "jaya_update",
    "select_best_worst",
    "early_stop_check",
    "dominates",
    "pareto_filter",
    "ParetoArchive",
    "ParetoFront",
    "sphere",
    "rastrigin",
    "rosenbrock",
    "ackley",
    "griewank",
    "BenchmarkProblem",
    "get_problem",
    "standard_problems",
    "run_suite",
    "SuiteReport",
    "PROBLEM_NAMES",
    "EnergyCase",
    "EnergyFactors",
    "EnergyMix",
    "run_energy_case",
    "JayaError",
    "InvalidConfigError",
    "InvalidBoundsError",
    "DimensionError",
    "EvaluationOrderError",
    "NonFiniteObjectiveError",
    "NonFiniteConstraintError",
    "UseJayaInsteadError",
]
