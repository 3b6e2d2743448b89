"""A constrained design problem with early stopping and an adaptive population.

Minimise the material cost of a rectangular plate (width w, height h)
subject to an area of at least 12 and an aspect ratio no worse than 3:1.

Run:  python demos/02_constraints_and_early_stop.py
"""

from jaya import ConstraintSet, EarlyStop, SolverConfig, jaya


def perimeter(x):
    w, h = x
    return 2.0 * (w + h)


constraints = ConstraintSet(
    [
        lambda x: 12.0 - x[0] * x[1],  # area >= 12
        lambda x: x[0] - 3.0 * x[1],  # w <= 3h
        lambda x: x[1] - 3.0 * x[0],  # h <= 3w
    ]
)

cfg = SolverConfig(
    max_iter=500,
    pop_size=20,
    seed=7,
    adaptive_pop=True,
    min_pop=10,
    max_pop=40,
    early_stop=EarlyStop(tolerance=1e-9, patience=25),
)
res = jaya(perimeter, ([0.5, 0.5], [10, 10]), constraints, cfg)

w, h = res.best_x
print(f"best plate {w:.4f} x {h:.4f}, area {w * h:.4f}, perimeter {res.best_value:.6f}")
print("analytic optimum is the square of side sqrt(12):", f"{2 * 2 * 12 ** 0.5:.6f}")
print(f"feasible: {res.feasible}  stopped early: {res.stopped_early} after {res.iterations_run} iterations")
sizes = sorted({r.pop_size for r in res.history})
print(f"population sizes visited: {sizes[0]}..{sizes[-1]}  evaluations: {res.evaluations}")
