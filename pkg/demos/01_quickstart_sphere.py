"""Minimise a 3-D sphere and look at how the best value falls.

Run:  python demos/01_quickstart_sphere.py
"""

import numpy as np

from jaya import jaya
from jaya.report import emit_summary


def sphere(x):
    return float(np.dot(x, x))


result = jaya(sphere, ([-5, -5, -5], [5, 5, 5]), pop_size=20, max_iter=50, seed=2024)
print(emit_summary(result))

# The history keeps the best penalised value after every iteration.
print("iteration   best so far")
for rec in result.history[::10] + [result.history[-1]]:
    print(f"{rec.iteration:>9}   {rec.best_penalized:.3e}")

# The same seed always replays the same run.
again = jaya(sphere, ([-5, -5, -5], [5, 5, 5]), pop_size=20, max_iter=50, seed=2024)
print("\nreplay identical:", np.array_equal(result.best_x, again.best_x))
