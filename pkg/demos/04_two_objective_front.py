"""Trace the trade-off between two competing quadratics.

f1 pulls every variable to 0 and f2 pulls it to 2, so the optimal
trade-offs are the points on the segment between them.

Run:  python demos/04_two_objective_front.py
"""

import numpy as np

from jaya import jaya_multi
from jaya.report import emit_summary


def f1(x):
    return float(np.dot(x, x))


def f2(x):
    return float(np.dot(x - 2.0, x - 2.0))


res = jaya_multi([f1, f2], ([-5] * 3, [5] * 3), pop_size=30, max_iter=100, seed=3)
print(emit_summary(res))

order = np.argsort(res.front.objectives[:, 0])
print("   f1        f2        x")
for i in order[:: max(1, len(order) // 8)]:
    x = np.round(res.front.x[i], 3)
    print(f"{res.front.objectives[i, 0]:8.3f}  {res.front.objectives[i, 1]:8.3f}  {x}")

x = res.front.x
print(f"\ndecision variables span [{x.min():.3f}, {x.max():.3f}] (the ideal segment is [0, 2])")
