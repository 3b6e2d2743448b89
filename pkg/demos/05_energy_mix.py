"""Plan a renewable energy mix: emissions, cost and reliability together.

Shares of wind, solar, hydro and storage are each 10-40% and must add up to
at least 70%. The models are simple linear stand-ins; see jaya.energy.

Run:  python demos/05_energy_mix.py [out.csv]
"""

import sys

import numpy as np

from jaya.energy import grid_ideal, run_energy_case
from jaya.report import emit_energy_csv, emit_summary

result = run_energy_case(seed=11)
print(emit_summary(result))

table = result.table()
cols = ["wind", "solar", "hydro", "storage", "total", "emissions", "cost", "reliability"]
picks = {
    "cleanest": int(np.argmin(table[:, 5])),
    "cheapest": int(np.argmin(table[:, 6])),
    "most reliable": int(np.argmax(table[:, 7])),
}
print(f"{'':<14}" + "".join(f"{c:>12}" for c in cols))
for label, i in picks.items():
    print(f"{label:<14}" + "".join(f"{v:>12.2f}" for v in table[i]))

print("\nbrute-force grid reference (emissions, cost, reliability):", grid_ideal().tolist())

if len(sys.argv) > 1:
    print("front written to", emit_energy_csv(result, sys.argv[1]))
