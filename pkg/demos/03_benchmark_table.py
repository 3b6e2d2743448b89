"""Run the five classic test functions over several seeds and tabulate them.

Run:  python demos/03_benchmark_table.py
"""

from jaya import SolverConfig, run_suite, standard_problems
from jaya.report import suite_table

cfg = SolverConfig(max_iter=500, pop_size=50)
report = run_suite(standard_problems(n_var=2), cfg, seeds=list(range(10)))
print("Jaya on five test functions, n = 2, population 50, 500 iterations, 10 seeds\n")
print(suite_table(report))
