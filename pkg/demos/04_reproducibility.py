"""
Seeds, coupling and parallel determinism
========================================

Every random quantity comes from ``SeedPlan``: the graph and coins of trial
t depend only on (master seed, n, p_link, t), and the adopter set also on k.
Cells that differ only in p_diff therefore reuse the same graphs and coins.
"""

# %%
from probdiff.experiment import CellParams, ExperimentConfig, run_cell, sweep
from probdiff.streams import SeedPlan

plan = SeedPlan(master_seed=11)
low = run_cell(CellParams(100, 0.10, 0.3, 1, trials=100), plan)
high = run_cell(CellParams(100, 0.10, 0.5, 1, trials=100), plan)
print(low.successes, "<=", high.successes)

# %%
# A single cell computed on its own matches the same cell inside a sweep,
# and the number of worker processes does not change anything.
config = ExperimentConfig((100,), (0.10,), (0.3, 0.5), (1,), trials=100, master_seed=11)
serial = sweep(config, threads=1)
parallel = sweep(config, threads=2)
print(serial == parallel, serial[0] == low, serial[1] == high)
