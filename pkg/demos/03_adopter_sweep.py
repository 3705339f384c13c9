"""
Success probability and rounds versus early adopters
====================================================

Run a slice of the experiment grid and compare the three adopter counts.
The full grid is ``ExperimentConfig()`` (600 cells, 200 trials each) and
takes well under a minute on one core; the command line equivalent is
``probdiff sweep --out results.csv``.
"""

# %%
from probdiff.experiment import ExperimentConfig, sweep

config = ExperimentConfig(
    n_values=(100,),
    p_link_values=(0.10,),
    p_diff_values=(0.2, 0.3, 0.4, 0.5, 0.6, 0.8, 1.0),
    adopter_counts=(1, 10, 20),
    trials=200,
)
results = sweep(config)

# %%
# Probability of successful diffusion with its 95% Wilson interval.
rows = {}
for r in results:
    rows.setdefault(r.params.p_diff, {})[r.params.k_adopters] = r
print("p_diff   k=1                 k=10                k=20")
for p_diff, cells in rows.items():
    print(f"{p_diff:.2f}  " + "  ".join(
        f"{c.p_success:.3f} [{c.p_success_ci[0]:.2f},{c.p_success_ci[1]:.2f}]" for c in cells.values()
    ))

# %%
# Mean rounds per successful run (blank where no run succeeded).
for p_diff, cells in rows.items():
    print(f"{p_diff:.2f}  " + "  ".join(
        "   -  " if c.mean_rounds is None else f"{c.mean_rounds:6.2f}" for c in cells.values()
    ))
