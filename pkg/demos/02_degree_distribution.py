"""
Degree distribution of Erdős–Rényi graphs
=========================================

Node degrees in G(n, p) are Binomial(n - 1, p). Relative to the mean they
concentrate as n or p grows: the coefficient of variation is
sqrt((1 - p) / ((n - 1) p)).
"""

# %%
import math

from probdiff.experiment import degree_report

for n in (100, 200):
    for p_link in (0.05, 0.10, 0.15, 0.20, 0.30):
        rep = degree_report(n, p_link, samples=200)
        expected_sd = math.sqrt((n - 1) * p_link * (1 - p_link))
        print(
            f"n={n:3d} p_link={p_link:.2f}  mean={rep.mean_degree:6.2f} "
            f"(expected {(n - 1) * p_link:6.2f})  sd={rep.stddev_degree:5.2f} "
            f"(expected {expected_sd:5.2f})  cv={rep.stddev_degree / rep.mean_degree:.3f}"
        )

# %%
# The pooled histogram, as a crude text plot.
rep = degree_report(100, 0.10, samples=200)
peak = max(rep.histogram.values())
for degree, count in rep.histogram.items():
    print(f"{degree:3d} {'#' * round(60 * count / peak)}")

# %%
# Conditioning on connectivity removes graphs with isolated nodes, which
# shifts the sparse end of the grid slightly upward.
plain = degree_report(100, 0.05, samples=200)
connected = degree_report(100, 0.05, samples=200, connected=True)
print(plain.mean_degree, connected.mean_degree, min(connected.histogram))
