"""
A single diffusion run, round by round
======================================

Build a connected random graph, pick early adopters and watch the covered
set grow. Each candidate tries every neighbor once; a transmission succeeds
when the directed coin for that pair is at most ``p_diff``.
"""

# %%
# A connected G(n, p_link) sample. The second value is the number of
# generation attempts that were needed to get a connected graph.
from probdiff.diffusion import DiffusionParams, run, trace
from probdiff.randgraph import degree_stats, generate_connected_er
from probdiff.streams import HashCoins

g, attempts = generate_connected_er(60, 0.08, seed=7)
print(g, "attempts:", attempts)
print(degree_stats(g).mean_degree)

# %%
# Coins are a pure function of (trial seed, u, v), so the same run can be
# replayed exactly and the coin for u -> v is independent of v -> u.
coins = HashCoins(2024)
print(coins.draw(3, 5), coins.draw(5, 3), coins.draw(3, 5))

# %%
# Step through the rounds.
params = DiffusionParams(p_diff=0.4, early_adopters={0, 17})
for state in trace(g, params, coins):
    print(f"round {state.round}: candidates={sorted(state.candidates)} covered={len(state.covered)}")

# %%
# ``run`` gives the same result in one call.
outcome = run(g, params, coins)
print(outcome.success, outcome.rounds, outcome.newly_covered_per_round)

# %%
# With the same coins, a larger p_diff can only cover more nodes.
for p in (0.2, 0.4, 0.6, 1.0):
    out = run(g, DiffusionParams(p, {0, 17}), coins)
    print(p, out.final_covered_count, out.success, out.rounds)
