"""Independent reference computations used by the tests.

Nothing here imports the simulation engine; each oracle works from a plain
edge list.
"""

from collections import deque
from itertools import product

import numpy as np


class ScriptedCoins:
    """Coins that succeed exactly on the listed directed pairs.

    Successful pairs draw 0.0, every other pair draws the largest double
    below 1, so the script holds for any 0 <= p_diff < 1.
    """

    FAIL = float(np.nextafter(1.0, 0.0))

    def __init__(self, succeed):
        self.succeed = set(succeed)
        self.consulted = []

    def draw_many(self, src, dst):
        pairs = list(zip(np.asarray(src).tolist(), np.asarray(dst).tolist()))
        self.consulted.extend(pairs)
        return np.array([0.0 if p in self.succeed else self.FAIL for p in pairs], dtype=float)

    def draw(self, u, v):
        return float(self.draw_many([u], [v])[0])


class TableCoins:
    """Coins read from a dict of directed pair -> uniform value."""

    def __init__(self, table):
        self.table = table

    def draw_many(self, src, dst):
        return np.array(
            [self.table[(u, v)] for u, v in zip(np.asarray(src).tolist(), np.asarray(dst).tolist())],
            dtype=float,
        )


# Nodes 0..5. The edge 1-4 is required by the second walkthrough, where node
# 4 passes the message to node 1 in the first round.
FIXTURE_EDGES = [(0, 1), (0, 3), (1, 2), (1, 4), (3, 4), (4, 5), (2, 5)]


def union_find_connected(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(x) for x in range(n)}) == 1


def bfs_distances(n, edges, sources):
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    dist = [None] * n
    queue = deque()
    for s in sources:
        dist[s] = 0
        queue.append(s)
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if dist[v] is None:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def eccentricity(n, edges, sources):
    """Largest BFS distance from the source set (graph must be connected)."""
    return max(bfs_distances(n, edges, sources))


def _reaches_all(n, arcs, sources):
    out = [[] for _ in range(n)]
    for u, v in arcs:
        out[u].append(v)
    seen = set(sources)
    stack = list(sources)
    while stack:
        u = stack.pop()
        for v in out[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == n


def exact_success_probability(n, edges, sources, p):
    """Sum over all open/closed patterns of the directed coins.

    A run succeeds exactly when every node is reachable from the sources
    through open arcs, so only reachability is evaluated here.
    """
    arcs = [(u, v) for u, v in edges] + [(v, u) for u, v in edges]
    total = 0.0
    for pattern in product((False, True), repeat=len(arcs)):
        a = sum(pattern)
        weight = p**a * (1 - p) ** (len(arcs) - a)
        if weight and _reaches_all(n, [arc for arc, o in zip(arcs, pattern) if o], sources):
            total += weight
    return total
