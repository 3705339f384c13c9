"""Erdős–Rényi graph generation, BFS connectivity and degree statistics."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .errors import ConfigurationError, GraphGenerationError
from .streams import child_sequence, make_stream

DEFAULT_MAX_ATTEMPTS = 1000


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph on nodes ``0..n-1`` stored in CSR form.

    ``indices[indptr[u]:indptr[u + 1]]`` is the sorted neighbor list of ``u``.
    Every undirected edge appears twice, once per direction, which is also the
    layout the diffusion engine uses for directed coins.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray

    def __post_init__(self):
        self.indptr.flags.writeable = False
        self.indices.flags.writeable = False

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from undirected edges, validating the invariants."""
        pairs = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ConfigurationError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ConfigurationError(f"edge ({u}, {v}) outside 0..{n - 1}")
            pairs.add((min(u, v), max(u, v)))
        if pairs:
            us, vs = np.array(sorted(pairs), dtype=np.int64).T
        else:
            us = vs = np.empty(0, dtype=np.int64)
        return _from_upper_pairs(n, us, vs)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edge_count={self.edge_count})"

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @cached_property
    def sources(self) -> np.ndarray:
        """Source node of each directed slot in ``indices``."""
        return np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        flat = self.indices.tolist()
        bounds = self.indptr.tolist()
        return tuple(tuple(flat[bounds[u]:bounds[u + 1]]) for u in range(self.n))

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Undirected edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, v in zip(self.sources.tolist(), self.indices.tolist()):
            if u < v:
                yield u, v


@dataclass(frozen=True)
class DegreeStats:
    mean_degree: float
    stddev_degree: float
    histogram: dict[int, int]


def _from_upper_pairs(n: int, us: np.ndarray, vs: np.ndarray) -> Graph:
    src = np.concatenate([us, vs])
    dst = np.concatenate([vs, us])
    order = np.lexsort((dst, src))
    indices = dst[order].astype(np.int64)
    counts = np.bincount(src, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return Graph(n, indptr, indices)


def _check_params(n: int, p_link: float) -> None:
    if int(n) != n or n < 2:
        raise ConfigurationError(f"n must be an integer >= 2, got {n!r}")
    if not 0.0 <= p_link <= 1.0:
        raise ConfigurationError(f"p_link must lie in [0, 1], got {p_link!r}")


def generate_er(n: int, p_link: float, stream: np.random.Generator) -> Graph:
    """Sample G(n, p_link).

    One uniform draw in [0, 1) is taken from ``stream`` for every pair
    ``u < v``, in lexicographic pair order; the edge exists iff the draw is
    ``<= p_link``. Using the same stream at two values of ``p_link`` therefore
    yields nested edge sets.
    """
    _check_params(n, p_link)
    us, vs = np.triu_indices(n, k=1)
    draws = stream.random(len(us))
    keep = draws <= p_link
    return _from_upper_pairs(n, us[keep].astype(np.int64), vs[keep].astype(np.int64))


def is_connected(g: Graph) -> bool:
    """Breadth-first search from node 0; True iff every node is reached."""
    if g.n == 0:
        return True
    adjacency = g.adjacency
    seen = [False] * g.n
    seen[0] = True
    reached = 1
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if not seen[v]:
                seen[v] = True
                reached += 1
                queue.append(v)
    return reached == g.n


def generate_connected_er(
    n: int,
    p_link: float,
    seed,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> tuple[Graph, int]:
    """Sample G(n, p_link) conditioned on being connected.

    Attempt ``a`` (0-based) draws a whole new graph from the child sequence
    ``a`` of ``seed`` (an int or ``numpy.random.SeedSequence``), so the result
    does not depend on how many attempts other calls needed.

    Returns:
        The connected graph and the number of attempts used.

    Raises:
        GraphGenerationError: if ``max_attempts`` graphs were all disconnected.
    """
    _check_params(n, p_link)
    if max_attempts < 1:
        raise ConfigurationError(f"max_attempts must be >= 1, got {max_attempts!r}")
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    for attempt in range(max_attempts):
        g = generate_er(n, p_link, make_stream(child_sequence(seed, attempt)))
        if is_connected(g):
            return g, attempt + 1
    raise GraphGenerationError(n, p_link, max_attempts)


def degree_stats(g: Graph) -> DegreeStats:
    """Mean, population standard deviation and histogram of node degrees."""
    degrees = g.degrees
    histogram = dict(sorted(Counter(degrees.tolist()).items()))
    return DegreeStats(
        mean_degree=2.0 * g.edge_count / g.n,
        stddev_degree=float(np.std(degrees)),
        histogram=histogram,
    )
