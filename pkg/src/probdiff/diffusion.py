"""Round-based probabilistic diffusion over an undirected graph.

Early adopters start out covered and are the first candidates. In every round
each candidate ``u`` tries every neighbor ``v``; the attempt succeeds when the
directed coin ``draw(u, v)`` is ``<= p_diff``. Nodes covered for the first time
in a round are the candidates of the next round, so every node spreads at
most once. The run succeeds as soon as all nodes are covered and fails when a
round covers nothing new while some node is still uncovered.

A coin source is any object with ``draw_many(src, dst) -> ndarray`` returning
uniforms in [0, 1), one per directed pair, as a pure function of the pair
(see :class:`probdiff.streams.HashCoins`).
"""

from __future__ import annotations

from collections.abc import Iterable, Set
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError
from .randgraph import Graph


@dataclass(frozen=True)
class DiffusionParams:
    p_diff: float
    early_adopters: frozenset[int]

    def __post_init__(self):
        adopters = self.early_adopters
        if not isinstance(adopters, Set):
            adopters = list(adopters)
            if len(set(adopters)) != len(adopters):
                raise ConfigurationError("early adopters contain duplicates")
        adopters = frozenset(int(a) for a in adopters)
        if not adopters:
            raise ConfigurationError("at least one early adopter is required")
        if not 0.0 <= self.p_diff <= 1.0:
            raise ConfigurationError(f"p_diff must lie in [0, 1], got {self.p_diff!r}")
        object.__setattr__(self, "early_adopters", adopters)

    def check_graph(self, g: Graph) -> None:
        bad = sorted(a for a in self.early_adopters if not 0 <= a < g.n)
        if bad:
            raise ConfigurationError(f"early adopters {bad} outside 0..{g.n - 1}")


@dataclass(frozen=True)
class DiffusionState:
    covered: frozenset[int]
    candidates: frozenset[int]
    round: int = 0


@dataclass(frozen=True)
class DiffusionOutcome:
    """Result of one diffusion run.

    ``rounds`` counts executed rounds, including the final unproductive round
    of a failed run. ``covered`` is the final covered set.
    """

    success: bool
    rounds: int
    newly_covered_per_round: tuple[int, ...]
    final_covered_count: int
    covered: frozenset[int] = field(repr=False)


def _mask(n: int, nodes: Iterable[int]) -> np.ndarray:
    m = np.zeros(n, dtype=bool)
    m[list(nodes)] = True
    return m


def _spread(g: Graph, candidates: np.ndarray, covered: np.ndarray, transmits: np.ndarray) -> np.ndarray:
    """Nodes newly covered when ``candidates`` push along open directed slots.

    ``transmits`` is aligned with ``g.indices``. Only slots whose source is a
    candidate matter; the result is independent of candidate order.
    """
    fired = candidates[g.sources] & transmits
    hit = np.zeros(g.n, dtype=bool)
    hit[g.indices[fired]] = True
    return hit & ~covered


def init_state(g: Graph, params: DiffusionParams) -> DiffusionState:
    params.check_graph(g)
    adopters = params.early_adopters
    return DiffusionState(covered=adopters, candidates=adopters, round=0)


def step(state: DiffusionState, g: Graph, params: DiffusionParams, coins) -> DiffusionState:
    """Execute one round: every candidate tries each of its neighbors once.

    Coins are drawn only for edges leaving the current candidates.
    """
    if not state.candidates:
        raise ValueError("step() called with an empty candidate set")
    candidates = _mask(g.n, state.candidates)
    covered = _mask(g.n, state.covered)
    outgoing = candidates[g.sources]
    transmits = np.zeros(len(g.indices), dtype=bool)
    draws = coins.draw_many(g.sources[outgoing], g.indices[outgoing])
    transmits[outgoing] = draws <= params.p_diff
    new = frozenset(np.flatnonzero(_spread(g, candidates, covered, transmits)).tolist())
    return DiffusionState(
        covered=state.covered | new,
        candidates=new,
        round=state.round + 1,
    )


def run_on_draws(g: Graph, adopters: Iterable[int], draws: np.ndarray, p_diff: float) -> DiffusionOutcome:
    """Run to termination with pre-evaluated coins.

    ``draws`` holds ``draw(u, v)`` for every directed slot of ``g`` (aligned
    with ``g.indices``). Each slot is consulted at most once per run because
    a node is a candidate in at most one round, so evaluating all coins up
    front is equivalent to drawing them lazily.
    """
    transmits = draws <= p_diff
    covered = _mask(g.n, adopters)
    candidates = covered.copy()
    count = int(covered.sum())
    per_round = []
    while count < g.n:
        new = _spread(g, candidates, covered, transmits)
        added = int(new.sum())
        per_round.append(added)
        if not added:
            break
        covered |= new
        count += added
        candidates = new
    return DiffusionOutcome(
        success=count == g.n,
        rounds=len(per_round),
        newly_covered_per_round=tuple(per_round),
        final_covered_count=count,
        covered=frozenset(np.flatnonzero(covered).tolist()),
    )


def run(g: Graph, params: DiffusionParams, coins) -> DiffusionOutcome:
    """Diffuse from ``params.early_adopters`` until success or extinction.

    The graph is assumed connected; this is not re-checked.
    """
    params.check_graph(g)
    draws = coins.draw_many(g.sources, g.indices)
    return run_on_draws(g, params.early_adopters, draws, params.p_diff)


def run_with_probability(g: Graph, params: DiffusionParams, coins) -> DiffusionOutcome:
    """Same as :func:`run`; kept as the entry point for coupled p_diff sweeps
    over one coin source."""
    return run(g, params, coins)


def trace(g: Graph, params: DiffusionParams, coins) -> list[DiffusionState]:
    """States after each executed round, starting with the initial state."""
    state = init_state(g, params)
    states = [state]
    while len(state.covered) < g.n and state.candidates:
        state = step(state, g, params, coins)
        states.append(state)
    return states
