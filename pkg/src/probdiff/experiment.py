"""Monte Carlo experiment grid: trials per cell, aggregation, sweeps.

Within one ``(n, p_link, trial)`` triple the graph and the directed coins are
shared by every ``p_diff`` and adopter count, and the adopter set is shared by
every ``p_diff``. Changing ``p_diff`` therefore only moves the transmission
threshold, which makes per-trial success monotone in ``p_diff``.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .diffusion import run_on_draws
from .errors import ConfigurationError, GraphGenerationError
from .randgraph import DEFAULT_MAX_ATTEMPTS, Graph, degree_stats, generate_connected_er, generate_er
from .stats import mean_ci, proportion_ci
from .streams import DEFAULT_SEED, SeedPlan, child_sequence, make_stream, probability_key

PAPER_N = (100, 200)
PAPER_P_LINK = (0.05, 0.10, 0.15, 0.20, 0.30)
PAPER_P_DIFF = tuple(round(0.05 * i, 2) for i in range(1, 21))
PAPER_ADOPTERS = (1, 10, 20)
PAPER_TRIALS = 200

_BLOCK = 25


def _check_probability(name: str, p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ConfigurationError(f"{name} must lie in [0, 1], got {p!r}")


@dataclass(frozen=True)
class CellParams:
    n: int
    p_link: float
    p_diff: float
    k_adopters: int
    trials: int = PAPER_TRIALS

    def __post_init__(self):
        if self.n < 2:
            raise ConfigurationError(f"n must be >= 2, got {self.n}")
        _check_probability("p_link", self.p_link)
        _check_probability("p_diff", self.p_diff)
        if not 1 <= self.k_adopters <= self.n:
            raise ConfigurationError(f"k_adopters must lie in 1..{self.n}, got {self.k_adopters}")
        if self.trials < 1:
            raise ConfigurationError(f"trials must be >= 1, got {self.trials}")


@dataclass(frozen=True)
class CellResult:
    params: CellParams
    successes: int
    p_success: float
    p_success_ci: tuple[float, float]
    mean_rounds: float | None
    rounds_ci: tuple[float, float] | None
    mean_degree: float
    stddev_degree: float
    mean_regen_attempts: float

    @property
    def rounds_halfwidth(self) -> float | None:
        if self.rounds_ci is None:
            return None
        return (self.rounds_ci[1] - self.rounds_ci[0]) / 2


@dataclass(frozen=True)
class ExperimentConfig:
    """A sweep grid. The defaults reproduce the published grid."""

    n_values: tuple[int, ...] = PAPER_N
    p_link_values: tuple[float, ...] = PAPER_P_LINK
    p_diff_values: tuple[float, ...] = PAPER_P_DIFF
    adopter_counts: tuple[int, ...] = PAPER_ADOPTERS
    trials: int = PAPER_TRIALS
    master_seed: int = DEFAULT_SEED
    max_regen_attempts: int = DEFAULT_MAX_ATTEMPTS

    def __post_init__(self):
        for name in ("n_values", "p_link_values", "p_diff_values", "adopter_counts"):
            values = tuple(getattr(self, name))
            if not values:
                raise ConfigurationError(f"{name} must not be empty")
            object.__setattr__(self, name, values)
        for p in self.p_link_values:
            _check_probability("p_link", p)
        for p in self.p_diff_values:
            _check_probability("p_diff", p)
        for n in self.n_values:
            if n < 2:
                raise ConfigurationError(f"n must be >= 2, got {n}")
            bad = [k for k in self.adopter_counts if not 1 <= k <= n]
            if bad:
                raise ConfigurationError(f"adopter counts {bad} out of range for n={n}")
        if self.trials < 1:
            raise ConfigurationError(f"trials must be >= 1, got {self.trials}")
        if self.max_regen_attempts < 1:
            raise ConfigurationError("max_regen_attempts must be >= 1")

    def cells(self) -> list[CellParams]:
        return [
            CellParams(n, p_link, p_diff, k, self.trials)
            for n, p_link, p_diff, k in itertools.product(
                self.n_values, self.p_link_values, self.p_diff_values, self.adopter_counts
            )
        ]


def select_early_adopters(g: Graph, k: int, stream: np.random.Generator) -> frozenset[int]:
    """Uniform random k-subset of the nodes (sampling without replacement)."""
    if not 1 <= k <= g.n:
        raise ConfigurationError(f"k must lie in 1..{g.n}, got {k}")
    return frozenset(stream.choice(g.n, size=k, replace=False).tolist())


@dataclass
class _TrialRecord:
    attempts: int
    mean_degree: float
    stddev_degree: float
    outcomes: dict[tuple[int, float], tuple[bool, int]] = field(default_factory=dict)


def _simulate_trial(n, p_link, trial, plan, p_diffs, ks, max_attempts) -> _TrialRecord:
    key = (n, probability_key(p_link))
    try:
        g, attempts = generate_connected_er(
            n, p_link, plan.derive(key, trial, "graph"), max_attempts
        )
    except GraphGenerationError as exc:
        raise GraphGenerationError(n, p_link, max_attempts, trial) from exc
    degrees = g.degrees
    record = _TrialRecord(attempts, 2.0 * g.edge_count / n, float(np.std(degrees)))
    draws = plan.coins(key, trial).draw_many(g.sources, g.indices)
    for k in ks:
        adopters = select_early_adopters(g, k, plan.stream((*key, k), trial, "adopters"))
        for p_diff in p_diffs:
            outcome = run_on_draws(g, adopters, draws, p_diff)
            record.outcomes[(k, p_diff)] = (outcome.success, outcome.rounds)
    return record


def _simulate_block(n, p_link, start, stop, master_seed, p_diffs, ks, max_attempts):
    plan = SeedPlan(master_seed)
    return [
        _simulate_trial(n, p_link, t, plan, p_diffs, ks, max_attempts)
        for t in range(start, stop)
    ]


def _aggregate(cell: CellParams, records: Sequence[_TrialRecord]) -> CellResult:
    key = (cell.k_adopters, cell.p_diff)
    rounds = [r.outcomes[key][1] for r in records if r.outcomes[key][0]]
    successes = len(rounds)
    if rounds:
        ci = mean_ci(rounds)
        mean_rounds, rounds_ci = ci.mean, (ci.lo, ci.hi)
    else:
        mean_rounds = rounds_ci = None
    trials = len(records)
    return CellResult(
        params=cell,
        successes=successes,
        p_success=successes / trials,
        p_success_ci=proportion_ci(successes, trials),
        mean_rounds=mean_rounds,
        rounds_ci=rounds_ci,
        mean_degree=math.fsum(r.mean_degree for r in records) / trials,
        stddev_degree=math.fsum(r.stddev_degree for r in records) / trials,
        mean_regen_attempts=sum(r.attempts for r in records) / trials,
    )


def run_cell(
    cell: CellParams,
    plan: SeedPlan,
    max_regen_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> CellResult:
    """Run all trials of one cell.

    Gives exactly the numbers :func:`sweep` reports for the same cell and
    master seed.
    """
    records = [
        _simulate_trial(
            cell.n, cell.p_link, t, plan, (cell.p_diff,), (cell.k_adopters,), max_regen_attempts
        )
        for t in range(cell.trials)
    ]
    return _aggregate(cell, records)


def resolve_workers(threads: int) -> int:
    if threads < 0:
        raise ConfigurationError(f"threads must be >= 0, got {threads}")
    return threads or os.cpu_count() or 1


def sweep(config: ExperimentConfig, threads: int = 1) -> list[CellResult]:
    """Evaluate every cell of the grid, in ``n x p_link x p_diff x k`` order.

    ``threads`` is the number of worker processes (0 picks the CPU count).
    Results do not depend on it: every trial derives its randomness from the
    master seed and the aggregation folds trials in index order.
    """
    workers = resolve_workers(threads)
    jobs = [
        (n, p_link, start, min(start + _BLOCK, config.trials), config.master_seed,
         config.p_diff_values, config.adopter_counts, config.max_regen_attempts)
        for n in config.n_values
        for p_link in config.p_link_values
        for start in range(0, config.trials, _BLOCK)
    ]
    if workers == 1:
        blocks = [_simulate_block(*job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(_simulate_block, *zip(*jobs)))
    by_group: dict[tuple[int, float], list[_TrialRecord]] = {}
    for job, block in zip(jobs, blocks):
        by_group.setdefault((job[0], job[1]), []).extend(block)
    return [_aggregate(cell, by_group[(cell.n, cell.p_link)]) for cell in config.cells()]


@dataclass(frozen=True)
class DegreeReport:
    """Degree statistics pooled over several sampled graphs.

    ``mean_degree`` pools all nodes of all graphs; ``mean_degree_se`` is the
    standard error of the per-graph mean degrees; ``stddev_degree`` averages
    the per-graph population standard deviations.
    """

    n: int
    p_link: float
    samples: int
    histogram: dict[int, int]
    mean_degree: float
    mean_degree_se: float
    stddev_degree: float


def degree_report(
    n: int,
    p_link: float,
    samples: int,
    seed: int = DEFAULT_SEED,
    connected: bool = False,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> DegreeReport:
    """Pooled degree distribution of ``samples`` graphs from G(n, p_link).

    With ``connected=True`` the graphs are drawn from the connectivity-filtered
    generator used by the experiments instead of plain G(n, p).
    """
    if samples < 1:
        raise ConfigurationError(f"samples must be >= 1, got {samples}")
    plan = SeedPlan(seed)
    key = (n, probability_key(p_link))
    histogram: dict[int, int] = {}
    means, stds = [], []
    for s in range(samples):
        seq = plan.derive(key, s, "degrees")
        if connected:
            g, _ = generate_connected_er(n, p_link, seq, max_attempts)
        else:
            g = generate_er(n, p_link, make_stream(child_sequence(seq, 0)))
        stats = degree_stats(g)
        for d, c in stats.histogram.items():
            histogram[d] = histogram.get(d, 0) + c
        means.append(stats.mean_degree)
        stds.append(stats.stddev_degree)
    se = float(np.std(means, ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return DegreeReport(
        n=n,
        p_link=p_link,
        samples=samples,
        histogram=dict(sorted(histogram.items())),
        mean_degree=math.fsum(means) / samples,
        mean_degree_se=se,
        stddev_degree=math.fsum(stds) / samples,
    )
