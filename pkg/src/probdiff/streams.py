"""Seed derivation and counter-based random streams.

Two kinds of randomness are used by the simulator:

* sequential streams (``numpy.random.Generator`` over Philox) for graph
  generation and adopter sampling, derived from a master seed through
  ``numpy.random.SeedSequence`` spawn keys;
* per-directed-edge coins, which must be a pure function of
  ``(trial_seed, u, v)``. These are computed with a SplitMix64 mix of a
  counter built from the node pair, so any coin can be evaluated lazily and
  in any order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1

PURPOSES = {"graph": 1, "adopters": 2, "coins": 3, "degrees": 4}

# Default master seed used by the command line and the reproduction scripts.
DEFAULT_SEED = 20160701


def splitmix64(x: np.ndarray) -> np.ndarray:
    """SplitMix64 output function applied elementwise to a uint64 array."""
    z = np.asarray(x, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def to_unit_interval(bits: np.ndarray) -> np.ndarray:
    """Map uint64 words to doubles in [0, 1) using the top 53 bits."""
    return (bits >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


class HashCoins:
    """Directional coins ``draw(u, v)`` keyed by a 64-bit trial seed.

    The coin for the ordered pair ``(u, v)`` is the output of a SplitMix64
    generator seeded with ``trial_seed`` at position ``(u << 32 | v) + 1``.
    ``draw(u, v)`` and ``draw(v, u)`` sit at different positions and are
    therefore independent streams.
    """

    def __init__(self, trial_seed: int):
        self.trial_seed = int(trial_seed) & _MASK64

    def __repr__(self) -> str:
        return f"HashCoins(trial_seed={self.trial_seed})"

    def draw_many(self, src, dst) -> np.ndarray:
        src = np.asarray(src, dtype=np.uint64)
        dst = np.asarray(dst, dtype=np.uint64)
        counter = ((src << np.uint64(32)) | dst) + np.uint64(1)
        state = np.uint64(self.trial_seed) + counter * _GAMMA
        return to_unit_interval(splitmix64(state))

    def draw(self, u: int, v: int) -> float:
        return float(self.draw_many([u], [v])[0])


def make_stream(seed) -> np.random.Generator:
    """Philox generator from an int or a ``SeedSequence``."""
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return np.random.Generator(np.random.Philox(seed))


def child_sequence(seq: np.random.SeedSequence, index: int) -> np.random.SeedSequence:
    """Deterministic child of ``seq``; unlike ``spawn`` it keeps no state."""
    return np.random.SeedSequence(seq.entropy, spawn_key=(*seq.spawn_key, index))


def probability_key(p: float) -> int:
    """Integer code for a probability, used inside spawn keys."""
    return int(round(p * 1_000_000_000))


@dataclass(frozen=True)
class SeedPlan:
    """Derives independent, reproducible seeds from one master seed.

    ``derive(key, trial, purpose)`` is a pure function. ``key`` is a tuple of
    non-negative ints identifying the group of cells that share the stream
    (for example ``(n, probability_key(p_link))`` for graph draws).
    """

    master_seed: int = DEFAULT_SEED

    def derive(self, key: tuple[int, ...], trial: int, purpose: str) -> np.random.SeedSequence:
        return np.random.SeedSequence(
            self.master_seed, spawn_key=(*key, trial, PURPOSES[purpose])
        )

    def stream(self, key: tuple[int, ...], trial: int, purpose: str) -> np.random.Generator:
        return make_stream(self.derive(key, trial, purpose))

    def coins(self, key: tuple[int, ...], trial: int) -> HashCoins:
        word = self.derive(key, trial, "coins").generate_state(1, np.uint64)[0]
        return HashCoins(int(word))
