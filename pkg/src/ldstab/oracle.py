"""Independent checks by explicit switching-pattern enumeration and random simulation."""

from __future__ import annotations

import math
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import kernels
from .invariant import CapExceededError
from .model import Lds, Trajectory
from .reach import count_matrix_power
from .rng import XorShift64Star, choice_thresholds, seed_state
from .sets import StateSet
from .stability import validate_pdv
from .stp import IntMatrix

__all__ = [
    "DEFAULT_PATTERN_CAP",
    "OracleReport",
    "MonteCarloEstimate",
    "enumerate_pattern_counts",
    "verify_counts",
    "simulate_random",
    "monte_carlo_ratio",
]

DEFAULT_PATTERN_CAP = 10 ** 7


def _shard(args):
    table, n, m, k, source, first = args
    return kernels.pattern_counts(table, n, m, k, [source], first)


def enumerate_pattern_counts(lds: Lds, k: int, cap: int = DEFAULT_PATTERN_CAP, workers: int = 1) -> IntMatrix:
    """Count, by running every signal, how many length-``k`` signals drive state ``j`` to ``i``.

    ``cap`` bounds the number of signals ``m**k``.  With ``workers > 1`` the
    top-level branches (start state, first switching value) are spread over
    processes and the partial counts added up.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    patterns = lds.m ** k
    if patterns > cap:
        raise CapExceededError(f"{lds.m}**{k} = {patterns} switching patterns exceed the cap of {cap}")
    n, m, table = lds.n, lds.m, lds.table
    if workers <= 1:
        counts = kernels.pattern_counts(table, n, m, k)
    else:
        jobs = [(table, n, m, k, s, f) for s in range(n) for f in range(m)]
        counts = [0] * (n * n)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_shard, jobs):
                counts = [a + b for a, b in zip(counts, part)]
    return IntMatrix(n, n, tuple(counts))


@dataclass(frozen=True)
class OracleReport:
    k: int
    enumerated: IntMatrix
    matrix_power: IntMatrix
    equal: bool
    first_mismatch: Optional[tuple[int, int]] = None

    def render_text(self) -> str:
        head = f"k = {self.k}: enumeration and Q^k " + ("agree" if self.equal else "DISAGREE")
        if self.first_mismatch is None:
            return head
        i, j = self.first_mismatch
        return (f"{head}\n  first mismatch at ({i}, {j}): enumerated "
                f"{self.enumerated.entry(i, j)}, matrix power {self.matrix_power.entry(i, j)}")


def verify_counts(lds: Lds, k: int, cap: int = DEFAULT_PATTERN_CAP, workers: int = 1) -> OracleReport:
    enumerated = enumerate_pattern_counts(lds, k, cap, workers)
    power = count_matrix_power(lds, k)
    mismatch = None
    for idx, (a, b) in enumerate(zip(enumerated.entries, power.entries)):
        if a != b:
            mismatch = (idx // lds.n + 1, idx % lds.n + 1)
            break
    return OracleReport(k, enumerated, power, mismatch is None, mismatch)


def _uniform(m: int):
    return tuple(Fraction(1, m) for _ in range(m))


def simulate_random(lds: Lds, x0: int, pdv=None, horizon: int = 0, seed: int = 0) -> Trajectory:
    """Trajectory under switching values drawn i.i.d. from ``pdv`` (uniform by default).

    The draws come from :class:`ldstab.rng.XorShift64Star`, so a seed fixes
    the trajectory on every platform.
    """
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    if not 1 <= x0 <= lds.n:
        raise ValueError(f"state {x0} outside [1..{lds.n}]")
    pdv = _uniform(lds.m) if pdv is None else validate_pdv(lds, pdv)
    thresholds = choice_thresholds(pdv)
    rng = XorShift64Star(seed)
    states = [x0]
    signal = []
    x = x0
    for _ in range(horizon):
        j = rng.choose(thresholds) + 1
        x = lds.maps[j - 1].cols[x - 1]
        signal.append(j)
        states.append(x)
    return Trajectory(tuple(states), tuple(signal))


@dataclass(frozen=True)
class MonteCarloEstimate:
    hits: int
    samples: int

    @property
    def estimate(self) -> float:
        return self.hits / self.samples

    @property
    def stderr(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.samples)


def monte_carlo_ratio(lds: Lds, x0: int, target: StateSet, k: int, samples: int, seed: int = 0,
                      pdv=None) -> MonteCarloEstimate:
    """Fraction of sampled length-``k`` random runs from ``x0`` that end in ``target``."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    if not 1 <= x0 <= lds.n:
        raise ValueError(f"state {x0} outside [1..{lds.n}]")
    pdv = _uniform(lds.m) if pdv is None else validate_pdv(lds, pdv)
    hits, _ = kernels.sample_hits(lds.table, lds.n, lds.m, x0 - 1, target.mask(), k, samples,
                                  choice_thresholds(pdv), seed_state(seed))
    return MonteCarloEstimate(hits, samples)
