"""Portable seeded generator used for random switching.

The stream is fixed so trajectories can be reproduced bit-for-bit in any
language:

* state initialisation: ``state = splitmix64(seed mod 2**64)``, replaced by
  ``0x9E3779B97F4A7C15`` if that is zero;
* each draw is xorshift64*: ``x ^= x >> 12; x ^= x << 25; x ^= x >> 27``
  (all mod 2**64), output ``x * 0x2545F4914F6CDD1D mod 2**64``;
* a subnetwork is chosen from a distribution ``p_1..p_m`` by taking
  ``u = output >> 11`` (53 bits) and returning the first ``j`` with
  ``u < floor((p_1 + ... + p_j) * 2**53)``, the sums evaluated exactly.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
import math

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MULTIPLIER = 0x2545F4914F6CDD1D
UNIT = 1 << 53


def splitmix64(x: int) -> int:
    x = (x + GOLDEN) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def seed_state(seed: int) -> int:
    state = splitmix64(int(seed) & MASK64)
    return state or GOLDEN


def choice_thresholds(pdv: Sequence[Fraction]) -> list[int]:
    """Cumulative 53-bit thresholds for :meth:`XorShift64Star.choose`."""
    out = []
    total = Fraction(0)
    for p in pdv:
        total += p
        out.append(math.floor(total * UNIT))
    out[-1] = UNIT
    return out


class XorShift64Star:
    def __init__(self, seed: int = 0, *, state: int | None = None):
        self.state = seed_state(seed) if state is None else state

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * MULTIPLIER) & MASK64

    def choose(self, thresholds: Sequence[int]) -> int:
        """0-based index drawn according to ``thresholds``."""
        u = self.next_u64() >> 11
        for j, t in enumerate(thresholds):
            if u < t:
                return j
        return len(thresholds) - 1
