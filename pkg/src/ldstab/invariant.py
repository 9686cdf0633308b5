"""Robustly invariant subsets and the largest one inside a target set."""

from __future__ import annotations

import itertools

from . import kernels
from .model import Lds
from .sets import StateSet

__all__ = [
    "is_robustly_invariant",
    "lris",
    "lris_with_rounds",
    "lris_bruteforce",
    "CapExceededError",
    "DEFAULT_BRUTEFORCE_CAP",
]

DEFAULT_BRUTEFORCE_CAP = 16


class CapExceededError(RuntimeError):
    """A brute-force computation would exceed its configured size cap."""


def is_robustly_invariant(lds: Lds, c: StateSet) -> bool:
    """Every subnetwork maps ``c`` into itself (one step suffices by induction)."""
    return all(mp.cols[x - 1] in c for x in c for mp in lds.maps)


def lris_with_rounds(lds: Lds, target: StateSet) -> tuple[StateSet, int]:
    """LRIS of ``target`` and how many shrinking rounds the fixed point took."""
    mask, rounds = kernels.lris_mask(lds.table, lds.n, lds.m, target.mask())
    return StateSet.from_mask(mask), rounds


def lris(lds: Lds, target: StateSet) -> StateSet:
    """Largest robustly invariant subset ``I(M)`` of ``target``.

    Shrinks ``C = M`` by dropping states with a successor outside ``C``
    until nothing changes.  May be empty.
    """
    return lris_with_rounds(lds, target)[0]


def lris_bruteforce(lds: Lds, target: StateSet, cap: int = DEFAULT_BRUTEFORCE_CAP) -> StateSet:
    """Union of every robustly invariant subset of ``target``, by enumeration."""
    if len(target) > cap:
        raise CapExceededError(f"|M| = {len(target)} exceeds the brute-force cap of {cap}")
    members = target.sorted()
    union: set[int] = set()
    for r in range(1, len(members) + 1):
        for subset in itertools.combinations(members, r):
            s = StateSet(lds.n, subset)
            if is_robustly_invariant(lds, s):
                union.update(subset)
    return StateSet(lds.n, union)
