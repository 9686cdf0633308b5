"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module.  Setting ``LDSTAB_PURE_PYTHON=1`` forces
the fallback.  Calls whose counts could exceed 64 bits always run on the
Python backend, which uses unbounded integers.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    if os.environ.get("LDSTAB_PURE_PYTHON", "").strip() not in ("", "0"):
        raise ImportError("pure-Python backend requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"
_impl = _ckernels if _ckernels is not None else _pykernels


def count_power(table, n, m, k):
    try:
        return _impl.count_power(table, n, m, k)
    except OverflowError:
        return _pykernels.count_power(table, n, m, k)


def pattern_counts(table, n, m, k, sources=None, first=-1):
    try:
        return _impl.pattern_counts(table, n, m, k, sources, first)
    except OverflowError:
        return _pykernels.pattern_counts(table, n, m, k, sources, first)


def reach_closure(table, n, m):
    return _impl.reach_closure(table, n, m)


def lris_mask(table, n, m, mask):
    return _impl.lris_mask(table, n, m, mask)


def sample_hits(table, n, m, x0, target, k, samples, thresholds, state):
    return _impl.sample_hits(table, n, m, x0, target, k, samples, thresholds, state)
