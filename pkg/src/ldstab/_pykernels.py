"""Pure-Python kernels.

Every function here has a twin with the same signature in ``_ckernels``.
All indices are 0-based and systems are passed as a flat successor table
``table[j*n + x]`` (subnetwork ``j``, state ``x``).  Count matrices are flat
row-major lists: entry ``i*n + j`` is the number of patterns from ``j`` to ``i``.
"""

from __future__ import annotations

from operator import add

from .rng import XorShift64Star


def count_power(table, n, m, k):
    """Flat ``Q**k`` by propagating the identity ``k`` times through the maps."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(k):
        nxt = [None] * n
        for x in range(n):
            row = rows[x]
            for l in range(m):
                y = table[l * n + x]
                nxt[y] = row[:] if nxt[y] is None else list(map(add, nxt[y], row))
        rows = [r if r is not None else [0] * n for r in nxt]
    return [v for r in rows for v in r]


def pattern_counts(table, n, m, k, sources=None, first=-1):
    """Explicitly run every length-``k`` signal from each source state.

    Depth-first over the signal tree so each prefix is applied once.
    ``first`` restricts the first switching value (used for sharding).
    """
    counts = [0] * (n * n)
    if sources is None:
        sources = range(n)
    lo0, hi0 = (first, first + 1) if first >= 0 else (0, m)
    for s in sources:
        col = [0] * n
        if k == 1:
            for c in range(lo0, hi0):
                col[table[c * n + s]] += 1
        else:
            states = [0] * k
            choice = [0] * k
            states[0] = s
            choice[0] = lo0
            d = 0
            last = k - 1
            while d >= 0:
                hi = hi0 if d == 0 else m
                c = choice[d]
                if c >= hi:
                    d -= 1
                    continue
                choice[d] = c + 1
                x = table[c * n + states[d]]
                if d + 1 == last:
                    for l in range(m):
                        col[table[l * n + x]] += 1
                else:
                    d += 1
                    states[d] = x
                    choice[d] = 0
        for i, v in enumerate(col):
            if v:
                counts[i * n + s] += v
    return counts


def reach_closure(table, n, m):
    """Column bitsets of the >=1-step reachability relation.

    Bit ``i`` of ``out[j]`` is set iff ``i`` is reachable from ``j``.  Grows
    ``R <- R + R*A`` in the Boolean semiring until nothing changes.
    """
    succ = [0] * n
    for x in range(n):
        bits = 0
        for l in range(m):
            bits |= 1 << table[l * n + x]
        succ[x] = bits
    reach = succ[:]
    changed = True
    while changed:
        changed = False
        for j in range(n):
            r = reach[j]
            acc = r
            rest = r
            while rest:
                low = rest & -rest
                acc |= succ[low.bit_length() - 1]
                rest ^= low
            if acc != r:
                reach[j] = acc
                changed = True
    return reach


def lris_mask(table, n, m, mask):
    """Largest robustly invariant subset of ``mask`` and the number of shrinking rounds."""
    cur = [bool(b) for b in mask]
    rounds = 0
    while True:
        nxt = [cur[x] and all(cur[table[l * n + x]] for l in range(m)) for x in range(n)]
        if nxt == cur:
            return cur, rounds
        cur = nxt
        rounds += 1


def sample_hits(table, n, m, x0, target, k, samples, thresholds, state):
    """Count length-``k`` random runs from ``x0`` that end in ``target``.

    Returns ``(hits, final generator state)``.
    """
    rng = XorShift64Star(state=state)
    hits = 0
    for _ in range(samples):
        x = x0
        for _ in range(k):
            x = table[rng.choose(thresholds) * n + x]
        if target[x]:
            hits += 1
    return hits, rng.state
