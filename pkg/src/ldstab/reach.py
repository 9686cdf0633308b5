"""Pattern counts, reachability, the state transition graph and DOT export."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional

from . import kernels
from .model import Lds
from .sets import StateSet
from .stp import IntMatrix

__all__ = [
    "BoolMatrix",
    "Edge",
    "Stg",
    "count_matrix",
    "count_matrix_power",
    "reachability_matrix_bool",
    "reachability_matrix_weighted",
    "self_reachable_set",
    "is_reachable",
    "find_path",
    "find_path_to_set",
    "path_states",
    "stg",
    "stg_dot",
]


class Edge(NamedTuple):
    source: int
    subnetwork: int
    target: int


def path_states(path) -> tuple[int, ...]:
    """States visited by a path of edges, including both endpoints."""
    if not path:
        return ()
    return (path[0].source,) + tuple(e.target for e in path)


def _check_state(lds: Lds, x: int):
    if not 1 <= x <= lds.n:
        raise ValueError(f"state {x} outside [1..{lds.n}]")


def count_matrix(lds: Lds) -> IntMatrix:
    """``Q = L_1 + ... + L_m``; ``[Q]_{i,j}`` counts subnetworks sending ``j`` to ``i``."""
    n = lds.n
    entries = [0] * (n * n)
    for mp in lds.maps:
        for j, i in enumerate(mp.cols):
            entries[(i - 1) * n + j] += 1
    return IntMatrix(n, n, tuple(entries))


def count_matrix_power(lds: Lds, k: int) -> IntMatrix:
    """Exact ``Q**k``: entry ``(i, j)`` is the number of length-``k`` signals driving ``j`` to ``i``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return IntMatrix(lds.n, lds.n, tuple(kernels.count_power(lds.table, lds.n, lds.m, k)))


@dataclass(frozen=True)
class BoolMatrix:
    """Zero/nonzero pattern of the reachability matrix.

    ``columns[j-1]`` is a bitset whose bit ``i-1`` is set iff ``[R]_{i,j} > 0``.
    """

    n: int
    columns: tuple[int, ...]

    def get(self, i: int, j: int) -> bool:
        return bool(self.columns[j - 1] >> (i - 1) & 1)

    def reachable_from(self, j: int) -> StateSet:
        bits = self.columns[j - 1]
        return StateSet(self.n, (i + 1 for i in range(self.n) if bits >> i & 1))

    def diagonal(self) -> list[bool]:
        return [bool(self.columns[i] >> i & 1) for i in range(self.n)]

    def to_rows(self) -> list[list[int]]:
        return [[int(self.get(i, j)) for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]

    def __str__(self):
        return "\n".join(" ".join(map(str, row)) for row in self.to_rows())


@lru_cache(maxsize=128)
def reachability_matrix_bool(lds: Lds) -> BoolMatrix:
    """Pattern of ``R = Gamma + ... + Gamma**n`` via Boolean closure with early exit."""
    return BoolMatrix(lds.n, tuple(kernels.reach_closure(lds.table, lds.n, lds.m)))


def reachability_matrix_weighted(lds: Lds, horizon: Optional[int] = None) -> tuple[tuple[Fraction, ...], ...]:
    """``sum_{k=1..horizon} Q**k / m**k`` as exact rationals (``horizon`` defaults to ``n``)."""
    n, m = lds.n, lds.m
    horizon = n if horizon is None else horizon
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    q = count_matrix(lds)
    acc = [Fraction(0)] * (n * n)
    power = q
    for k in range(1, horizon + 1):
        if k > 1:
            power = q @ power
        scale = m ** k
        acc = [a + Fraction(v, scale) if v else a for a, v in zip(acc, power.entries)]
    return tuple(tuple(acc[i * n:(i + 1) * n]) for i in range(n))


def self_reachable_set(lds: Lds) -> StateSet:
    """States on a loop of the transition graph (``[R]_{i,i} > 0``)."""
    return StateSet.from_mask(reachability_matrix_bool(lds).diagonal())


def is_reachable(lds: Lds, source: int, target: int, k: Optional[int] = None) -> bool:
    _check_state(lds, source)
    _check_state(lds, target)
    if k is None:
        return reachability_matrix_bool(lds).get(target, source)
    if k < 1:
        raise ValueError("k must be >= 1")
    # a k-step reachable set by frontier propagation; cheaper than a full Q**k
    frontier = {source}
    for _ in range(k):
        frontier = {mp.cols[x - 1] for x in frontier for mp in lds.maps}
    return target in frontier


def find_path_to_set(lds: Lds, source: int, targets) -> Optional[tuple[Edge, ...]]:
    """Shortest path of at least one step from ``source`` into ``targets``.

    Breadth-first; successors are explored by increasing state index and each
    edge is labelled with the lowest subnetwork realising it.
    """
    _check_state(lds, source)
    targets = set(targets)
    parent: dict[int, tuple[int, int]] = {}
    queue = deque()

    def visit(x):
        for y, j in lds.successors(x):
            if y not in parent:
                parent[y] = (x, j)
                queue.append(y)

    visit(source)
    hit = None
    while queue:
        x = queue.popleft()
        if x in targets:
            hit = x
            break
        visit(x)
    if hit is None:
        return None
    edges = []
    cur = hit
    while True:
        prev, j = parent[cur]
        edges.append(Edge(prev, j, cur))
        if prev == source:
            break
        cur = prev
    return tuple(reversed(edges))


def find_path(lds: Lds, source: int, target: int) -> Optional[tuple[Edge, ...]]:
    _check_state(lds, target)
    return find_path_to_set(lds, source, (target,))


@dataclass(frozen=True)
class Stg:
    """State transition graph: edge ``(x, y)`` carries the subnetworks sending ``x`` to ``y``."""

    n: int
    edges: dict

    def successors(self, x: int) -> list[int]:
        return sorted(y for (s, y) in self.edges if s == x)

    def edge_list(self) -> list[tuple[int, int, tuple[int, ...]]]:
        return [(x, y, self.edges[(x, y)]) for (x, y) in sorted(self.edges)]


def stg(lds: Lds) -> Stg:
    edges: dict[tuple[int, int], list[int]] = {}
    for j, mp in enumerate(lds.maps, start=1):
        for x, y in enumerate(mp.cols, start=1):
            edges.setdefault((x, y), []).append(j)
    return Stg(lds.n, {e: tuple(labels) for e, labels in edges.items()})


TARGET_STYLE = 'peripheries=2'
SELF_REACHABLE_STYLE = 'style=filled, fillcolor="#f4cccc"'
LRIS_STYLE = 'color="blue", fontcolor="blue"'


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def stg_dot(
    lds: Lds,
    target: Optional[StateSet] = None,
    self_reachable: Optional[StateSet] = None,
    lris: Optional[StateSet] = None,
) -> str:
    """Render the transition graph as a DOT digraph.

    Nodes are the state indices.  Optional highlights: the target set gets a
    double border, self-reachable states a filled background, and the
    invariant subset a blue outline.  Output order is fixed (nodes by index,
    edges by source then target) so the text is reproducible.
    """
    lines = [f"digraph {_quote(lds.name or 'stg')} {{", "  node [shape=circle];"]
    for x in range(1, lds.n + 1):
        attrs = []
        if target is not None and x in target:
            attrs.append(TARGET_STYLE)
        if self_reachable is not None and x in self_reachable:
            attrs.append(SELF_REACHABLE_STYLE)
        if lris is not None and x in lris:
            attrs.append(LRIS_STYLE)
        lines.append(f"  {x} [{', '.join(attrs)}];" if attrs else f"  {x};")
    for x, y, labels in stg(lds).edge_list():
        lines.append(f'  {x} -> {y} [label="{",".join(map(str, labels))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
