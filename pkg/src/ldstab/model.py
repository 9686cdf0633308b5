"""Logic dynamical systems ``x(t+1) = L_{sigma(t)} x(t)`` and their JSON form."""

from __future__ import annotations

import itertools
import json
import math
from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Optional, Union

from .sets import StateSet
from .stp import LogicMatrix, decode_state, encode_state, khatri_rao, structural_matrix

__all__ = [
    "Lds",
    "Network",
    "NetworkFormatError",
    "SwitchingSignal",
    "Trajectory",
    "parse_network",
    "load_network",
    "serialize_network",
    "from_node_functions",
    "node_functions_of",
    "step",
    "trajectory",
    "DEFAULT_MAX_STATES",
]

DEFAULT_MAX_STATES = 2 ** 20


class NetworkFormatError(ValueError):
    """A network document is malformed or inconsistent."""


@dataclass(frozen=True)
class Lds:
    """``n`` states switched among ``m`` logic maps ``L_1..L_m``, each ``delta_n[...]``."""

    n: int
    maps: tuple[LogicMatrix, ...]
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        maps = tuple(mp if isinstance(mp, LogicMatrix) else LogicMatrix(self.n, tuple(mp)) for mp in self.maps)
        object.__setattr__(self, "maps", maps)
        if self.n < 1:
            raise ValueError(f"state count must be positive, got {self.n}")
        if not maps:
            raise ValueError("an LDS needs at least one subnetwork")
        for j, mp in enumerate(maps, start=1):
            if mp.dim != self.n or len(mp) != self.n:
                raise ValueError(f"L_{j} is {mp.dim}x{len(mp)}, expected {self.n}x{self.n}")

    @classmethod
    def from_lists(cls, maps: Sequence[Sequence[int]], name: Optional[str] = None) -> Lds:
        if not maps:
            raise ValueError("an LDS needs at least one subnetwork")
        n = len(maps[0])
        return cls(n, tuple(LogicMatrix(n, tuple(mp)) for mp in maps), name)

    @property
    def m(self) -> int:
        return len(self.maps)

    @cached_property
    def table(self) -> tuple[int, ...]:
        """Flat 0-based successor table: ``table[j*n + x]`` is ``L_{j+1}`` applied to state ``x+1``, minus one."""
        return tuple(c - 1 for mp in self.maps for c in mp.cols)

    def step(self, x: int, j: int) -> int:
        return step(self, x, j)

    def successors(self, x: int) -> list[tuple[int, int]]:
        """``(target, subnetwork)`` pairs out of ``x``, sorted by target then subnetwork."""
        return sorted((mp.cols[x - 1], j) for j, mp in enumerate(self.maps, start=1))

    def full_set(self) -> StateSet:
        return StateSet.full(self.n)

    def state_set(self, members) -> StateSet:
        return StateSet(self.n, members)


@dataclass(frozen=True)
class Network:
    """A parsed network document: the system plus the target set it carries, if any."""

    lds: Lds
    target: Optional[StateSet] = None


def parse_network(text: Union[str, bytes, Mapping]) -> Network:
    """Parse ``{"n", "m", "maps", "target"?, "name"?}``."""
    if isinstance(text, Mapping):
        doc = text
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise NetworkFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise NetworkFormatError("network document must be a JSON object")
    for key in ("n", "m", "maps"):
        if key not in doc:
            raise NetworkFormatError(f"missing field {key!r}")
    n, m, maps = doc["n"], doc["m"], doc["maps"]
    if not _is_int(n) or n < 1:
        raise NetworkFormatError(f"'n' must be a positive integer, got {n!r}")
    if not _is_int(m) or m < 1:
        raise NetworkFormatError(f"'m' must be a positive integer, got {m!r}")
    if not isinstance(maps, list) or not maps:
        raise NetworkFormatError("'maps' must be a non-empty list")
    if len(maps) != m:
        raise NetworkFormatError(f"'m' is {m} but {len(maps)} maps are given")
    for j, mp in enumerate(maps, start=1):
        if not isinstance(mp, list) or len(mp) != n:
            raise NetworkFormatError(f"map {j} must list exactly {n} column indices")
        for x, v in enumerate(mp, start=1):
            if not _is_int(v) or not 1 <= v <= n:
                raise NetworkFormatError(f"map {j}, column {x}: index {v!r} outside [1..{n}]")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise NetworkFormatError("'name' must be a string")
    lds = Lds(n, tuple(LogicMatrix(n, tuple(mp)) for mp in maps), name)
    target = None
    if doc.get("target") is not None:
        raw = doc["target"]
        if not isinstance(raw, list) or not all(_is_int(v) for v in raw):
            raise NetworkFormatError("'target' must be a list of state indices")
        if len(set(raw)) != len(raw):
            raise NetworkFormatError("'target' lists a state twice")
        try:
            target = StateSet(n, raw)
        except ValueError as exc:
            raise NetworkFormatError(f"'target': {exc}") from None
    return Network(lds, target)


def load_network(path: Union[str, Path]) -> Network:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise NetworkFormatError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_network(text)


def serialize_network(lds: Lds, target: Optional[StateSet] = None, indent: Optional[int] = None) -> str:
    doc = {"n": lds.n, "m": lds.m, "maps": [list(mp.cols) for mp in lds.maps]}
    if target is not None:
        doc["target"] = target.sorted()
    if lds.name is not None:
        doc["name"] = lds.name
    return json.dumps(doc, indent=indent)


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


NodeTable = Union[Mapping[tuple[int, ...], int], Callable[..., int]]


def from_node_functions(
    nodes: Sequence[tuple[int, NodeTable]],
    max_states: int = DEFAULT_MAX_STATES,
) -> LogicMatrix:
    """Global transition matrix of one subnetwork from per-node update functions.

    ``nodes[i]`` is ``(n_i, f_i)`` where ``f_i`` maps the full state tuple
    ``(a_1, ..., a_k)`` (``a_j`` in ``{0..n_j-1}``) to the next value of node
    ``i``.  The result is the Khatri-Rao product of the node structural
    matrices, an ``n x n`` logic matrix with ``n = n_1 * ... * n_k``.
    """
    if not nodes:
        raise ValueError("at least one node is required")
    domains = tuple(int(d) for d, _ in nodes)
    n = math.prod(domains)
    if n > max_states:
        raise ValueError(f"state space of size {n} exceeds the cap of {max_states}")
    result = None
    for (d, table) in nodes:
        lf = structural_matrix(domains, d, table)
        result = lf if result is None else khatri_rao(result, lf)
    return result


def node_functions_of(matrix: LogicMatrix, domains: Sequence[int]) -> list[tuple[int, dict]]:
    """Split a global ``n x n`` logic matrix into per-node truth tables."""
    domains = tuple(domains)
    if math.prod(domains) != matrix.dim or len(matrix) != matrix.dim:
        raise ValueError("domain sizes do not match the matrix")
    tables = [dict() for _ in domains]
    for args in itertools.product(*(range(d) for d in domains)):
        nxt = decode_state(matrix[encode_state(args, domains)], domains)
        for i, v in enumerate(nxt):
            tables[i][args] = v
    return list(zip(domains, tables))


def step(lds: Lds, x: int, j: int) -> int:
    if not 1 <= x <= lds.n:
        raise ValueError(f"state {x} outside [1..{lds.n}]")
    if not 1 <= j <= lds.m:
        raise ValueError(f"subnetwork {j} outside [1..{lds.m}]")
    return lds.maps[j - 1].cols[x - 1]


class SwitchingSignal:
    """A switching signal ``sigma(t)``, t = 0, 1, ...

    Built from a finite word, either used as-is (:meth:`finite`), repeated
    forever (:meth:`periodic`) or as a single constant value.
    """

    def __init__(self, word: Sequence[int], periodic: bool = False):
        word = tuple(int(v) for v in word)
        if any(v < 1 for v in word):
            raise ValueError(f"switching values must be >= 1, got {word}")
        if periodic and not word:
            raise ValueError("a periodic signal needs a non-empty word")
        self.word = word
        self.is_periodic = periodic

    @classmethod
    def finite(cls, values: Sequence[int]) -> SwitchingSignal:
        return cls(values)

    @classmethod
    def periodic(cls, word: Sequence[int]) -> SwitchingSignal:
        return cls(word, periodic=True)

    @classmethod
    def constant(cls, j: int) -> SwitchingSignal:
        return cls((j,), periodic=True)

    def __len__(self):
        if self.is_periodic:
            raise TypeError("periodic signals are infinite")
        return len(self.word)

    def available(self, horizon: int) -> bool:
        return self.is_periodic or len(self.word) >= horizon

    def __getitem__(self, t: int) -> int:
        if t < 0:
            raise IndexError("negative time")
        if self.is_periodic:
            return self.word[t % len(self.word)]
        return self.word[t]

    def prefix(self, horizon: int) -> tuple[int, ...]:
        if not self.available(horizon):
            raise ValueError(f"signal has {len(self.word)} values, horizon {horizon} needs more")
        return tuple(self[t] for t in range(horizon))

    def shifted(self, t0: int) -> SwitchingSignal:
        """The signal ``t -> sigma(t0 + t)``."""
        if self.is_periodic:
            k = len(self.word)
            return SwitchingSignal(self.word[t0 % k:] + self.word[:t0 % k], periodic=True)
        return SwitchingSignal(self.word[t0:])

    def __iter__(self) -> Iterator[int]:
        return itertools.cycle(self.word) if self.is_periodic else iter(self.word)

    def __repr__(self):
        kind = "periodic" if self.is_periodic else "finite"
        return f"SwitchingSignal.{kind}({list(self.word)})"


@dataclass(frozen=True)
class Trajectory:
    states: tuple[int, ...]
    signal: tuple[int, ...] = ()

    @property
    def horizon(self) -> int:
        return len(self.states) - 1

    @property
    def final(self) -> int:
        return self.states[-1]


def trajectory(lds: Lds, x0: int, signal, horizon: int) -> Trajectory:
    """States ``x(0..T; x0, sigma)``.  ``signal`` is a :class:`SwitchingSignal` or a plain sequence."""
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    if not isinstance(signal, SwitchingSignal):
        signal = SwitchingSignal.finite(signal)
    word = signal.prefix(horizon)
    if not 1 <= x0 <= lds.n:
        raise ValueError(f"state {x0} outside [1..{lds.n}]")
    states = [x0]
    x = x0
    for j in word:
        x = step(lds, x, j)
        states.append(x)
    return Trajectory(tuple(states), word)
