from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

__all__ = ["StateSet"]


@dataclass(frozen=True)
class StateSet:
    """Subset of the state indices ``[1..n]``."""

    n: int
    members: frozenset[int]

    def __init__(self, n: int, members: Iterable[int] = ()):
        members = frozenset(int(x) for x in members)
        bad = sorted(x for x in members if not 1 <= x <= n)
        if bad:
            raise ValueError(f"states {bad} outside [1..{n}]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "members", members)

    @classmethod
    def full(cls, n: int) -> StateSet:
        return cls(n, range(1, n + 1))

    @classmethod
    def empty(cls, n: int) -> StateSet:
        return cls(n)

    @classmethod
    def from_mask(cls, mask: Iterable[bool]) -> StateSet:
        mask = list(mask)
        return cls(len(mask), (i for i, b in enumerate(mask, start=1) if b))

    @classmethod
    def parse(cls, n: int, text: str) -> StateSet:
        """Parse a comma list such as ``"3,4,6"``."""
        items = [t.strip() for t in text.split(",") if t.strip()]
        try:
            return cls(n, (int(t) for t in items))
        except ValueError as exc:
            raise ValueError(f"invalid state list {text!r}: {exc}") from None

    def mask(self) -> list[bool]:
        return [i in self.members for i in range(1, self.n + 1)]

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def complement(self) -> StateSet:
        return StateSet(self.n, (i for i in range(1, self.n + 1) if i not in self.members))

    def _check(self, other: StateSet):
        if self.n != other.n:
            raise ValueError(f"state sets over different universes ({self.n} vs {other.n})")

    def __or__(self, other: StateSet) -> StateSet:
        self._check(other)
        return StateSet(self.n, self.members | other.members)

    def __and__(self, other: StateSet) -> StateSet:
        self._check(other)
        return StateSet(self.n, self.members & other.members)

    def __sub__(self, other: StateSet) -> StateSet:
        self._check(other)
        return StateSet(self.n, self.members - other.members)

    def __le__(self, other: StateSet) -> bool:
        self._check(other)
        return self.members <= other.members

    def __contains__(self, x) -> bool:
        return x in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def __bool__(self):
        return bool(self.members)

    def __str__(self):
        return "{" + ",".join(map(str, self.sorted())) + "}"
