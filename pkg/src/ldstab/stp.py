"""Exact semi-tensor-product calculus over integer matrices.

Dense matrices are :class:`IntMatrix` (row-major tuples of Python ints, so
entries never overflow).  Matrices whose columns are all canonical basis
vectors are kept as :class:`LogicMatrix`, i.e. the bracket list of
``delta_n[i_1, ..., i_c]`` with 1-based indices.

The logic-value convention (value ``a`` of an ``n``-valued variable is the
basis vector ``delta_n^(n - a)``) lives in :class:`LogicValueMap`,
:func:`encode_state`, :func:`decode_state` and :func:`structural_matrix`
only.  Everything else in the package talks in basis indices.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Union

__all__ = [
    "IntMatrix",
    "LogicMatrix",
    "LogicValueMap",
    "kron",
    "stp",
    "khatri_rao",
    "structural_matrix",
    "encode_state",
    "decode_state",
]


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"matrix dimensions must be positive, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries for a {self.rows}x{self.cols} matrix, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntMatrix:
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), width, tuple(int(v) for r in rows for v in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def column(cls, values: Sequence[int]) -> IntMatrix:
        return cls(len(values), 1, tuple(int(v) for v in values))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def entry(self, i: int, j: int) -> int:
        """Entry ``[A]_{i,j}`` with 1-based ``i`` and ``j``."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"({i}, {j}) outside a {self.rows}x{self.cols} matrix")
        return self.entries[(i - 1) * self.cols + (j - 1)]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[r * c:(r + 1) * c]) for r in range(self.rows)]

    def col(self, j: int) -> IntMatrix:
        """Column ``j`` (1-based) as an ``rows x 1`` matrix."""
        return IntMatrix(self.rows, 1, self.entries[j - 1::self.cols])

    def column_sums(self) -> tuple[int, ...]:
        c = self.cols
        return tuple(sum(self.entries[j::c]) for j in range(c))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        a, b = self.entries, other.entries
        p, q = self.cols, other.cols
        out = []
        for r in range(self.rows):
            arow = a[r * p:(r + 1) * p]
            for c in range(q):
                out.append(sum(x * b[k * q + c] for k, x in enumerate(arow) if x))
        return IntMatrix(self.rows, q, tuple(out))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __str__(self):
        return "\n".join(" ".join(str(v) for v in row) for row in self.to_rows())


@dataclass(frozen=True)
class LogicMatrix:
    """``delta_dim[cols...]``: column ``j`` is the basis vector ``delta_dim^{cols[j-1]}``."""

    dim: int
    cols: tuple[int, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"logic matrix row dimension must be positive, got {self.dim}")
        if not self.cols:
            raise ValueError("logic matrix needs at least one column")
        object.__setattr__(self, "cols", tuple(int(c) for c in self.cols))
        for j, c in enumerate(self.cols, start=1):
            if not 1 <= c <= self.dim:
                raise ValueError(f"column {j} index {c} outside [1..{self.dim}]")

    @classmethod
    def identity(cls, n: int) -> LogicMatrix:
        return cls(n, tuple(range(1, n + 1)))

    @classmethod
    def from_dense(cls, a: IntMatrix) -> LogicMatrix:
        cols = []
        for j in range(1, a.cols + 1):
            col = a.col(j).entries
            hits = [i for i, v in enumerate(col, start=1) if v]
            if len(hits) != 1 or col[hits[0] - 1] != 1 or any(v not in (0, 1) for v in col):
                raise ValueError(f"column {j} is not a canonical basis vector")
            cols.append(hits[0])
        return cls(a.rows, tuple(cols))

    @property
    def ncols(self) -> int:
        return len(self.cols)

    def __len__(self):
        return len(self.cols)

    def __getitem__(self, j: int) -> int:
        """Row index of the single 1 in column ``j`` (both 1-based)."""
        if not 1 <= j <= len(self.cols):
            raise IndexError(f"column {j} outside [1..{len(self.cols)}]")
        return self.cols[j - 1]

    def to_dense(self) -> IntMatrix:
        n, c = self.dim, len(self.cols)
        entries = [0] * (n * c)
        for j, i in enumerate(self.cols):
            entries[(i - 1) * c + j] = 1
        return IntMatrix(n, c, tuple(entries))

    def compose(self, other: LogicMatrix) -> LogicMatrix:
        """Ordinary product ``self @ other`` for logic matrices."""
        if len(self.cols) != other.dim:
            raise ValueError(f"cannot compose {self.dim}x{len(self.cols)} with {other.dim}x{len(other.cols)}")
        return LogicMatrix(self.dim, tuple(self.cols[i - 1] for i in other.cols))

    def __str__(self):
        return f"delta_{self.dim}[{','.join(map(str, self.cols))}]"


MatrixLike = Union[IntMatrix, LogicMatrix]


def _dense(a: MatrixLike) -> IntMatrix:
    return a.to_dense() if isinstance(a, LogicMatrix) else a


def kron(a: MatrixLike, b: MatrixLike) -> IntMatrix:
    """Kronecker product ``a (x) b``."""
    a, b = _dense(a), _dense(b)
    ra, ca, rb, cb = a.rows, a.cols, b.rows, b.cols
    out = [0] * (ra * rb * ca * cb)
    width = ca * cb
    for i in range(ra):
        for j in range(ca):
            x = a.entries[i * ca + j]
            if not x:
                continue
            for k in range(rb):
                base = (i * rb + k) * width + j * cb
                brow = b.entries[k * cb:(k + 1) * cb]
                for l, y in enumerate(brow):
                    out[base + l] = x * y
    return IntMatrix(ra * rb, width, tuple(out))


def stp(a: MatrixLike, b: MatrixLike) -> IntMatrix:
    """Left semi-tensor product ``(a (x) I_{t/c_a}) (b (x) I_{t/r_b})`` with ``t = lcm(c_a, r_b)``."""
    a, b = _dense(a), _dense(b)
    t = math.lcm(a.cols, b.rows)
    left = a if t == a.cols else kron(a, IntMatrix.identity(t // a.cols))
    right = b if t == b.rows else kron(b, IntMatrix.identity(t // b.rows))
    return left @ right


def khatri_rao(a: MatrixLike, b: MatrixLike):
    """Column-wise STP.

    Two logic matrices give a logic matrix (column ``j`` has index
    ``(a_j - 1) * b.dim + b_j``); otherwise the dense product is returned.
    """
    if isinstance(a, LogicMatrix) and isinstance(b, LogicMatrix):
        if len(a.cols) != len(b.cols):
            raise ValueError(f"column counts differ: {len(a.cols)} vs {len(b.cols)}")
        p = b.dim
        return LogicMatrix(a.dim * p, tuple((i - 1) * p + k for i, k in zip(a.cols, b.cols)))
    a, b = _dense(a), _dense(b)
    if a.cols != b.cols:
        raise ValueError(f"column counts differ: {a.cols} vs {b.cols}")
    columns = [stp(a.col(j), b.col(j)).entries for j in range(1, a.cols + 1)]
    rows = len(columns[0])
    return IntMatrix(rows, a.cols, tuple(columns[j][i] for i in range(rows) for j in range(a.cols)))


@dataclass(frozen=True)
class LogicValueMap:
    """Bijection between the logic domain ``{0, ..., n-1}`` and basis indices ``[1..n]``.

    Value ``a`` maps to index ``n - a``, so the largest value is ``delta_n^1``.
    """

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"domain size must be positive, got {self.n}")

    def to_index(self, value: int) -> int:
        if not 0 <= value < self.n:
            raise ValueError(f"value {value} outside the {self.n}-valued domain")
        return self.n - value

    def to_value(self, index: int) -> int:
        if not 1 <= index <= self.n:
            raise ValueError(f"index {index} outside [1..{self.n}]")
        return self.n - index

    def vector(self, value: int) -> IntMatrix:
        col = [0] * self.n
        col[self.to_index(value) - 1] = 1
        return IntMatrix.column(col)


def encode_state(values: Sequence[int], domains: Sequence[int]) -> int:
    """Basis index of ``values[0] |x ... |x values[-1]`` (first variable most significant)."""
    if len(values) != len(domains):
        raise ValueError(f"{len(values)} values for {len(domains)} domains")
    index = 0
    for v, d in zip(values, domains):
        index = index * d + LogicValueMap(d).to_index(v) - 1
    return index + 1


def decode_state(index: int, domains: Sequence[int]) -> tuple[int, ...]:
    total = math.prod(domains)
    if not 1 <= index <= total:
        raise ValueError(f"index {index} outside [1..{total}]")
    rest = index - 1
    digits = []
    for d in reversed(domains):
        rest, r = divmod(rest, d)
        digits.append(d - 1 - r)
    return tuple(reversed(digits))


def structural_matrix(
    domains: Sequence[int],
    codomain: int,
    table: Union[Mapping[tuple[int, ...], int], Callable[..., int]],
) -> LogicMatrix:
    """Structural matrix of ``f: D_{n_1} x ... x D_{n_k} -> D_codomain``.

    ``table`` is either a mapping from argument tuples to values or a
    callable taking the ``k`` arguments.  The result ``L_f`` satisfies
    ``L_f |x a_1 |x ... |x a_k = f(a_1, ..., a_k)`` in vector form.
    """
    domains = tuple(int(d) for d in domains)
    if not domains or any(d < 1 for d in domains):
        raise ValueError(f"invalid domain sizes {domains}")
    out = LogicValueMap(codomain)
    lookup = table if callable(table) else None
    cols = []
    for args in _arguments_in_column_order(domains):
        if lookup is not None:
            value = lookup(*args)
        else:
            try:
                value = table[args]
            except KeyError:
                raise ValueError(f"table has no entry for arguments {args}") from None
        if isinstance(value, bool):
            value = int(value)
        try:
            cols.append(out.to_index(value))
        except (ValueError, TypeError):
            raise ValueError(f"f{args} = {value!r} is outside the {codomain}-valued codomain") from None
    return LogicMatrix(codomain, tuple(cols))


def _arguments_in_column_order(domains: Sequence[int]) -> Iterable[tuple[int, ...]]:
    # column 1 is every argument at its largest value
    return itertools.product(*(range(d - 1, -1, -1) for d in domains))
