"""Stability deciders under arbitrary switching, pattern ratios and the random-switching matrix.

The deciders are exact and graph based:

* robust: no state outside ``M`` lies on a loop;
* uniform robust: nothing outside ``M`` is reachable from a state on a loop;
* asymptotic with ratio one: ``I(M)`` is non-empty and every state has a
  path into it (``I(M)`` is the largest robustly invariant subset of ``M``);
* finite-time with ratio one: same verdict as uniform robust, additionally
  checked against "no loops outside ``I(M)``".

The pattern ratios (fraction of length-``k`` signals ending in ``M``) are
computed exactly and serve as diagnostics only.
"""

from __future__ import annotations

import enum
import json
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .invariant import lris
from .model import Lds
from .reach import (
    Edge,
    find_path,
    find_path_to_set,
    reachability_matrix_bool,
    self_reachable_set,
)
from .sets import StateSet

__all__ = [
    "InconsistencyError",
    "WitnessKind",
    "Witness",
    "Verdict",
    "RatioVector",
    "StabilityReport",
    "is_robustly_stable",
    "is_uniformly_robustly_stable",
    "is_asymptotically_ratio_one",
    "is_finite_time_ratio_one",
    "ratio",
    "ratio_vector",
    "ratio_series",
    "saturation_step",
    "finite_time_horizon",
    "pls_tpm",
    "parse_pdv",
    "validate_pdv",
    "analyze",
]


class InconsistencyError(RuntimeError):
    """Two criteria that must agree gave different answers."""


class WitnessKind(str, enum.Enum):
    SELF_REACHABLE_IN_COMPLEMENT = "self-reachable-in-complement"
    COMPLEMENT_REACHABLE_FROM_C0 = "complement-reachable-from-C0"
    NO_PATH_TO_LRIS = "no-path-to-lris"


@dataclass(frozen=True)
class Witness:
    kind: WitnessKind
    states: tuple[int, ...]
    path: Optional[tuple[Edge, ...]] = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "states": list(self.states),
            "path": None if self.path is None else [list(e) for e in self.path],
        }

    @classmethod
    def from_dict(cls, d: dict) -> Witness:
        path = d.get("path")
        return cls(
            WitnessKind(d["kind"]),
            tuple(d["states"]),
            None if path is None else tuple(Edge(*e) for e in path),
        )

    def describe(self, set_name: str = "the target") -> str:
        route = ""
        if self.path:
            steps = [str(self.path[0].source)] + [f"-{e.subnetwork}-> {e.target}" for e in self.path]
            route = " via " + " ".join(steps)
        if self.kind is WitnessKind.SELF_REACHABLE_IN_COMPLEMENT:
            return f"state {self.states[0]} outside {set_name} lies on a loop{route}"
        if self.kind is WitnessKind.COMPLEMENT_REACHABLE_FROM_C0:
            j, i = self.states
            return f"state {i} outside {set_name} is reachable from self-reachable state {j}{route}"
        return f"state {self.states[0]} has no path into the invariant subset"


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[Witness] = None

    def __bool__(self):
        return self.holds


def _check_target(lds: Lds, target: StateSet):
    if target.n != lds.n:
        raise ValueError(f"target set is over [1..{target.n}], system has {lds.n} states")


def is_robustly_stable(lds: Lds, target: StateSet) -> Verdict:
    """Every solution eventually stays in ``target``; fails iff some state outside it is self-reachable."""
    _check_target(lds, target)
    offenders = (self_reachable_set(lds) - target).sorted()
    if not offenders:
        return Verdict(True)
    i = offenders[0]
    return Verdict(False, Witness(WitnessKind.SELF_REACHABLE_IN_COMPLEMENT, (i,), find_path(lds, i, i)))


def is_uniformly_robustly_stable(lds: Lds, target: StateSet) -> Verdict:
    _check_target(lds, target)
    r = reachability_matrix_bool(lds)
    outside = target.complement()
    out_bits = sum(1 << (i - 1) for i in outside)
    for j in self_reachable_set(lds):
        if r.columns[j - 1] & out_bits:
            path = find_path_to_set(lds, j, outside)
            return Verdict(False, Witness(WitnessKind.COMPLEMENT_REACHABLE_FROM_C0, (j, path[-1].target), path))
    return Verdict(True)


def is_asymptotically_ratio_one(lds: Lds, target: StateSet) -> Verdict:
    """``I(target)`` is non-empty and reachable from every state (members count as reaching it)."""
    _check_target(lds, target)
    inv = lris(lds, target)
    if not inv:
        return Verdict(False, Witness(WitnessKind.NO_PATH_TO_LRIS, (1,)))
    r = reachability_matrix_bool(lds)
    inv_bits = sum(1 << (i - 1) for i in inv)
    for x in range(1, lds.n + 1):
        if x not in inv and not r.columns[x - 1] & inv_bits:
            return Verdict(False, Witness(WitnessKind.NO_PATH_TO_LRIS, (x,)))
    return Verdict(True)


def is_finite_time_ratio_one(lds: Lds, target: StateSet) -> Verdict:
    verdict = is_uniformly_robustly_stable(lds, target)
    inv = lris(lds, target)
    no_outside_loops = not (self_reachable_set(lds) - inv)
    if verdict.holds != no_outside_loops:
        raise InconsistencyError(
            f"uniform-robust criterion says {verdict.holds}, "
            f"no-loops-outside-I(M) criterion says {no_outside_loops}"
        )
    return verdict


@dataclass(frozen=True)
class RatioVector:
    """Fraction of the ``m**k`` length-``k`` signals that end in the target, per initial state."""

    k: int
    values: tuple[Fraction, ...]

    def __getitem__(self, x0: int) -> Fraction:
        return self.values[x0 - 1]

    def all_one(self) -> bool:
        return all(v == 1 for v in self.values)


def ratio_series(lds: Lds, target: StateSet, kmax: Optional[int] = None) -> Iterator[RatioVector]:
    """Ratio vectors for ``k = 1, 2, ...`` (up to ``kmax`` if given).

    Propagates the target indicator backwards: after ``k`` rounds entry
    ``x`` holds the number of length-``k`` signals from ``x`` that end in the
    target, which is ``beta_M^T Q**k``.
    """
    _check_target(lds, target)
    n, m, table = lds.n, lds.m, lds.table
    counts = [int(x in target) for x in range(1, n + 1)]
    k = 0
    scale = 1
    while kmax is None or k < kmax:
        counts = [sum(counts[table[l * n + x]] for l in range(m)) for x in range(n)]
        k += 1
        scale *= m
        yield RatioVector(k, tuple(Fraction(c, scale) for c in counts))


def ratio_vector(lds: Lds, target: StateSet, k: int) -> RatioVector:
    if k < 1:
        raise ValueError("k must be >= 1")
    for vec in ratio_series(lds, target, k):
        pass
    return vec


def ratio(lds: Lds, x0: int, target: StateSet, k: int) -> Fraction:
    if not 1 <= x0 <= lds.n:
        raise ValueError(f"state {x0} outside [1..{lds.n}]")
    return ratio_vector(lds, target, k)[x0]


def saturation_step(lds: Lds, target: StateSet, kmax: int) -> Optional[int]:
    """First ``k <= kmax`` at which every initial state has ratio exactly one."""
    for vec in ratio_series(lds, target, kmax):
        if vec.all_one():
            return vec.k
    return None


def finite_time_horizon(lds: Lds, target: StateSet) -> Optional[int]:
    """Smallest ``K`` with ratio one for every state and every ``k >= K``; ``None`` if there is none.

    The invariant subset ``I(M)`` saturates within ``n`` steps when the
    system is uniformly stable and stays saturated, so scanning the target's
    own ratios backwards from that point gives the exact ``K``.
    """
    if not is_uniformly_robustly_stable(lds, target).holds:
        return None
    inv = lris(lds, target)
    k_inv = saturation_step(lds, inv, lds.n + 1)
    if k_inv is None:
        raise InconsistencyError("uniformly stable system whose invariant subset never saturates")
    ones = [vec.all_one() for vec in ratio_series(lds, target, k_inv)]
    k = k_inv
    while k > 1 and ones[k - 2]:
        k -= 1
    return k


def parse_pdv(values: Sequence) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(v) for v in values)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid probability vector {values!r}: {exc}") from None


def validate_pdv(lds: Lds, pdv: Sequence) -> tuple[Fraction, ...]:
    pdv = parse_pdv(pdv)
    if len(pdv) != lds.m:
        raise ValueError(f"probability vector has {len(pdv)} entries, system has {lds.m} subnetworks")
    if any(p <= 0 for p in pdv):
        raise ValueError("switching probabilities must be strictly positive")
    if sum(pdv) != 1:
        raise ValueError(f"switching probabilities sum to {sum(pdv)}, not 1")
    return pdv


def pls_tpm(lds: Lds, pdv: Sequence) -> tuple[tuple[Fraction, ...], ...]:
    """Transition matrix ``sum_j p_j L_j`` of the system under i.i.d. switching (columns sum to one)."""
    pdv = validate_pdv(lds, pdv)
    n = lds.n
    out = [[Fraction(0)] * n for _ in range(n)]
    for p, mp in zip(pdv, lds.maps):
        for j, i in enumerate(mp.cols):
            out[i - 1][j] += p
    return tuple(tuple(row) for row in out)


@dataclass(frozen=True)
class StabilityReport:
    target: StateSet
    robust: Verdict
    uniform: Verdict
    asymptotic_ratio_one: Verdict
    finite_time_ratio_one: Verdict
    self_reachable: StateSet
    lris: StateSet
    robust_wrt_lris: Verdict
    consistency: dict = field(default_factory=dict)

    VERDICTS = ("robust", "uniform", "asymptotic_ratio_one", "finite_time_ratio_one", "robust_wrt_lris")

    @property
    def consistent(self) -> bool:
        return all(self.consistency.values())

    def to_dict(self) -> dict:
        witnesses = {}
        for name in self.VERDICTS:
            v = getattr(self, name)
            if v.witness is not None:
                witnesses[name] = v.witness.to_dict()
        return {
            "robust": self.robust.holds,
            "uniform": self.uniform.holds,
            "asymptotic_ratio_one": self.asymptotic_ratio_one.holds,
            "finite_time_ratio_one": self.finite_time_ratio_one.holds,
            "self_reachable": self.self_reachable.sorted(),
            "lris": self.lris.sorted(),
            "robust_wrt_lris": self.robust_wrt_lris.holds,
            "witnesses": witnesses,
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict, target: StateSet) -> StabilityReport:
        n = target.n
        wit = d.get("witnesses", {})

        def verdict(name):
            w = wit.get(name)
            return Verdict(bool(d[name]), None if w is None else Witness.from_dict(w))

        report = cls(
            target,
            verdict("robust"),
            verdict("uniform"),
            verdict("asymptotic_ratio_one"),
            verdict("finite_time_ratio_one"),
            StateSet(n, d["self_reachable"]),
            StateSet(n, d["lris"]),
            verdict("robust_wrt_lris"),
        )
        object.__setattr__(report, "consistency", _consistency(report))
        return report

    def render_text(self) -> str:
        def line(label, verdict, criterion, set_name="M"):
            status = "yes" if verdict.holds else "no"
            text = f"{label}: {status}  [{criterion}]"
            if verdict.witness is not None:
                text += f"\n    {verdict.witness.describe(set_name)}"
            return text

        lines = [
            f"target M = {self.target}",
            f"self-reachable states C0 = {self.self_reachable}",
            f"largest robustly invariant subset I(M) = {self.lris}",
            line("robust", self.robust, "no loop outside M"),
            line("uniform", self.uniform, "nothing outside M reachable from C0"),
            line("asymptotic ratio one", self.asymptotic_ratio_one, "I(M) nonempty and reachable from every state"),
            line("finite-time ratio one", self.finite_time_ratio_one, "uniform criterion, cross-checked: no loop outside I(M)"),
            line("robust w.r.t. I(M)", self.robust_wrt_lris, "no loop outside I(M)", "I(M)"),
        ]
        bad = [k for k, ok in self.consistency.items() if not ok]
        lines.append("implication checks: " + ("all consistent" if not bad else "VIOLATED " + ", ".join(bad)))
        return "\n".join(lines)


def _consistency(r: StabilityReport) -> dict:
    u, rb, a, f, rl = (r.uniform.holds, r.robust.holds, r.asymptotic_ratio_one.holds,
                       r.finite_time_ratio_one.holds, r.robust_wrt_lris.holds)
    return {
        "uniform_implies_robust": (not u) or rb,
        "robust_implies_asymptotic": (not rb) or a,
        "uniform_iff_finite_time": u == f,
        "uniform_iff_robust_wrt_lris": u == rl,
    }


def analyze(lds: Lds, target: StateSet) -> StabilityReport:
    _check_target(lds, target)
    inv = lris(lds, target)
    report = StabilityReport(
        target=target,
        robust=is_robustly_stable(lds, target),
        uniform=is_uniformly_robustly_stable(lds, target),
        asymptotic_ratio_one=is_asymptotically_ratio_one(lds, target),
        finite_time_ratio_one=is_finite_time_ratio_one(lds, target),
        self_reachable=self_reachable_set(lds),
        lris=inv,
        robust_wrt_lris=is_robustly_stable(lds, inv),
    )
    object.__setattr__(report, "consistency", _consistency(report))
    return report
