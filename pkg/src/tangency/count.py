"""Tangency orders, intersection points and arrangement-level counts.

Two curves are tangent to order >= k at a common point when their k-jets
there coincide: same point, same first k derivatives of the local graph.
A point is only counted for curves that are smooth with a non-vertical
tangent there; other incidences are logged as exclusions.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from .algebra import Field
from .algebra.bivariate import bivariate_gcd, common_zeros
from .curves import PlaneCurve, PlanePoint, points_on_curve
from .errors import (
    CharacteristicTooSmall,
    CommonComponent,
    DuplicateCurve,
    FieldMismatch,
    PointNotOnBoth,
    SingularPoint,
    TangencyError,
    VerticalTangent,
)
from .lift import jet_at


class _SameToCutoff:
    """Returned by :func:`tangency_order_at` when the jets agree up to the cutoff."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "SAME_TO_CUTOFF"

    def __reduce__(self):
        return (_SameToCutoff, ())


SAME_TO_CUTOFF = _SameToCutoff()


@dataclass(frozen=True)
class Arrangement:
    field: Field
    k: int
    curves: Tuple[PlaneCurve, ...]

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))
        if self.k < 1:
            raise TangencyError(f"tangency order must be at least 1, got {self.k}")
        seen_labels = set()
        seen_polys: Dict = {}
        for c in self.curves:
            if c.field != self.field:
                raise FieldMismatch(f"curve {c.label!r} is over {c.field}, arrangement over {self.field}")
            if c.label in seen_labels:
                raise DuplicateCurve(f"label {c.label!r} is used twice")
            seen_labels.add(c.label)
            key = c.poly.monic()
            if key in seen_polys:
                raise DuplicateCurve(
                    f"curves {seen_polys[key]!r} and {c.label!r} are scalar multiples"
                )
            seen_polys[key] = c.label

    def __len__(self):
        return len(self.curves)

    def with_k(self, k: int) -> "Arrangement":
        return Arrangement(self.field, k, self.curves)

    def subset(self, curves: Sequence[PlaneCurve]) -> "Arrangement":
        return Arrangement(self.field, self.k, tuple(curves))


@dataclass
class TangencyRecord:
    point: PlanePoint
    participants: Tuple[str, ...]
    excluded: Tuple[Tuple[str, str], ...] = ()


@dataclass
class CountReport:
    total: int
    records: List[TangencyRecord]
    n: int
    k: int
    field: Field
    exclusions_summary: Dict[str, int] = dc_field(default_factory=lambda: {"singular": 0, "vertical": 0})
    exclusion_records: List[TangencyRecord] = dc_field(default_factory=list)

    @property
    def bound_value(self) -> float:
        """n^((k+2)/(k+1)); a float, for reference only."""
        return float(self.n) ** ((self.k + 2) / (self.k + 1)) if self.n else 0.0

    def m_at(self, point) -> int:
        for r in self.records:
            if tuple(r.point) == tuple(point):
                return len(r.participants)
        return 0

    def participation(self) -> Dict[str, int]:
        """Number of tangency points each curve takes part in."""
        out: Dict[str, int] = defaultdict(int)
        for r in self.records:
            for lab in r.participants:
                out[lab] += 1
        return dict(out)


# -- pairwise ---------------------------------------------------------------
def tangency_order_at(a: PlaneCurve, b: PlaneCurve, p, k_max: int) -> Union[int, _SameToCutoff]:
    """Largest k' <= k_max for which the k'-jets at ``p`` agree.

    Returns 0 when the curves merely meet, and SAME_TO_CUTOFF when the jets
    agree through order ``k_max``.
    """
    F = a.field
    if b.field != F:
        raise FieldMismatch(f"field mismatch: {a.field} vs {b.field}")
    if F.is_prime_field and k_max >= F.p:
        raise CharacteristicTooSmall(f"order {k_max} needs p > {k_max}, got p={F.p}")
    px, py = p
    pt = (F.norm(px), F.norm(py))
    if not a.contains(pt) or not b.contains(pt):
        raise PointNotOnBoth(
            f"point {tuple(F.format(v) for v in pt)} is not on both {a.label!r} and {b.label!r}"
        )
    ja = jet_at(a, pt, k_max).derivatives
    jb = jet_at(b, pt, k_max).derivatives
    for j in range(k_max):
        if ja[j] != jb[j]:
            return j
    return SAME_TO_CUTOFF


def is_tangent(a: PlaneCurve, b: PlaneCurve, p, k: int) -> bool:
    return tangency_order_at(a, b, p, k) is SAME_TO_CUTOFF


def intersection_points(a: PlaneCurve, b: PlaneCurve) -> Set[PlanePoint]:
    """All base-field points on both curves (rational points only over Q)."""
    if a.field != b.field:
        raise FieldMismatch(f"field mismatch: {a.field} vs {b.field}")
    if bivariate_gcd(a.poly, b.poly).total_degree > 0:
        raise CommonComponent(f"curves {a.label!r} and {b.label!r} share a component")
    F = a.field
    if F.is_prime_field:
        return points_on_curve(a) & points_on_curve(b)
    return {PlanePoint(x, y) for x, y in common_zeros([a.poly, b.poly])}


# -- arrangement counts ----------------------------------------------------
def _classify(curve: PlaneCurve, pt) -> Optional[str]:
    if curve.fy.evaluate(pt):
        return None
    return "vertical" if curve.fx.evaluate(pt) else "singular"


def _incidences(arr: Arrangement) -> Dict[PlanePoint, List[PlaneCurve]]:
    incident: Dict[PlanePoint, List[PlaneCurve]] = defaultdict(list)
    if arr.field.is_prime_field:
        for c in arr.curves:
            for q in points_on_curve(c):
                incident[q].append(c)
        return incident
    members: Dict[PlanePoint, Set[int]] = defaultdict(set)
    for (i, a), (j, b) in combinations(enumerate(arr.curves), 2):
        for q in intersection_points(a, b):
            members[q].update((i, j))
    for q, idx in members.items():
        incident[q] = [arr.curves[i] for i in sorted(idx)]
    return incident


def count_tangencies(arr: Arrangement) -> CountReport:
    """Sum over points p of m_{k,C}(p), with per-point records.

    Curves meeting at a point are grouped by their k-jet there; a curve
    participates when its group has another member.
    """
    k = arr.k
    F = arr.field
    if F.is_prime_field and F.p <= k:
        raise CharacteristicTooSmall(f"order {k} needs p > {k}, got p={F.p}")
    incident = _incidences(arr)
    records: List[TangencyRecord] = []
    exclusion_records: List[TangencyRecord] = []
    summary = {"singular": 0, "vertical": 0}
    total = 0
    for q in sorted(incident, key=PlanePoint.sort_key):
        curves = incident[q]
        if len(curves) < 2:
            continue
        pt = (q.x, q.y)
        groups: Dict[tuple, List[str]] = defaultdict(list)
        excluded = []
        for c in curves:
            reason = _classify(c, pt)
            if reason:
                excluded.append((c.label, reason))
                summary[reason] += 1
                continue
            groups[jet_at(c, pt, k).derivatives].append(c.label)
        participants = sorted(lab for g in groups.values() if len(g) > 1 for lab in g)
        if participants:
            records.append(TangencyRecord(q, tuple(participants), tuple(excluded)))
            total += len(participants)
        elif excluded:
            exclusion_records.append(TangencyRecord(q, (), tuple(excluded)))
    return CountReport(total, records, len(arr.curves), k, F, summary, exclusion_records)


def rich_curves(report: CountReport, threshold: int = 1) -> List[Tuple[str, int]]:
    """Curves with at least ``threshold`` tangency points, most first."""
    rows = [(lab, n) for lab, n in report.participation().items() if n >= threshold]
    return sorted(rows, key=lambda t: (-t[1], t[0]))


# -- bound scans -----------------------------------------------------------
@dataclass
class ScanRow:
    n: int
    total: int
    reference: float
    ratio: float
    p: Optional[int] = None


@dataclass
class BoundScan:
    k: int
    rows: List[ScanRow]
    exponent: Optional[float]
    intercept: Optional[float]
    generator: str
    seed: int

    @property
    def target_exponent(self) -> float:
        return (self.k + 2) / (self.k + 1)


def fit_power_law(ns: Sequence[int], totals: Sequence[int]) -> Tuple[Optional[float], Optional[float]]:
    """Least-squares fit of log(total) = a log(n) + b over rows with total > 0."""
    pts = [(math.log(n), math.log(t)) for n, t in zip(ns, totals) if n > 0 and t > 0]
    if len(pts) < 2 or len({x for x, _ in pts}) < 2:
        return None, None
    xs, ys = np.array(pts).T
    a, b = np.polyfit(xs, ys, 1)
    return float(a), float(b)


def bound_scan(
    generator: Callable[[int, int], Arrangement],
    n_values: Sequence[int],
    k: int,
    seed: int = 0,
    name: str = "custom",
) -> BoundScan:
    """Count tangencies on ``generator(n, seed)`` for each n and fit the growth exponent."""
    rows = []
    for n in n_values:
        arr = generator(n, seed).with_k(k)
        rep = count_tangencies(arr)
        ref = float(n) ** ((k + 2) / (k + 1)) if n else 0.0
        rows.append(
            ScanRow(len(arr), rep.total, ref, rep.total / ref if ref else 0.0, arr.field.p)
        )
    a, b = fit_power_law([r.n for r in rows], [r.total for r in rows])
    return BoundScan(k, rows, a, b, name, seed)
