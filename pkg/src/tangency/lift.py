"""Jet lifts of plane curves.

Implicitly differentiating f(x, y(x)) = 0 once per order gives the system
f = P_0, P_1 = D(f), ..., P_k = D(P_{k-1}) in the variables x, y, z_1..z_k,
where D is the total derivative. Each P_j is linear in z_j with coefficient
f_y, so at a smooth point without vertical tangent the jet is found by
solving one linear equation per order.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import List, Sequence, Tuple

from .algebra import MultiPoly, UniPoly
from .algebra.field import Scalar
from .curves import PlaneCurve, PlanePoint, points_on_curve, rational_points
from .errors import (
    ArityMismatch,
    CharacteristicTooSmall,
    InsufficientPoints,
    PointNotOnCurve,
    SingularPoint,
    TangencyError,
    VerticalLine,
    VerticalTangent,
)


@dataclass(frozen=True)
class Jet:
    base: PlanePoint
    derivatives: Tuple[Scalar, ...]

    @property
    def k(self) -> int:
        return len(self.derivatives)

    def coordinates(self) -> Tuple[Scalar, ...]:
        return (self.base.x, self.base.y) + tuple(self.derivatives)

    def truncate(self, k: int) -> "Jet":
        return Jet(self.base, self.derivatives[:k])


def total_derivative(Q: MultiPoly, k: int = None) -> MultiPoly:
    """D(Q) = Q_x + z_1 Q_y + sum_i z_{i+1} Q_{z_i} in the ring of ``Q``.

    ``Q`` must not involve the top variable z_k, whose derivative would
    need z_{k+1}.
    """
    n = Q.nvars
    if k is not None and n != k + 2:
        raise ArityMismatch(f"polynomial has {n} variables, expected {k + 2}")
    if n > 2 and Q.involves(n - 1):
        raise ArityMismatch("cannot prolong a polynomial that involves the top jet variable")
    F = Q.field
    out = Q.diff(0)
    if n == 2:
        if Q.involves(1):
            raise ArityMismatch("differentiating in y needs a jet variable z_1")
        return out
    for i in range(1, n - 1):
        d = Q.diff(i)
        if d:
            out = out + d * MultiPoly.var(F, n, i + 1)
    return out


@dataclass(frozen=True)
class LiftSystem:
    curve: PlaneCurve
    k: int
    generators: Tuple[MultiPoly, ...]

    @property
    def nvars(self) -> int:
        return self.k + 2

    def residuals(self, coords: Sequence[Scalar]) -> List[Scalar]:
        return [g.evaluate(coords) for g in self.generators]

    def to_json(self) -> dict:
        return {
            "curve": self.curve.label,
            "k": self.k,
            "generators": [g.to_json() for g in self.generators],
        }


def is_vertical_line(curve: PlaneCurve) -> bool:
    return not curve.poly.involves(1)


@lru_cache(maxsize=8192)
def build_lift_system(curve: PlaneCurve, k: int) -> LiftSystem:
    if k < 1:
        raise TangencyError(f"jet order must be at least 1, got {k}")
    if is_vertical_line(curve):
        raise VerticalLine(f"{curve.label or curve.poly} is a union of vertical lines")
    n = k + 2
    f = curve.poly.with_nvars(n)
    fy = curve.fy.with_nvars(n)
    gens = [f]
    for j in range(1, k + 1):
        # P_{j-1} only involves z_1..z_{j-1}, so prolong in the smallest ring
        prev = gens[-1].with_nvars(j + 2)
        gens.append(total_derivative(prev).with_nvars(n))
        if gens[j].diff(1 + j) != fy:
            raise ArithmeticError(f"P_{j} is not linear in z_{j} with coefficient f_y")
    return LiftSystem(curve, k, tuple(gens))


def _check_jet_point(curve: PlaneCurve, p, k: int):
    F = curve.field
    if F.is_prime_field and F.p <= k:
        raise CharacteristicTooSmall(f"jets of order {k} need p > {k}, got p={F.p}")
    px, py = p
    pt = (F.norm(px), F.norm(py))
    name = curve.label or str(curve.poly)
    if curve.poly.evaluate(pt):
        raise PointNotOnCurve(f"point {tuple(F.format(v) for v in pt)} is not on {name}")
    fy = curve.fy.evaluate(pt)
    if not fy:
        if not curve.fx.evaluate(pt):
            raise SingularPoint(f"{name} is singular at {tuple(F.format(v) for v in pt)}")
        raise VerticalTangent(f"{name} has a vertical tangent at {tuple(F.format(v) for v in pt)}")
    return pt, fy


def jet_at(curve: PlaneCurve, p, k: int) -> Jet:
    """The unique k-jet of ``curve`` over the point ``p``, by sequential solve."""
    (x, y), fy = _check_jet_point(curve, p, k)
    F = curve.field
    system = build_lift_system(curve, k)
    coords = [x, y] + [0] * k
    for j in range(1, k + 1):
        coords[1 + j] = 0
        r = system.generators[j].evaluate(coords)
        coords[1 + j] = F.div(F.neg(r), fy)
    return Jet(PlanePoint(x, y), tuple(coords[2:]))


def _series_div(a: UniPoly, b: UniPoly, n: int) -> UniPoly:
    """a / b modulo t^n, for b(0) != 0."""
    F = a.field
    inv0 = F.inv(b[0])
    out = []
    rem = [a[i] for i in range(n)]
    for i in range(n):
        c = F.norm(rem[i] * inv0)
        out.append(c)
        if c:
            for j in range(1, n - i):
                bj = b[j]
                if bj:
                    rem[i + j] = F.norm(rem[i + j] - c * bj)
    return UniPoly(F, out)


def jet_by_power_series(curve: PlaneCurve, p, k: int) -> Jet:
    """The k-jet from the local expansion y = y0 + c_1 s + ... + c_k s^k.

    Newton's iteration on truncated power series solves
    f(x0 + s, c(s)) = 0 mod s^{k+1}, doubling precision each step;
    the jet coordinates are z_j = j! c_j.
    """
    (x, y), _ = _check_jet_point(curve, p, k)
    F = curve.field
    f, fy = curve.poly, curve.fy
    X = UniPoly(F, [x, 1])
    C = UniPoly(F, [y])
    prec = 1
    while prec < k + 1:
        prec = min(2 * prec, k + 1)
        val = f.substitute_univariate([X, C]).truncate(prec)
        der = fy.substitute_univariate([X, C]).truncate(prec)
        C = (C - _series_div(val, der, prec)).truncate(prec)
    return Jet(PlanePoint(x, y), tuple(F.norm(F.factorial(j) * C[j]) for j in range(1, k + 1)))


def graph_jet(g: UniPoly, x, k: int) -> Jet:
    """(g(x), g'(x), ..., g^(k)(x)) by differentiating g directly."""
    vals = []
    d = g
    y = g(x)
    for _ in range(k):
        d = d.derivative()
        vals.append(d(x))
    return Jet(PlanePoint(g.field.norm(x), y), tuple(vals))


def sample_lift_points(curve: PlaneCurve, k: int, count: int, seed: int = 0, skip: int = 0) -> List[Jet]:
    """``count`` distinct jets on the lift of ``curve``.

    Graphs are swept deterministically at x = 0, 1, 2, ... (starting after
    ``skip`` points). General curves scan base-field points and keep the
    smooth non-vertical ones; over F_p ``seed`` shuffles that scan, over Q
    points are taken in order of increasing height of x.
    """
    F = curve.field
    if F.is_prime_field and F.p <= k:
        raise CharacteristicTooSmall(f"jets of order {k} need p > {k}, got p={F.p}")
    need = skip + count
    g = curve.graph
    if g is not None:
        if F.is_prime_field and need > F.p:
            raise InsufficientPoints(
                f"{curve.label or curve.poly}: only {F.p} points available, need {need}", F.p
            )
        return [graph_jet(g, x, k) for x in range(skip, need)]
    if F.is_prime_field:
        pts = sorted(points_on_curve(curve), key=PlanePoint.sort_key)
        random.Random(seed).shuffle(pts)
        pts = [q for q in pts if curve.fy.evaluate(tuple(q))]
    else:
        pts = _rational_smooth_points(curve, need)
    if len(pts) < need:
        raise InsufficientPoints(
            f"{curve.label or curve.poly}: found {len(pts)} usable points, need {need}", len(pts)
        )
    return [jet_at(curve, q, k) for q in pts[skip:need]]


def _rational_smooth_points(curve: PlaneCurve, need: int, max_height: int = 64) -> List[PlanePoint]:
    h = 4
    while True:
        pts = [q for q in rational_points(curve, h) if curve.fy.evaluate(tuple(q))]
        if len(pts) >= need or h >= max_height:
            return pts
        h *= 2


def lift_degree_bound(curve: PlaneCurve, k: int) -> int:
    """An upper bound on the degree of the lift, for Bezout certificates.

    For graphs y = g(x) the lift is (t, g, g', ...), of degree max(deg g, 1).
    Otherwise the product of the degrees of f, P_1, ..., P_k.
    """
    g = curve.graph
    if g is not None:
        return max(g.degree, 1)
    system = build_lift_system(curve, k)
    return prod(max(gen.total_degree, 1) for gen in system.generators)
