"""Plane algebraic curves: validation, smoothness, vertical tangents, points.

Irreducibility is not tested for general input; graphs ``y = g(x)`` are
irreducible by construction and every other curve carries the caller's
``irreducible_asserted`` flag. Over Q only rational points are ever found.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import List, Optional, Set, Tuple

from .algebra import Field, MultiPoly, UniPoly
from .algebra.bivariate import bivariate_gcd, common_zeros, slice_at_x, to_yx
from .algebra.field import Scalar
from .algebra.univariate import roots_in_field
from .errors import (
    ArityMismatch,
    CharacteristicTooSmall,
    ConstantPolynomial,
    NotSquareFree,
    PointNotOnCurve,
    SingularPoint,
    WrongField,
    ZeroPolynomial,
)


@dataclass(frozen=True)
class PlanePoint:
    x: Scalar
    y: Scalar

    def __iter__(self):
        return iter((self.x, self.y))

    def sort_key(self):
        return (self.x, self.y)


@dataclass(frozen=True, eq=False)
class PlaneCurve:
    """Zero set of a square-free bivariate polynomial.

    Build with :func:`new_curve` or :func:`graph_of`, which validate;
    the constructor itself trusts its input.
    """

    poly: MultiPoly
    label: str = ""
    irreducible_asserted: bool = False
    _graph: Optional[UniPoly] = dc_field(default=None, repr=False, compare=False)

    def __eq__(self, other):
        if not isinstance(other, PlaneCurve):
            return NotImplemented
        return self.poly == other.poly and self.label == other.label

    def __hash__(self):
        return hash((self.poly, self.label))

    @property
    def field(self) -> Field:
        return self.poly.field

    @property
    def degree(self) -> int:
        return self.poly.total_degree

    @cached_property
    def fx(self) -> MultiPoly:
        return self.poly.diff(0)

    @cached_property
    def fy(self) -> MultiPoly:
        return self.poly.diff(1)

    @cached_property
    def graph(self) -> Optional[UniPoly]:
        """``g`` when the curve is ``c*y - c*g(x)`` for a constant c, else None."""
        if self._graph is not None:
            return self._graph
        f = self.poly
        if f.degree_in(1) != 1:
            return None
        coeffs = to_yx(f)
        c1 = coeffs[1]
        if c1.degree != 0:
            return None
        return -coeffs[0] * self.field.inv(c1.lc)

    @property
    def is_graph(self) -> bool:
        return self.graph is not None

    @property
    def irreducible(self) -> bool:
        return self.is_graph or self.irreducible_asserted

    def __call__(self, x, y) -> Scalar:
        return self.poly.evaluate((x, y))

    def contains(self, p) -> bool:
        return not self.poly.evaluate(tuple(p))

    def __str__(self):
        return f"{self.label or '<curve>'}: {self.poly} = 0"


def _as_plane(f: MultiPoly) -> MultiPoly:
    if f.nvars == 2:
        return f
    if f.nvars < 2:
        raise ArityMismatch("a plane curve needs variables x and y")
    return f.with_nvars(2)


def is_square_free(f: MultiPoly) -> bool:
    """gcd(f, f_x, f_y) is constant; sound in characteristic 0 or p > deg f."""
    g = bivariate_gcd(f, f.diff(0))
    if g.total_degree <= 0:
        return True
    return bivariate_gcd(g, f.diff(1)).total_degree <= 0


def new_curve(f: MultiPoly, label: str = "", irreducible_asserted: bool = False) -> PlaneCurve:
    if not f:
        raise ZeroPolynomial(f"curve {label!r}: defining polynomial is zero")
    f = _as_plane(f)
    if f.is_constant():
        raise ConstantPolynomial(f"curve {label!r}: a constant polynomial is not a curve")
    F = f.field
    if F.is_prime_field and F.p <= f.total_degree:
        raise CharacteristicTooSmall(
            f"curve {label!r}: need p > degree, got p={F.p}, degree={f.total_degree}"
        )
    if not is_square_free(f):
        raise NotSquareFree(f"curve {label!r}: {f} has a repeated factor")
    return PlaneCurve(f, label, irreducible_asserted)


def graph_of(g: UniPoly, label: str = "") -> PlaneCurve:
    """The curve y = g(x); always square-free and irreducible."""
    F = g.field
    f = MultiPoly.var(F, 2, 1) - MultiPoly.from_univariate(g, 2, 0)
    return PlaneCurve(f, label, True, g)


def _require_on(curve: PlaneCurve, p) -> None:
    if not curve.contains(p):
        x, y = p
        raise PointNotOnCurve(
            f"point ({curve.field.format(x)}, {curve.field.format(y)}) is not on {curve.label or curve.poly}"
        )


def is_smooth_at(curve: PlaneCurve, p) -> bool:
    _require_on(curve, p)
    pt = tuple(p)
    return bool(curve.fx.evaluate(pt)) or bool(curve.fy.evaluate(pt))


def has_vertical_tangent_at(curve: PlaneCurve, p) -> bool:
    if not is_smooth_at(curve, p):
        raise SingularPoint(f"{curve.label or curve.poly} is singular at {tuple(p)}")
    return not curve.fy.evaluate(tuple(p))


def singular_points(curve: PlaneCurve) -> Set[PlanePoint]:
    """Base-field points where f, f_x and f_y all vanish."""
    f = curve.poly
    if curve.is_graph:
        return set()
    F = curve.field
    if F.is_prime_field:
        out = set()
        for pt in points_on_curve(curve):
            if not curve.fx.evaluate(tuple(pt)) and not curve.fy.evaluate(tuple(pt)):
                out.add(pt)
        return out
    return {PlanePoint(x, y) for x, y in common_zeros([f, curve.fx, curve.fy])}


def points_on_curve(curve: PlaneCurve) -> Set[PlanePoint]:
    """Every point of F_p^2 on the curve, one x-slice at a time."""
    F = curve.field
    if not F.is_prime_field:
        raise WrongField("point enumeration needs a prime field")
    g = curve.graph
    if g is not None:
        return {PlanePoint(x, g(x)) for x in range(F.p)}
    coeffs = to_yx(curve.poly)
    out = set()
    for x in range(F.p):
        s = UniPoly(F, [c(x) for c in coeffs])
        if not s:
            out.update(PlanePoint(x, y) for y in range(F.p))
        elif s.degree > 0:
            out.update(PlanePoint(x, y) for y in roots_in_field(s))
    return out


def rational_points(curve: PlaneCurve, max_height: int) -> List[PlanePoint]:
    """Rational points with x = a/b, |a|, b <= max_height, ordered by height.

    Only meaningful over Q; used to sample general curves.
    """
    from fractions import Fraction
    from math import gcd

    F = curve.field
    coeffs = to_yx(curve.poly)
    seen = set()
    out = []
    for h in range(0, max_height + 1):
        xs = []
        for b in range(1, h + 1 if h else 2):
            for a in range(-h, h + 1):
                if max(abs(a), b) != h and h:
                    continue
                if gcd(a, b) != 1 and not (a == 0 and b == 1):
                    continue
                xs.append(F.norm(Fraction(a, b)))
        for x in xs:
            if x in seen:
                continue
            seen.add(x)
            s = UniPoly(F, [c(x) for c in coeffs])
            if s.degree > 0:
                for y in sorted(roots_in_field(s)):
                    out.append(PlanePoint(x, y))
    return out


def apply_shear(curve: PlaneCurve, lam) -> PlaneCurve:
    """Change coordinates by substituting x + lam*y for x: f(x, y) -> f(x + lam*y, y).

    Shears stand in for rotations, which need not exist over Q or F_p.
    """
    F = curve.field
    lam = F.norm(lam)
    x, y = MultiPoly.variables(F, 2)
    f = curve.poly.compose([x + y * lam, y])
    return PlaneCurve(f, curve.label, curve.irreducible_asserted)


def slice_roots(curve: PlaneCurve, x0) -> Tuple[bool, Set[Scalar]]:
    """(whole_line, roots) of f(x0, y): whole_line when the slice vanishes identically."""
    s = slice_at_x(curve.poly, x0)
    if not s:
        return True, set()
    if s.degree == 0:
        return False, set()
    return False, roots_in_field(s)
