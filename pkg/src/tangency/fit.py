"""Minimal-degree polynomials vanishing on families of lifts.

Vanishing on a whole lift is certified by Bezout: a polynomial of degree d
restricted to a lift of degree at most e either vanishes identically or has
at most d*e zeros on it, so vanishing at d*e + 1 distinct lift points is
enough. Each degree d gives a linear system in the binom(d+k+2, k+2)
coefficients; the first d with a nonzero kernel is the minimal degree.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from .algebra import MultiPoly, UniPoly
from .algebra.field import Field
from .algebra.linalg import full_column_rank_certified, kernel_basis
from .algebra.poly import monomials_up_to
from .count import Arrangement, count_tangencies
from .curves import PlaneCurve
from .errors import (
    ArityMismatch,
    EmptyInput,
    FieldMismatch,
    InsufficientFieldPoints,
    InsufficientPoints,
    TangencyError,
)
from .lift import Jet, jet_at, lift_degree_bound, sample_lift_points


@dataclass
class CurveCertificate:
    label: str
    contained: bool
    samples: int


@dataclass
class FitResult:
    polynomial: MultiPoly
    degree: int
    k: int
    constraints_used: int
    per_curve_certificates: List[CurveCertificate]
    minimality_certified: bool
    kernel_dimension: int
    top_free: bool


# -- building blocks ---------------------------------------------------------
def sample_budget(curve: PlaneCurve, k: int, degree: int) -> int:
    return lift_degree_bound(curve, k) * degree + 1


def _sample(curve: PlaneCurve, k: int, count: int, skip: int = 0) -> List[Jet]:
    try:
        return sample_lift_points(curve, k, count, skip=skip)
    except InsufficientPoints as exc:
        raise InsufficientFieldPoints(
            f"{exc} (use a larger field for this fit)"
        ) from None


def _monomial_row(coords, monos, field: Field) -> List:
    p = field.p
    n = len(coords)
    top = max((max(e) for e in monos), default=0)
    powers = []
    for v in coords:
        row = [1]
        for _ in range(top):
            row.append(row[-1] * v if p is None else row[-1] * v % p)
        powers.append(row)
    out = []
    for e in monos:
        val = 1
        for i in range(n):
            if e[i]:
                val = val * powers[i][e[i]]
        out.append(val if p is None else val % p)
    if p is None:
        out = [field.norm(v) for v in out]
    return out


def _check_curves(curves: Sequence[PlaneCurve]) -> Field:
    if not curves:
        raise EmptyInput("no curves to fit")
    F = curves[0].field
    for c in curves:
        if c.field != F:
            raise FieldMismatch(f"curve {c.label!r} is over {c.field}, expected {F}")
    return F


def _monomial_matrix_mod_p(points, monos, p: int) -> np.ndarray:
    """Rows of monomial values at ``points`` over F_p, vectorised."""
    pts = np.array(points, dtype=np.int64) % p
    E = np.array(monos, dtype=np.int64)
    top = int(E.max()) if E.size else 0
    # powers[v, i, e] = pts[i, v]^e mod p
    powers = np.ones((pts.shape[1], pts.shape[0], top + 1), dtype=np.int64)
    for e in range(1, top + 1):
        powers[:, :, e] = powers[:, :, e - 1] * pts.T % p
    out = np.ones((pts.shape[0], len(monos)), dtype=np.int64)
    for v in range(pts.shape[1]):
        out = out * powers[v][:, E[:, v]] % p
    return out


def constraint_system(curves: Sequence[PlaneCurve], k: int, degree: int, monos):
    """One row per sampled jet: the monomials of degree <= ``degree`` evaluated there.

    Over F_p the rows come back as an int64 array, over Q as lists of scalars.
    """
    F = curves[0].field
    jets = [j.coordinates() for c in curves for j in _sample(c, k, sample_budget(c, k, degree))]
    if F.is_prime_field:
        return _monomial_matrix_mod_p(jets, monos, F.p)
    return [_monomial_row(pt, monos, F) for pt in jets]


def parameter_bound(curves: Sequence[PlaneCurve], k: int) -> int:
    """First d where unknowns outnumber the Bezout sample constraints."""
    d = 1
    while comb(d + k + 2, k + 2) <= sum(sample_budget(c, k, d) for c in curves):
        d += 1
    return d


def _poly_from_vector(F: Field, nvars: int, monos, vec) -> MultiPoly:
    poly = MultiPoly(F, nvars, [(e, c) for e, c in zip(monos, vec) if c])
    return poly.monic()


def fit_at_degree(
    curves: Sequence[PlaneCurve], k: int, degree: int, prefer_top_free: bool = True
) -> Optional[Tuple[MultiPoly, int, int, bool]]:
    """Canonical nonzero kernel polynomial at this degree, or None.

    Returns (polynomial, constraints, kernel dimension, top_free). When
    ``prefer_top_free`` is set and some kernel polynomial avoids z_k, the
    canonical one among those is returned.
    """
    F = _check_curves(curves)
    n = k + 2
    monos = monomials_up_to(n, degree)
    rows = constraint_system(curves, k, degree, monos)
    basis = kernel_basis(rows, len(monos), F)
    if not basis:
        return None
    if prefer_top_free:
        keep = [i for i, e in enumerate(monos) if not e[n - 1]]
        sub_rows = rows[:, keep] if isinstance(rows, np.ndarray) else [[r[i] for i in keep] for r in rows]
        sub = kernel_basis(sub_rows, len(keep), F)
        if sub:
            vec = sub[0]
            poly = _poly_from_vector(F, n, [monos[i] for i in keep], vec)
            return poly, len(rows), len(basis), True
    poly = _poly_from_vector(F, n, monos, basis[0])
    return poly, len(rows), len(basis), not poly.involves(n - 1)


def has_kernel_at(curves: Sequence[PlaneCurve], k: int, degree: int) -> bool:
    n = k + 2
    monos = monomials_up_to(n, degree)
    rows = constraint_system(curves, k, degree, monos)
    return not full_column_rank_certified(rows, len(monos), curves[0].field)


def min_degree_vanishing(
    curves: Sequence[PlaneCurve], k: int, prefer_top_free: bool = True, max_degree: int = None
) -> FitResult:
    """Nonzero polynomial of least degree vanishing on every lift L_k(curve)."""
    _check_curves(curves)
    limit = max_degree or parameter_bound(curves, k)
    for d in range(1, limit + 1):
        if not has_kernel_at(curves, k, d):
            continue
        found = fit_at_degree(curves, k, d, prefer_top_free)
        if found is None:
            continue
        poly, used, dim, top_free = found
        certs = [CurveCertificate(c.label, *_containment(poly, c, k)) for c in curves]
        return FitResult(poly, d, k, used, certs, True, dim, top_free)
    raise TangencyError(f"no vanishing polynomial up to degree {limit}")


# -- containment -------------------------------------------------------------
def _lift_parametrisation(g: UniPoly, k: int) -> List[UniPoly]:
    F = g.field
    out = [UniPoly.t(F), g]
    d = g
    for _ in range(k):
        d = d.derivative()
        out.append(d)
    return out


def _containment(P: MultiPoly, curve: PlaneCurve, k: int) -> Tuple[bool, int]:
    n = k + 2
    if P.nvars > n:
        raise ArityMismatch(f"polynomial has {P.nvars} variables, lift space has {n}")
    P = P.with_nvars(n)
    if not P:
        return True, 0
    g = curve.graph
    if g is not None:
        # restriction to the lift is a literal univariate polynomial
        return not P.substitute_univariate(_lift_parametrisation(g, k)), 0
    budget = lift_degree_bound(curve, k) * P.total_degree + 1
    jets = _sample(curve, k, budget)
    return all(not P.evaluate(j.coordinates()) for j in jets), budget


def contains_lift(P: MultiPoly, curve: PlaneCurve, k: int) -> bool:
    return _containment(P, curve, k)[0]


def vanishes_on_curve(P: MultiPoly, curve: PlaneCurve) -> bool:
    """Bivariate containment of the curve in Z(P)."""
    P = P.with_nvars(2)
    if not P:
        return True
    g = curve.graph
    F = curve.field
    if g is not None:
        return not P.substitute_univariate([UniPoly.t(F), g])
    from .curves import points_on_curve, rational_points

    need = P.total_degree * curve.degree + 1
    if F.is_prime_field:
        pts = sorted(points_on_curve(curve), key=lambda q: (q.x, q.y))
    else:
        pts = rational_points(curve, 64)
    if len(pts) < need:
        raise InsufficientFieldPoints(f"{curve.label}: {len(pts)} points, need {need}")
    return all(not P.evaluate((q.x, q.y)) for q in pts[:need])


def dz_top(P: MultiPoly, k: int) -> MultiPoly:
    """Derivative in the top jet variable z_k."""
    if P.nvars != k + 2:
        raise ArityMismatch(f"polynomial has {P.nvars} variables, expected {k + 2}")
    return P.diff(k + 1)


def fresh_jets(curve: PlaneCurve, k: int, degree: int, count: int) -> List[Jet]:
    """Lift points not used by a fit at ``degree``."""
    return _sample(curve, k, count, skip=sample_budget(curve, k, degree))


# -- corollary witness -------------------------------------------------------
@dataclass
class SharedJetCheck:
    point: Tuple
    labels: Tuple[str, ...]
    jet: Tuple
    dz_value: object


def shared_jet_checks(P: MultiPoly, curves: Sequence[PlaneCurve], k: int) -> List[SharedJetCheck]:
    """Evaluate dP/dz_k at every jet shared by two of the curves.

    When every lift lies in Z(P), each value must be zero.
    """
    F = curves[0].field
    rep = count_tangencies(Arrangement(F, k, tuple(curves)))
    by_label = {c.label: c for c in curves}
    Q = dz_top(P.with_nvars(k + 2), k)
    out = []
    for rec in rep.records:
        pt = (rec.point.x, rec.point.y)
        groups: Dict[tuple, List[str]] = {}
        for lab in rec.participants:
            groups.setdefault(jet_at(by_label[lab], pt, k).derivatives, []).append(lab)
        for jet, labs in groups.items():
            coords = pt + jet
            out.append(SharedJetCheck(pt, tuple(labs), coords, Q.evaluate(coords)))
    return out


# -- cascade -----------------------------------------------------------------
@dataclass
class CascadeLevel:
    level: int
    fit: FitResult
    top_free: bool
    dz_containment: List[CurveCertificate] = dc_field(default_factory=list)


@dataclass
class CascadeResult:
    k: int
    degree: int
    levels: List[CascadeLevel]
    status: str  # "complete" or "DescentStopped"
    stopped_at: Optional[int]
    p0: Optional[MultiPoly]
    p0_vanishes: Dict[str, bool]
    degree_sum: int

    @property
    def degree_check(self) -> Optional[bool]:
        if self.p0 is None:
            return None
        return self.degree_sum <= self.p0.total_degree


def _fit_level(curves, level: int, degree: int) -> FitResult:
    found = fit_at_degree(curves, level, degree, prefer_top_free=True)
    if found is None:
        raise TangencyError(f"no vanishing polynomial of degree {degree} at level {level}")
    poly, used, dim, top_free = found
    minimal = degree == 1 or not has_kernel_at(curves, level, degree - 1)
    certs = [CurveCertificate(c.label, *_containment(poly, c, level)) for c in curves]
    return FitResult(poly, degree, level, used, certs, minimal, dim, top_free)


def cascade(curves: Sequence[PlaneCurve], k: int) -> CascadeResult:
    """Descend from P_k towards a bivariate P_0 by dropping z_k, z_{k-1}, ...

    At each level the minimal-degree polynomial is taken free of the top jet
    variable when the kernel allows it; otherwise the descent stops there and
    the containment of each lift in Z(dP/dz_j) is recorded.
    """
    _check_curves(curves)
    top = min_degree_vanishing(curves, k)
    d = top.degree
    fit = top
    levels: List[CascadeLevel] = []
    for level in range(k, 0, -1):
        if level != k:
            fit = _fit_level(curves, level, d)
        P = fit.polynomial
        if P.involves(level + 1):
            Q = P.diff(level + 1)
            certs = [CurveCertificate(c.label, *_containment(Q, c, level)) for c in curves]
            levels.append(CascadeLevel(level, fit, False, certs))
            return CascadeResult(k, d, levels, "DescentStopped", level, None, {}, sum(c.degree for c in curves))
        levels.append(CascadeLevel(level, fit, True))
    p0 = levels[-1].fit.polynomial.with_nvars(2)
    vanish = {c.label: vanishes_on_curve(p0, c) for c in curves}
    return CascadeResult(k, d, levels, "complete", None, p0, vanish, sum(c.degree for c in curves))
