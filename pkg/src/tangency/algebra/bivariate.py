"""Bivariate tools: y-resultants, gcds and common zeros of plane polynomials.

A polynomial in x, y is handled here as a polynomial in y whose
coefficients are :class:`UniPoly` objects in x.
"""
from __future__ import annotations

from typing import List, Sequence, Set, Tuple

from ..errors import ArityMismatch, FieldMismatch, TangencyError, ZeroPolynomial
from .field import Scalar
from .poly import MultiPoly
from .univariate import UniPoly, roots_in_field, univariate_gcd

YPoly = List[UniPoly]  # index j holds the coefficient of y^j


def _check_plane(f: MultiPoly) -> None:
    for e, _ in f.items():
        if any(e[2:]):
            raise ArityMismatch("expected a polynomial in x and y only")


def to_yx(f: MultiPoly) -> YPoly:
    _check_plane(f)
    F = f.field
    deg = f.degree_in(1)
    rows = [[0] * (f.degree_in(0) + 1) for _ in range(deg + 1)]
    for e, c in f.items():
        rows[e[1]][e[0]] = c
    return [UniPoly(F, r) for r in rows]


def from_yx(coeffs: YPoly, nvars: int = 2) -> MultiPoly:
    F = coeffs[0].field
    terms = {}
    for j, u in enumerate(coeffs):
        for i, c in enumerate(u.coeffs):
            if c:
                e = [0] * nvars
                e[0], e[1] = i, j
                terms[tuple(e)] = c
    return MultiPoly._raw(F, nvars, terms)


def _strip(p: YPoly) -> YPoly:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def slice_at_x(f: MultiPoly, x0) -> UniPoly:
    """The univariate polynomial f(x0, y)."""
    return UniPoly(f.field, [c(x0) for c in to_yx(f)])


def sylvester_matrix(f: YPoly, g: YPoly) -> List[List[UniPoly]]:
    F = f[0].field
    zero = UniPoly(F, [])
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return rows


def bareiss_det(mat: List[List[UniPoly]], field) -> UniPoly:
    """Fraction-free determinant over F[x]; every division is exact."""
    n = len(mat)
    if n == 0:
        return UniPoly.constant(field, 1)
    M = [list(r) for r in mat]
    sign = 1
    prev = UniPoly.constant(field, 1)
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return UniPoly(field, [])
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - mik * row_k[j]).exact_div(prev)
            row_i[k] = UniPoly(field, [])
        prev = pivot
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def resultant_y(f: MultiPoly, g: MultiPoly) -> UniPoly:
    """Sylvester resultant of ``f`` and ``g`` with respect to y, a polynomial in x.

    The formal y-degrees are used, so the result vanishes at x0 exactly when
    f(x0, .) and g(x0, .) share a root in the algebraic closure or both
    leading coefficients vanish at x0.
    """
    if f.field != g.field:
        raise FieldMismatch(f"field mismatch: {f.field} vs {g.field}")
    if not f or not g:
        raise ZeroPolynomial("resultant with the zero polynomial")
    A, B = to_yx(f), to_yx(g)
    return bareiss_det(sylvester_matrix(A, B), f.field)


# -- gcd in F[x][y] ------------------------------------------------------
def _content(p: YPoly) -> UniPoly:
    g = UniPoly(p[0].field, [])
    for c in p:
        g = univariate_gcd(g, c)
        if g.degree == 0:
            break
    return g


def _primitive(p: YPoly) -> YPoly:
    p = _strip(p)
    if not p:
        return p
    c = _content(p)
    if c.degree == 0:
        return p
    return [u.exact_div(c) for u in p]


def _prem(a: YPoly, b: YPoly) -> YPoly:
    r = _strip(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        lr = r[-1]
        new = [u * lb for u in r]
        for j, u in enumerate(b):
            new[j + shift] = new[j + shift] - lr * u
        r = _strip(new)
    return r


def bivariate_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Greatest common divisor in F[x, y], normalised monic (graded-lex)."""
    if f.field != g.field:
        raise FieldMismatch(f"field mismatch: {f.field} vs {g.field}")
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    A, B = _strip(to_yx(f)), _strip(to_yx(g))
    c = univariate_gcd(_content(A), _content(B))
    A, B = _primitive(A), _primitive(B)
    if len(A) < len(B):
        A, B = B, A
    while B:
        A, B = B, _primitive(_prem(A, B))
    A = _primitive(A)
    out = from_yx([u * c for u in A], f.nvars)
    return out.monic()


def has_common_factor(f: MultiPoly, g: MultiPoly) -> bool:
    return bivariate_gcd(f, g).total_degree > 0


# -- common zeros ----------------------------------------------------------
def common_zeros(polys: Sequence[MultiPoly]) -> Set[Tuple[Scalar, Scalar]]:
    """Base-field points where every polynomial vanishes.

    Raises TangencyError when the common zero set is one-dimensional (a
    shared curve component), since it is then infinite or not a point set.
    Over Q only rational points are found.
    """
    polys = [p for p in polys if p]
    if not polys:
        raise TangencyError("every polynomial is zero: the whole plane is common")
    F = polys[0].field
    if any(p.field != F for p in polys):
        raise FieldMismatch("field mismatch among polynomials")
    if any(p.is_constant() for p in polys):
        return set()
    for p in polys:
        _check_plane(p)
    xs = _candidate_xs(polys)
    out = set()
    for x0 in xs:
        slices = [slice_at_x(p, x0) for p in polys]
        g = UniPoly(F, [])
        for s in slices:
            g = univariate_gcd(g, s)
        if not g:
            raise TangencyError(f"the vertical line x = {F.format(x0)} is a common component")
        if g.degree == 0:
            continue
        for y0 in roots_in_field(g):
            out.add((x0, y0))
    return out


def _candidate_xs(polys: Sequence[MultiPoly]) -> Set[Scalar]:
    F = polys[0].field
    if F.is_prime_field:
        return set(range(F.p))
    pure_x = [p for p in polys if p.degree_in(1) == 0]
    if pure_x:
        cand = roots_in_field(to_yx(pure_x[0])[0])
        return {x for x in cand if all(not to_yx(q)[0](x) for q in pure_x[1:])}
    first, rest = polys[0], polys[1:]
    if not rest:
        raise TangencyError("a single polynomial has a one-dimensional zero set")
    # a generic combination of the others shares no factor with `first`
    # unless all of them do; each factor of `first` rules out at most
    # len(rest) - 1 values of lam
    budget = first.total_degree * len(rest) + 2
    for lam in range(budget + 1):
        combo = rest[0]
        for i, q in enumerate(rest[1:], start=1):
            combo = combo + q * F.norm(lam**i)
        if not combo:
            continue
        res = resultant_y(first, combo)
        if res:
            return roots_in_field(res)
    raise TangencyError("the polynomials share a curve component")
