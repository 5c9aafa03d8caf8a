"""Dense univariate polynomials over a :class:`Field`, plus root finding."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, isqrt, lcm
from typing import Iterable, List, Sequence, Set

from ..errors import FieldMismatch, ZeroPolynomial
from .field import Field, Scalar


class UniPoly:
    """Polynomial in one variable, coefficients stored low degree first.

    Trailing zeros are stripped, so ``coeffs == ()`` is the zero polynomial.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        cs = [field.norm(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, field, cs: List[Scalar]) -> "UniPoly":
        while cs and not cs[-1]:
            cs.pop()
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def constant(cls, field, c) -> "UniPoly":
        return cls(field, [c])

    @classmethod
    def t(cls, field) -> "UniPoly":
        return cls._raw(field, [0, 1])

    @classmethod
    def from_roots(cls, field, roots) -> "UniPoly":
        out = cls.constant(field, 1)
        for r in roots:
            out = out * cls(field, [field.neg(field.norm(r)), 1])
        return out

    # -- basics ------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lc(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == tuple(c for c in [self.field.norm(other)] if c)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"UniPoly({self.field!s}, {[self.field.format(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            cs = self.field.format(c)
            if mono and c == 1:
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(parts)

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.field != self.field:
                raise FieldMismatch(f"field mismatch: {self.field} vs {other.field}")
            return other
        return UniPoly.constant(self.field, other)

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        norm = self.field.norm
        for i, c in enumerate(b):
            out[i] = norm(out[i] + c)
        return UniPoly._raw(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return UniPoly._raw(self.field, [neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = self.field.norm(other)
            norm = self.field.norm
            return UniPoly._raw(self.field, [norm(a * c) for a in self.coeffs])
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw(self.field, [])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        norm = self.field.norm
        return UniPoly._raw(self.field, [norm(c) for c in out])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = UniPoly.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = F.inv(other.lc)
        if len(rem) - 1 < db:
            return UniPoly._raw(F, []), self
        quo = [0] * (len(rem) - db)
        bc = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if not c:
                continue
            q = F.norm(c * inv_lc)
            quo[i - db] = q
            for j in range(db + 1):
                rem[i - db + j] = F.norm(rem[i - db + j] - q * bc[j])
        return UniPoly._raw(F, quo), UniPoly._raw(F, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return self * self.field.inv(self.lc)

    def derivative(self) -> "UniPoly":
        norm = self.field.norm
        return UniPoly._raw(self.field, [norm(i * c) for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x) -> Scalar:
        acc = 0
        norm = self.field.norm
        for c in reversed(self.coeffs):
            acc = norm(acc * x + c)
        return acc

    def truncate(self, n: int) -> "UniPoly":
        """Reduce modulo t^n."""
        return UniPoly._raw(self.field, list(self.coeffs[:n]))

    def compose(self, inner: "UniPoly") -> "UniPoly":
        out = UniPoly._raw(self.field, [])
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out


def univariate_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    if a.field != b.field:
        raise FieldMismatch(f"field mismatch: {a.field} vs {b.field}")
    while b:
        a, b = b, a % b
    return a.monic()


def gcd_many(polys: Sequence[UniPoly]) -> UniPoly:
    return reduce(univariate_gcd, polys)


# -- roots -----------------------------------------------------------------
_TRIAL_LIMIT = 10**10


def _divisors(n: int) -> List[int]:
    n = abs(n)
    if n > _TRIAL_LIMIT:
        from sympy import divisors

        return [int(d) for d in divisors(n)]
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def _integer_form(a: UniPoly) -> List[int]:
    """Primitive integer polynomial with the same roots as ``a`` over Q."""
    den = lcm(*(Fraction(c).denominator for c in a.coeffs))
    ints = [int(Fraction(c) * den) for c in a.coeffs]
    g = reduce(gcd, ints)
    return [c // g for c in ints]


def roots_in_field(a: UniPoly) -> Set[Scalar]:
    """All roots of ``a`` that lie in its base field.

    Over F_p every residue is tried. Over Q candidates come from the rational
    root theorem applied to the primitive integer form; irrational and
    complex roots are not reported.
    """
    if not a:
        raise ZeroPolynomial("roots of the zero polynomial")
    F = a.field
    if F.is_prime_field:
        return {x for x in range(F.p) if not a(x)}
    ints = _integer_form(a)
    roots: Set[Scalar] = set()
    v = 0
    while not ints[v]:
        v += 1
    if v:
        roots.add(0)
    ints = ints[v:]
    n = len(ints) - 1
    if n == 0:
        return roots
    for e in _divisors(ints[-1]):
        for d in _divisors(ints[0]):
            if gcd(d, e) != 1:
                continue
            for num in (d, -d):
                # homogenised evaluation keeps everything in integers
                acc = 0
                for i, c in enumerate(ints):
                    acc += c * num**i * e ** (n - i)
                if acc == 0:
                    roots.add(F.norm(Fraction(num, e)))
    return roots
