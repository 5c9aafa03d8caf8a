"""Exact scalar fields: the rationals and prime fields F_p.

Scalars are plain Python numbers so the polynomial kernels stay fast:

* over Q a scalar is an ``int`` (when integral) or a ``fractions.Fraction``;
* over F_p a scalar is the canonical residue, an ``int`` in ``[0, p)``.

A :class:`Field` knows how to bring any number into canonical form
(:meth:`Field.norm`) and owns the operations that differ between the two
cases (inversion, parsing, formatting).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator, Optional, Union

from ..errors import FieldMismatch, FormatError, TangencyError

Scalar = Union[int, Fraction]

MAX_MODULUS = 2**31


def is_prime(n: int) -> bool:
    """Trial division; moduli are below 2^31 so this is at most ~46k steps."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    i = 5
    r = isqrt(n)
    while i <= r:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


@dataclass(frozen=True)
class Field:
    """Descriptor of the base field. ``p=None`` means the rationals."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or isinstance(self.p, bool):
                raise TangencyError(f"modulus must be an integer, got {self.p!r}")
            if self.p >= MAX_MODULUS:
                raise TangencyError(f"modulus {self.p} is not below 2^31")
            if not is_prime(self.p):
                raise TangencyError(f"modulus {self.p} is not prime")

    # -- descriptors -------------------------------------------------------
    @property
    def kind(self) -> str:
        return "Q" if self.p is None else "Fp"

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __str__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def __repr__(self):
        return "Field(Q)" if self.p is None else f"Field(p={self.p})"

    # -- element construction ---------------------------------------------
    def norm(self, v) -> Scalar:
        """Canonical representative of ``v`` (int, Fraction, or str)."""
        if isinstance(v, str):
            return self.parse(v)
        p = self.p
        if p is None:
            if isinstance(v, Fraction):
                return v.numerator if v.denominator == 1 else v
            if isinstance(v, int):
                return int(v)
            raise TypeError(f"cannot coerce {v!r} into {self}")
        if isinstance(v, int):
            return v % p
        if isinstance(v, Fraction):
            d = v.denominator % p
            if d == 0:
                raise ZeroDivisionError(f"denominator of {v} vanishes mod {p}")
            return v.numerator * pow(d, -1, p) % p
        raise TypeError(f"cannot coerce {v!r} into {self}")

    __call__ = norm

    @property
    def zero(self) -> Scalar:
        return 0

    @property
    def one(self) -> Scalar:
        return 1

    def inv(self, a: Scalar) -> Scalar:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return self.norm(1 / Fraction(a))
        return pow(a, -1, self.p)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        if self.p is None:
            if not b:
                raise ZeroDivisionError("division by zero")
            return self.norm(Fraction(a) / b)
        return a * self.inv(b) % self.p

    def neg(self, a: Scalar) -> Scalar:
        return -a if self.p is None else (-a) % self.p

    def factorial(self, n: int) -> Scalar:
        out = 1
        for i in range(2, n + 1):
            out *= i
        return self.norm(out)

    def elements(self) -> Iterator[Scalar]:
        if self.p is None:
            raise TangencyError("the rationals cannot be enumerated")
        return iter(range(self.p))

    # -- text form ---------------------------------------------------------
    _RAT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")

    def parse(self, text) -> Scalar:
        if isinstance(text, bool):
            raise FormatError(f"not a scalar: {text!r}")
        if isinstance(text, int):
            return self.norm(text)
        m = self._RAT.match(str(text))
        if m is None:
            raise FormatError(f"not a decimal or a/b scalar: {text!r}")
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den == 0:
            raise FormatError(f"zero denominator in {text!r}")
        try:
            return self.norm(Fraction(num, den))
        except ZeroDivisionError as exc:
            raise FormatError(str(exc)) from None

    def format(self, a: Scalar) -> str:
        if isinstance(a, Fraction):
            return f"{a.numerator}/{a.denominator}"
        return str(a)

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {"kind": "Q"} if self.p is None else {"kind": "Fp", "p": self.p}

    @classmethod
    def from_json(cls, obj) -> "Field":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise FormatError(f"field must be an object with a 'kind': {obj!r}")
        if obj["kind"] == "Q":
            return QQ
        if obj["kind"] == "Fp":
            p = obj.get("p")
            if not isinstance(p, int):
                raise FormatError(f"Fp field needs an integer 'p': {obj!r}")
            return cls(p)
        raise FormatError(f"unknown field kind {obj['kind']!r}")


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def check_same(*fields: Field) -> Field:
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatch(f"field mismatch: {first} vs {f}")
    return first
