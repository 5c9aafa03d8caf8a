"""Sparse multivariate polynomials in x, y, z_1, ..., z_k.

Variable 0 is ``x``, variable 1 is ``y`` and variable ``1 + j`` is ``z_j``.
A polynomial is a map from exponent tuples to nonzero scalars; two
polynomials are equal exactly when their maps are equal, and iteration,
printing and serialization all use graded-lex order (highest term first).
"""
from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from ..errors import ArityMismatch, FieldMismatch, FormatError
from .field import Field, Scalar
from .univariate import UniPoly

Exponent = Tuple[int, ...]


def grlex_key(e: Exponent):
    return (sum(e), e)


def var_name(i: int) -> str:
    return "x" if i == 0 else "y" if i == 1 else f"z{i - 1}"


def monomials_up_to(nvars: int, degree: int) -> List[Exponent]:
    """All exponent vectors of total degree <= ``degree``, graded-lex descending."""
    out = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            out.append(tuple(e))
    out.sort(key=grlex_key, reverse=True)
    return out


class MultiPoly:
    __slots__ = ("field", "nvars", "_terms", "_hash")

    def __init__(self, field: Field, nvars: int, terms=None):
        clean: Dict[Exponent, Scalar] = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != nvars or any(x < 0 for x in e):
                raise ArityMismatch(f"exponent {e} does not fit {nvars} variables")
            c = field.norm(clean.get(e, 0) + field.norm(c))
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self.field = field
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, field, nvars, terms: Dict[Exponent, Scalar]) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.field = field
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, field, nvars) -> "MultiPoly":
        return cls._raw(field, nvars, {})

    @classmethod
    def constant(cls, field, nvars, c) -> "MultiPoly":
        c = field.norm(c)
        return cls._raw(field, nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, field, nvars, i) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise ArityMismatch(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(field, nvars, {tuple(e): 1})

    @classmethod
    def variables(cls, field, nvars) -> List["MultiPoly"]:
        return [cls.var(field, nvars, i) for i in range(nvars)]

    @classmethod
    def from_univariate(cls, g: UniPoly, nvars: int, var: int = 0) -> "MultiPoly":
        terms = {}
        for i, c in enumerate(g.coeffs):
            if c:
                e = [0] * nvars
                e[var] = i
                terms[tuple(e)] = c
        return cls._raw(g.field, nvars, terms)

    # -- inspection --------------------------------------------------------
    @property
    def k(self) -> int:
        return self.nvars - 2

    def terms(self) -> List[Tuple[Exponent, Scalar]]:
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def items(self):
        return self._terms.items()

    def coefficient(self, e: Sequence[int]) -> Scalar:
        return self._terms.get(tuple(e), 0)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    @property
    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._terms), default=-1)

    def involves(self, i: int) -> bool:
        return any(e[i] for e in self._terms)

    def leading_term(self) -> Tuple[Exponent, Scalar]:
        return max(self._terms.items(), key=lambda t: grlex_key(t[0]))

    def monic(self) -> "MultiPoly":
        if not self._terms:
            return self
        return self * self.field.inv(self.leading_term()[1])

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return (
                self.field == other.field
                and self.nvars == other.nvars
                and self._terms == other._terms
            )
        if isinstance(other, (int,)) or hasattr(other, "denominator"):
            return self == MultiPoly.constant(self.field, self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({self.field!s}, {self.nvars}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = ""
        for e, c in self.terms():
            mono = "*".join(
                var_name(i) if p == 1 else f"{var_name(i)}^{p}" for i, p in enumerate(e) if p
            )
            neg = c < 0  # only rationals can be negative
            cs = self.field.format(-c if neg else c)
            if not mono:
                term = cs
            elif cs == "1":
                term = mono
            else:
                term = f"{cs}*{mono}"
            if out:
                out += (" - " if neg else " + ") + term
            else:
                out = ("-" if neg else "") + term
        return out

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.field != self.field:
                raise FieldMismatch(f"field mismatch: {self.field} vs {other.field}")
            if other.nvars != self.nvars:
                raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        return MultiPoly.constant(self.field, self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        norm = self.field.norm
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = norm(out.get(e, 0) + c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.field, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return MultiPoly._raw(self.field, self.nvars, {e: neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        norm = self.field.norm
        if not isinstance(other, MultiPoly):
            c = norm(other)
            if not c:
                return MultiPoly.zero(self.field, self.nvars)
            return MultiPoly._raw(
                self.field, self.nvars, {e: norm(a * c) for e, a in self._terms.items()}
            )
        other = self._coerce(other)
        acc: Dict[Exponent, Scalar] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        out = {}
        for e, c in acc.items():
            c = norm(c)
            if c:
                out[e] = c
        return MultiPoly._raw(self.field, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = MultiPoly.constant(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- calculus and evaluation ------------------------------------------
    def diff(self, i: int) -> "MultiPoly":
        """Formal partial derivative in variable ``i``, valid in any characteristic."""
        if not 0 <= i < self.nvars:
            raise ArityMismatch(f"variable index {i} out of range for {self.nvars} variables")
        norm = self.field.norm
        out = {}
        for e, c in self._terms.items():
            p = e[i]
            if p:
                c2 = norm(c * p)
                if c2:
                    e2 = list(e)
                    e2[i] -= 1
                    out[tuple(e2)] = c2
        return MultiPoly._raw(self.field, self.nvars, out)

    def evaluate(self, point: Sequence) -> Scalar:
        if len(point) != self.nvars:
            raise ArityMismatch(f"point has {len(point)} coordinates, expected {self.nvars}")
        F = self.field
        pt = [F.norm(v) for v in point]
        p = F.p
        acc = 0
        for e, c in self._terms.items():
            term = c
            for v, k in zip(pt, e):
                if k:
                    term *= v**k if p is None else pow(v, k, p)
            acc += term
        return F.norm(acc)

    __call__ = evaluate

    def substitute_univariate(self, assignments: Sequence[UniPoly]) -> UniPoly:
        """Compose with one univariate polynomial per variable."""
        if len(assignments) != self.nvars:
            raise ArityMismatch(
                f"{len(assignments)} assignments for {self.nvars} variables"
            )
        for a in assignments:
            if a.field != self.field:
                raise FieldMismatch(f"field mismatch: {self.field} vs {a.field}")
        powers: Dict[Tuple[int, int], UniPoly] = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = assignments[i] if k == 1 else power(i, k - 1) * assignments[i]
            return powers[key]

        out = UniPoly(self.field, [])
        for e, c in self._terms.items():
            term = UniPoly.constant(self.field, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def compose(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute polynomial ``images[i]`` for variable ``i``."""
        if len(images) != self.nvars:
            raise ArityMismatch(f"{len(images)} images for {self.nvars} variables")
        target = images[0].nvars if images else self.nvars
        out = MultiPoly.zero(self.field, target)
        for e, c in self._terms.items():
            term = MultiPoly.constant(self.field, target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * images[i] ** k
            out = out + term
        return out

    def coefficients_in(self, i: int) -> Dict[int, "MultiPoly"]:
        """Coefficients as a polynomial in variable ``i`` (variable ``i`` zeroed)."""
        out: Dict[int, Dict[Exponent, Scalar]] = {}
        for e, c in self._terms.items():
            e2 = list(e)
            p = e2[i]
            e2[i] = 0
            out.setdefault(p, {})[tuple(e2)] = c
        return {p: MultiPoly._raw(self.field, self.nvars, t) for p, t in out.items()}

    def with_nvars(self, n: int) -> "MultiPoly":
        """Embed into (or restrict to) ``n`` variables, keeping variable indices."""
        if n >= self.nvars:
            pad = (0,) * (n - self.nvars)
            return MultiPoly._raw(self.field, n, {e + pad: c for e, c in self._terms.items()})
        for e in self._terms:
            if any(e[n:]):
                raise ArityMismatch(f"polynomial involves variables beyond index {n - 1}")
        return MultiPoly._raw(self.field, n, {e[:n]: c for e, c in self._terms.items()})

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "k": self.nvars - 2,
            "terms": self.terms_json(),
        }

    def terms_json(self) -> list:
        return [[list(e), self.field.format(c)] for e, c in self.terms()]

    @classmethod
    def from_json(cls, obj) -> "MultiPoly":
        if not isinstance(obj, dict):
            raise FormatError(f"polynomial must be an object, got {type(obj).__name__}")
        try:
            field = Field.from_json(obj["field"])
            k = obj["k"]
            terms = obj["terms"]
        except KeyError as exc:
            raise FormatError(f"polynomial missing key {exc}") from None
        if not isinstance(k, int) or k < 0:
            raise FormatError(f"'k' must be a nonnegative integer, got {k!r}")
        return cls.from_terms_json(field, k + 2, terms)

    @classmethod
    def from_terms_json(cls, field: Field, nvars: int, terms) -> "MultiPoly":
        if not isinstance(terms, list):
            raise FormatError("'terms' must be a list of [exponents, coefficient] pairs")
        out = []
        for t in terms:
            if not (isinstance(t, list) and len(t) == 2 and isinstance(t[0], list)):
                raise FormatError(f"malformed term {t!r}")
            e, c = t
            if len(e) != nvars or not all(isinstance(x, int) and x >= 0 for x in e):
                raise FormatError(f"exponent vector {e!r} does not fit {nvars} variables")
            out.append((tuple(e), field.parse(c)))
        return cls(field, nvars, out)


def poly_add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a + b


def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a * b


def partial_derivative(f: MultiPoly, var_index: int) -> MultiPoly:
    return f.diff(var_index)


def evaluate(f: MultiPoly, point: Sequence) -> Scalar:
    return f.evaluate(point)


def substitute_univariate(f: MultiPoly, assignments: Sequence[UniPoly]) -> UniPoly:
    return f.substitute_univariate(assignments)


def iter_exponents(f: MultiPoly) -> Iterator[Exponent]:
    return iter(e for e, _ in f.terms())


def parse_poly(text: str, field: Field, nvars: int) -> MultiPoly:
    """Parse a polynomial written with + - * ^ and the names x, y, z1, ...

    Intended for tests and the CLI ``--poly`` shorthand; JSON stays the
    interchange format.
    """
    import ast

    names = {var_name(i): MultiPoly.var(field, nvars, i) for i in range(nvars)}

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.BinOp):
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, (ast.Pow, ast.BitXor)):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise FormatError("exponents must be integer literals")
                return left ** node.right.value
            if isinstance(node.op, ast.Div):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise FormatError("only division by integer literals is supported")
                return left * field.inv(field.norm(node.right.value))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return MultiPoly.constant(field, nvars, node.value)
        if isinstance(node, ast.Name) and node.id in names:
            return names[node.id]
        raise FormatError(f"cannot parse polynomial fragment {ast.dump(node)}")

    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise FormatError(f"cannot parse polynomial {text!r}: {exc.msg}") from None
    result = walk(tree)
    if not isinstance(result, MultiPoly):
        result = MultiPoly.constant(field, nvars, result)
    return result
