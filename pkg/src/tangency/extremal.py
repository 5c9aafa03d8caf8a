"""The sharp family over F_p and random arrangements.

The family is C' = C_1 u C_2 with C_i the graphs y = i x^(k+1) + a_k x^k + ... + a_0
over F_p. Every jet (x, y, z_1, ..., z_k) in F_p^(k+2) is the jet of exactly
one member of each C_i, so each plane point carries many order-k tangencies.

Randomness comes from numpy's counter-based Philox generator, named in every
report so runs can be reproduced from the seed alone.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import GF, Field, UniPoly
from .algebra.field import is_prime
from .count import Arrangement, count_tangencies
from .curves import graph_of
from .errors import ConstraintViolated, TooManyCurves
from .lift import graph_jet

RNG_NAME = "numpy.random.Philox"


def rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


@dataclass(frozen=True)
class SharpFamilySpec:
    p: int
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ConstraintViolated(f"k must be at least 1, got {self.k}")
        if not is_prime(self.p):
            raise ConstraintViolated(f"{self.p} is not prime")
        if self.p <= self.k + 1:
            raise ConstraintViolated(f"the sharp family needs p > k + 1, got p={self.p}, k={self.k}")

    @property
    def field(self) -> Field:
        return GF(self.p)

    @property
    def size(self) -> int:
        return 2 * self.p ** (self.k + 1)


def sharp_label(i: int, coeffs: Sequence[int]) -> str:
    return f"C{i}:" + ",".join(str(a) for a in coeffs)


def sharp_polynomial(spec: SharpFamilySpec, i: int, coeffs: Sequence[int]) -> UniPoly:
    """i x^(k+1) + a_k x^k + ... + a_0 with ``coeffs`` = (a_0, ..., a_k)."""
    return UniPoly(spec.field, list(coeffs) + [i])


def build_sharp_family(spec: SharpFamilySpec) -> Arrangement:
    curves = []
    for i in (1, 2):
        for coeffs in product(range(spec.p), repeat=spec.k + 1):
            coeffs = coeffs[::-1]  # a_0 varies fastest
            curves.append(graph_of(sharp_polynomial(spec, i, coeffs), sharp_label(i, coeffs)))
    return Arrangement(spec.field, spec.k, tuple(curves))


def solve_member(spec: SharpFamilySpec, i: int, jet: Sequence[int]) -> Tuple[int, ...]:
    """Coefficients (a_0..a_k) of the C_i member through ``jet`` = (x, y, z_1..z_k).

    Taylor expansion at x: the degree <= k part h = g - i t^(k+1) must satisfy
    h^(j)(x) = z_j - i (k+1)!/(k+1-j)! x^(k+1-j), a triangular system in the
    Taylor coefficients of h. Expanding h back around 0 gives the a's.
    """
    F = spec.field
    k = spec.k
    x = jet[0]
    values = [jet[1]] + list(jet[2:])
    lead = UniPoly(F, [0] * (k + 1) + [i])
    taylor = []
    d = lead
    for j in range(k + 1):
        if j:
            d = d.derivative()
        target = F.norm(values[j] - d(x))
        taylor.append(F.div(target, F.factorial(j)))
    # h(t) = sum_j taylor[j] (t - x)^j
    shift = UniPoly(F, [F.neg(x), 1])
    h = UniPoly(F, [])
    power = UniPoly.constant(F, 1)
    for c in taylor:
        h = h + power * c
        power = power * shift
    return tuple(h[j] for j in range(k + 1))


@dataclass
class RealizationCheck:
    ok: bool
    jets_checked: int
    witness: Dict[Tuple[int, ...], Tuple[str, str]]
    failures: List[str] = dc_field(default_factory=list)


def jet_realization_check(spec: SharpFamilySpec, keep_witness: bool = True) -> RealizationCheck:
    """Every jet in F_p^(k+2) is realised by exactly one curve of each C_i.

    Two independent routes: exhaustive enumeration of the jets of every
    member at every x, and the triangular solve of :func:`solve_member`.
    """
    p, k = spec.p, spec.k
    failures = []
    owners: List[Dict[Tuple[int, ...], str]] = []
    for i in (1, 2):
        seen: Dict[Tuple[int, ...], str] = {}
        counts: Counter = Counter()
        for coeffs in product(range(p), repeat=k + 1):
            g = sharp_polynomial(spec, i, coeffs)
            lab = sharp_label(i, coeffs)
            for x in range(p):
                j = graph_jet(g, x, k)
                key = (x, j.base.y) + j.derivatives
                counts[key] += 1
                seen[key] = lab
        if len(counts) != p ** (k + 2) or any(v != 1 for v in counts.values()):
            multi = sum(1 for v in counts.values() if v != 1)
            failures.append(
                f"C{i}: {len(counts)} distinct jets of {p ** (k + 2)}, {multi} realised more than once"
            )
        owners.append(seen)
    witness = {}
    jets = 0
    for jet in product(range(p), repeat=k + 2):
        jets += 1
        pair = []
        for i in (1, 2):
            coeffs = solve_member(spec, i, jet)
            lab = sharp_label(i, coeffs)
            if owners[i - 1].get(jet) != lab:
                failures.append(f"jet {jet}: solve gives {lab}, enumeration {owners[i - 1].get(jet)}")
            pair.append(lab)
        if keep_witness:
            witness[jet] = tuple(pair)
    return RealizationCheck(not failures, jets, witness, failures)


def random_subsample(arr: Arrangement, probability=Fraction(1, 4), seed: int = 0) -> Arrangement:
    """Keep each curve independently with the given probability (a Fraction)."""
    prob = Fraction(probability)
    if not 0 <= prob <= 1:
        raise ConstraintViolated(f"probability must lie in [0, 1], got {prob}")
    draws = rng(seed).integers(0, prob.denominator, size=len(arr.curves))
    kept = [c for c, d in zip(arr.curves, draws) if d < prob.numerator]
    return arr.subset(kept)


def random_graph_arrangement(n: int, max_deg: int, p: int, seed: int = 0, k: int = 1) -> Arrangement:
    """n distinct random graphs of degree <= max_deg over F_p, sorted by coefficients."""
    F = GF(p)
    space = p ** (max_deg + 1)
    if n > space:
        raise TooManyCurves(f"only {space} graphs of degree <= {max_deg} exist over F_{p}")
    if n == space:
        chosen = sorted(product(range(p), repeat=max_deg + 1))
    else:
        gen = rng(seed)
        picked = set()
        while len(picked) < n:
            picked.add(tuple(int(v) for v in gen.integers(0, p, size=max_deg + 1)))
        chosen = sorted(picked)
    curves = [graph_of(UniPoly(F, c), "g:" + ",".join(map(str, c))) for c in chosen]
    return Arrangement(F, k, tuple(curves))


def sharp_truncation(n: int, k: int, seed: int = 0, p: Optional[int] = None) -> Arrangement:
    """n curves drawn without replacement from a sharp family.

    Without an explicit ``p`` the smallest admissible prime with
    2 p^(k+1) >= n is used, so the family is never much larger than n.
    """
    if p is None:
        p = k + 2
        while not is_prime(p) or 2 * p ** (k + 1) < n:
            p += 1
    spec = SharpFamilySpec(p, k)
    family = build_sharp_family(spec)
    if n > len(family):
        raise TooManyCurves(f"the sharp family for p={p}, k={k} has only {len(family)} curves")
    idx = np.sort(rng(seed).choice(len(family), size=n, replace=False))
    return family.subset([family.curves[i] for i in idx])


# -- sharpness --------------------------------------------------------------
def closed_forms(p: int, k: int) -> Dict[str, int]:
    return {"p^(k+1)": p ** (k + 1), "p^(k+2)": p ** (k + 2), "2p^(k+2)": 2 * p ** (k + 2)}


def jet_aggregate_total(arr: Arrangement) -> int:
    """Sum of m over all points, counted per jet instead of per point.

    Curves sharing a jet share its base point, so every jet realised by
    r >= 2 curves contributes r participants.
    """
    counts: Counter = Counter()
    for c in arr.curves:
        g = c.graph
        for x in range(arr.field.p):
            j = graph_jet(g, x, arr.k)
            counts[(x, j.base.y) + j.derivatives] += 1
    return sum(r for r in counts.values() if r >= 2)


@dataclass
class SubsampleResult:
    seed: int
    size: int
    sum_m: int
    ratio: float
    passed: bool


@dataclass
class SharpnessReport:
    p: int
    k: int
    size: int
    sum_m: int
    sum_m_by_jets: int
    ratio: float
    closed_forms: Dict[str, int]
    matches: List[str]
    displayed_formula_match: bool
    subsamples: List[SubsampleResult]
    probability: Fraction
    threshold: Fraction
    rng: str = RNG_NAME

    @property
    def predicted_closed_form(self) -> str:
        return "2p^(k+2)"

    @property
    def match(self) -> bool:
        return self.closed_forms[self.predicted_closed_form] == self.sum_m

    @property
    def pass_fraction(self) -> float:
        if not self.subsamples:
            return 0.0
        return sum(s.passed for s in self.subsamples) / len(self.subsamples)


def _ratio(sum_m: int, size: int, k: int) -> float:
    if size == 0:
        return 0.0
    return sum_m / size ** ((k + 2) / (k + 1))


def _passes(sum_m: int, size: int, k: int, threshold: Fraction) -> bool:
    # sum_m >= t * size^((k+2)/(k+1))  <=>  (sum_m / t)^(k+1) >= size^(k+2), exact
    if size == 0:
        return False
    lhs = Fraction(sum_m) / threshold
    return lhs ** (k + 1) >= Fraction(size) ** (k + 2)


def sharpness_report(
    spec: SharpFamilySpec,
    seeds: Sequence[int] = (),
    probability=Fraction(1, 4),
    threshold=Fraction(1, 100),
) -> SharpnessReport:
    family = build_sharp_family(spec)
    full = count_tangencies(family)
    by_jets = jet_aggregate_total(family)
    forms = closed_forms(spec.p, spec.k)
    subs = []
    for s in seeds:
        sub = random_subsample(family, probability, s)
        total = count_tangencies(sub).total if len(sub) else 0
        subs.append(
            SubsampleResult(s, len(sub), total, _ratio(total, len(sub), spec.k),
                            _passes(total, len(sub), spec.k, Fraction(threshold)))
        )
    return SharpnessReport(
        p=spec.p,
        k=spec.k,
        size=len(family),
        sum_m=full.total,
        sum_m_by_jets=by_jets,
        ratio=_ratio(full.total, len(family), spec.k),
        closed_forms=forms,
        matches=[name for name, v in forms.items() if v == full.total],
        displayed_formula_match=forms["p^(k+1)"] == full.total,
        subsamples=subs,
        probability=Fraction(probability),
        threshold=Fraction(threshold),
    )
