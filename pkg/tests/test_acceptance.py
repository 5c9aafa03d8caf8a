"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are also collected into a summary section at the end of the
pytest run (see conftest.py).
"""
import time
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, P, naive_total
from tangency.algebra import GF, QQ, MultiPoly, UniPoly
from tangency.count import SAME_TO_CUTOFF, bound_scan, count_tangencies, tangency_order_at
from tangency.curves import graph_of, new_curve
from tangency.errors import ConstantPolynomial, NotSquareFree, ZeroPolynomial
from tangency.extremal import (
    SharpFamilySpec,
    build_sharp_family,
    jet_realization_check,
    random_graph_arrangement,
    rng,
    sharp_label,
    sharp_polynomial,
    sharp_truncation,
    sharpness_report,
    solve_member,
)
from tangency.fit import (
    cascade,
    fresh_jets,
    min_degree_vanishing,
    parameter_bound,
    shared_jet_checks,
    vanishes_on_curve,
)
from tangency.lift import build_lift_system, graph_jet, jet_at, jet_by_power_series

SHARP_CASES = [(3, 1), (5, 1), (5, 2), (7, 1), (7, 2)]


def verdict(n, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def random_poly(gen, F, max_deg):
    D = int(gen.integers(1, max_deg + 1))
    terms = {}
    for i in range(D + 1):
        for j in range(D + 1 - i):
            if gen.random() < 0.6:
                c = int(gen.integers(-5, 6))
                if F.p is None and gen.random() < 0.3:
                    c = Fraction(c, int(gen.integers(1, 4)))
                terms[(i, j)] = c
    terms[(0, D)] = 1  # keeps degree D and a y-term, so no vertical lines
    return MultiPoly(F, 2, list(terms.items()))


def random_curves(count, fields, max_deg, seed):
    gen = rng(seed)
    out = []
    while len(out) < count:
        F = fields[int(gen.integers(0, len(fields)))]
        f = random_poly(gen, F, max_deg)
        if F.is_prime_field and F.p <= f.total_degree:
            continue
        try:
            out.append(new_curve(f, f"r{len(out)}"))
        except (NotSquareFree, ZeroPolynomial, ConstantPolynomial):
            continue
    return out


# 1 -----------------------------------------------------------------------
def test_criterion_01_circle_lift():
    circle = new_curve(P("x^2 + y^2 - 1"), "circle")
    gens = build_lift_system(circle, 2).generators
    want = [P("x^2 + y^2 - 1", QQ, 4), P("2*x + 2*y*z1", QQ, 4), P("2 + 2*z1^2 + 2*y*z2", QQ, 4)]
    ok = list(gens) == want and [g.terms() for g in gens] == [w.terms() for w in want]
    verdict(1, "circle lift generators are coefficient-identical", ok, "; ".join(map(str, gens[1:])))


# 2 -----------------------------------------------------------------------
def test_criterion_02_top_coefficient_is_fy():
    t0 = time.time()
    curves = random_curves(200, [QQ], 4, seed=2) + random_curves(200, [GF(5), GF(7), GF(11)], 4, seed=3)
    bad = []
    for c in curves:
        gens = build_lift_system(c, 3).generators
        for j in range(1, 4):
            # independent of the construction-time check: compare with f_y in the full ring
            if gens[j].diff(1 + j) != c.poly.diff(1).with_nvars(5):
                bad.append((c.label, j))
            # P_j must not involve z_i for i > j
            if any(gens[j].involves(1 + i) for i in range(j + 1, 4)):
                bad.append((c.label, j, "extra"))
    elapsed = time.time() - t0
    verdict(2, "dP_j/dz_j = f_y for 400 random curves, k = 3", not bad and elapsed < 60,
            f"{len(curves)} curves, {elapsed:.1f}s")


# 3 -----------------------------------------------------------------------
def test_criterion_03_jet_oracle():
    gen = rng(33)
    cases = 0
    mismatches = 0
    for n in range(200):
        F = [QQ, GF(5), GF(7), GF(13)][n % 4]
        k = int(gen.integers(1, 5 if F.p is None else min(F.p, 5)))
        deg = int(gen.integers(0, 7))
        coeffs = [int(v) for v in gen.integers(-9, 10, deg + 1)]
        if F.p is None and n % 8 == 0:
            coeffs = [Fraction(c, 3) for c in coeffs]
        g = UniPoly(F, coeffs)
        c = graph_of(g, f"g{n}")
        xs = range(F.p) if F.p else [0, 1, -1, 2, -3, Fraction(1, 2), Fraction(-2, 3)]
        for x in xs:
            x = F.norm(x)
            oracle = graph_jet(g, x, k)
            a = jet_at(c, (x, g(x)), k)
            b = jet_by_power_series(c, (x, g(x)), k)
            cases += 1
            mismatches += not (a == oracle == b)
    verdict(3, "jet_at = direct differentiation = power series on 200 graphs", mismatches == 0,
            f"{cases} points, {mismatches} mismatches")


# 4 -----------------------------------------------------------------------
def test_criterion_04_planted_orders():
    gen = rng(44)
    wrong = []
    total = 0
    for F in (QQ, GF(7), GF(11)):
        for m in range(1, 6):
            for _ in range(8):
                g = [int(v) for v in gen.integers(-5, 6, 5)]
                u = [int(v) for v in gen.integers(-5, 6, 3)]
                while F.norm(u[0]) == 0:
                    u[0] = int(gen.integers(-5, 6))
                G = UniPoly(F, g)
                H = G + UniPoly(F, [0] * m + u)
                a, b = graph_of(G, "g"), graph_of(H, "h")
                got = tangency_order_at(a, b, (0, G(0)), 5)
                total += 1
                if got != m - 1:
                    wrong.append((F, m, got))
    verdict(4, "planted differences t^m u(t) give order m - 1", not wrong, f"{total} pairs")


# 5 -----------------------------------------------------------------------
def test_criterion_05_count_oracle():
    t0 = time.time()
    cases = mismatches = 0
    for p in (3, 5, 7):
        for k in (1, 2):
            if p <= k:
                continue
            for seed in range(6):
                n = 2 + seed * 2 if seed < 5 else 12
                arr = random_graph_arrangement(n, 3, p, seed, k)
                cases += 1
                mismatches += count_tangencies(arr).total != naive_total(arr)
    for p, k in [(3, 1), (5, 1), (5, 2)]:
        arr = build_sharp_family(SharpFamilySpec(p, k))
        sub = arr.subset(arr.curves[:: max(1, len(arr) // 12)][:12])
        cases += 1
        mismatches += count_tangencies(sub).total != naive_total(sub)
    verdict(5, "count_tangencies equals the all-points all-pairs oracle", mismatches == 0,
            f"{cases} arrangements, {time.time() - t0:.1f}s")


# 6 -----------------------------------------------------------------------
def test_criterion_06_jet_bijection():
    results = []
    for p, k in SHARP_CASES:
        t0 = time.time()
        check = jet_realization_check(SharpFamilySpec(p, k))
        results.append((p, k, check.ok, check.jets_checked == p ** (k + 2), time.time() - t0))
    ok = all(r[2] and r[3] for r in results) and results[-1][4] < 60
    verdict(6, "every jet realised exactly once per family", ok,
            ", ".join(f"({p},{k}) {t:.2f}s" for p, k, _, _, t in results))


# 7 -----------------------------------------------------------------------
def test_criterion_07_sharpness():
    parts = []
    ok = True
    for p, k in SHARP_CASES:
        rep = sharpness_report(SharpFamilySpec(p, k))
        n = rep.size
        # sum_m >= n^((k+2)/(k+1)) / 4, exactly: (4 sum_m)^(k+1) >= n^(k+2)
        bound_ok = (4 * rep.sum_m) ** (k + 1) >= n ** (k + 2)
        ok &= bound_ok and rep.sum_m == rep.sum_m_by_jets and bool(rep.matches)
        parts.append(f"({p},{k}) sum_m={rep.sum_m} matches {'/'.join(rep.matches)}"
                     f"{'' if rep.displayed_formula_match else ', not p^(k+1)'}")
    verdict(7, "full-family sum_m >= |C'|^((k+2)/(k+1)) / 4", ok, "; ".join(parts))


# 8 -----------------------------------------------------------------------
def test_criterion_08_subsamples():
    rep = sharpness_report(SharpFamilySpec(5, 1), seeds=range(20))
    passed = sum(s.passed for s in rep.subsamples)
    verdict(8, "(5,1) quarter-subsamples reach 1/100 of |C|^(3/2)", passed >= 19, f"{passed}/20 seeds")


# 9 -----------------------------------------------------------------------
def c1_members(m, p, k, seed):
    spec = SharpFamilySpec(p, k)
    gen = rng(seed)
    seen, out = set(), []
    while len(out) < m:
        a = tuple(int(v) for v in gen.integers(0, p, k + 1))
        if a not in seen:
            seen.add(a)
            out.append(graph_of(sharp_polynomial(spec, 1, a), sharp_label(1, a)))
    return out


@pytest.mark.parametrize("k", [1, 2])
def test_criterion_09_fit_soundness_and_bound(k):
    rows = []
    ok = True
    for m in (1, 5, 10, 25, 50):
        t0 = time.time()
        curves = c1_members(m, 101, k, seed=9 + k)
        res = min_degree_vanishing(curves, k)
        bound = parameter_bound(curves, k)
        fresh_ok = all(
            res.polynomial.evaluate(j.coordinates()) == 0
            for c in curves
            for j in fresh_jets(c, k, res.degree, 25)
        )
        dt = time.time() - t0
        ok &= fresh_ok and res.degree <= bound and bool(res.polynomial) and dt < 300
        rows.append(f"m={m} d={res.degree}<={bound} {dt:.1f}s")
    verdict(9, f"fit vanishes on 25 fresh jets per curve within the degree bound (k={k})", ok, ", ".join(rows))


# 10 ----------------------------------------------------------------------
def tangency_pairs(p, k, jets):
    spec = SharpFamilySpec(p, k)
    out = []
    for w in jets:
        for i in (1, 2):
            a = solve_member(spec, i, w)
            out.append(graph_of(sharp_polynomial(spec, i, a), sharp_label(i, a)))
    return out


@pytest.mark.parametrize("k", [1, 2])
def test_criterion_10_corollary_witness(k):
    gen = rng(100 + k)
    p = 101
    jets = [tuple(int(v) for v in gen.integers(0, p, k + 2)) for _ in range(4)]
    # two pairs share a base point with a third curve through the same jet class
    curves = tangency_pairs(p, k, jets) + c1_members(4, p, k, seed=7)
    labels = set()
    curves = [c for c in curves if not (c.label in labels or labels.add(c.label))]
    res = min_degree_vanishing(curves, k)
    contained = all(c.contained for c in res.per_curve_certificates)
    checks = shared_jet_checks(res.polynomial, curves, k)
    zero = all(c.dz_value == 0 for c in checks)
    verdict(10, f"dP/dz_k vanishes at every shared jet (k={k})", contained and zero and len(checks) >= 4,
            f"{len(checks)} shared jets, deg P = {res.degree}, top-free {res.top_free}")


# 11 ----------------------------------------------------------------------
def rich_subfamily(p, size, seed):
    """size/2 C_1 curves, then C_2 curves each tangent to as many of them as possible."""
    spec = SharpFamilySpec(p, 1)
    gen = rng(seed)
    firsts = []
    while len(firsts) < size // 2:
        a = tuple(int(v) for v in gen.integers(0, p, 2))
        if a not in firsts:
            firsts.append(a)
    # y = x^2 + a1 x + a0 and y = 2x^2 + b1 x + b0 are tangent iff (b1 - a1)^2 = 4 (b0 - a0)
    scored = []
    for b0 in range(p):
        for b1 in range(p):
            hits = sum((b1 - a1) ** 2 % p == 4 * (b0 - a0) % p for a0, a1 in firsts)
            scored.append((-hits, b0, b1))
    seconds = [(b0, b1) for _, b0, b1 in sorted(scored)[: size - size // 2]]
    curves = [graph_of(sharp_polynomial(spec, 1, a), sharp_label(1, a)) for a in firsts]
    curves += [graph_of(sharp_polynomial(spec, 2, b), sharp_label(2, b)) for b in seconds]
    return curves


def test_criterion_11_cascade():
    curves = rich_subfamily(23, 10, seed=11)
    tangencies = count_tangencies(build_arrangement(curves, 1)).total
    res = cascade(curves, 1)
    if res.status == "complete":
        vanish = all(res.p0_vanishes.values())
        ok = bool(res.p0) and vanish and res.degree_check
        detail = f"P0 degree {res.p0.total_degree}, sum deg = {res.degree_sum}, vanishes on all: {vanish}"
    else:
        ok = False
        contained = sum(c.contained for c in res.levels[-1].dz_containment)
        detail = (f"DescentStopped at level {res.stopped_at}: P_1 has degree {res.degree} and involves z1; "
                  f"dP/dz1 contains {contained}/10 lifts; sum deg = {res.degree_sum}; "
                  f"{tangencies} tangency participations in the subfamily")
    verdict(11, "cascade descends to a bivariate P0 vanishing on all 10 curves", ok, detail)


def build_arrangement(curves, k):
    from tangency.count import Arrangement

    return Arrangement(curves[0].field, k, tuple(curves))


# 12 ----------------------------------------------------------------------
def test_criterion_12_bound_scan():
    k = 1
    target = (k + 2) / (k + 1)
    ns = list(range(10, 201, 10))
    worst_exp = 0.0
    worst_ratio = 0.0
    ok = True
    for seed in range(5):
        scan = bound_scan(lambda n, s: sharp_truncation(n, k, s), ns, k, seed, "sharp")
        ratio = max(r.total / r.n ** target for r in scan.rows)
        worst_exp = max(worst_exp, scan.exponent)
        worst_ratio = max(worst_ratio, ratio)
        ok &= scan.exponent <= target + 0.15 and ratio <= 1.0
    verdict(12, "sharp truncations grow no faster than n^((k+2)/(k+1) + 0.15)", ok,
            f"k=1, n=10..200, 5 seeds, max fitted exponent {worst_exp:.3f}, max total/n^1.5 {worst_ratio:.3f}")
