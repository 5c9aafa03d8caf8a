from math import comb

import pytest

from conftest import P, curve, graph
from tangency.algebra import GF, QQ, MultiPoly, UniPoly
from tangency.curves import graph_of
from tangency.errors import ArityMismatch, EmptyInput, InsufficientFieldPoints
from tangency.extremal import SharpFamilySpec, rng, sharp_label, sharp_polynomial, solve_member
from tangency.fit import (
    cascade,
    constraint_system,
    contains_lift,
    dz_top,
    fit_at_degree,
    fresh_jets,
    has_kernel_at,
    min_degree_vanishing,
    parameter_bound,
    shared_jet_checks,
    vanishes_on_curve,
)
from tangency.lift import build_lift_system


def c1_members(m, p=101, k=1, seed=5):
    spec = SharpFamilySpec(p, k)
    gen = rng(seed)
    seen, out = set(), []
    while len(out) < m:
        a = tuple(int(v) for v in gen.integers(0, p, k + 1))
        if a not in seen:
            seen.add(a)
            out.append(graph_of(sharp_polynomial(spec, 1, a), sharp_label(1, a)))
    return out


def test_fit_of_the_x_axis():
    res = min_degree_vanishing([graph([0])], 1)
    assert res.degree == 1
    assert res.kernel_dimension == 2
    span = {P("y", QQ, 3), P("z1", QQ, 3)}
    assert res.polynomial in span
    assert all(c.contained for c in res.per_curve_certificates)


def test_fit_of_the_circle(circle):
    res = min_degree_vanishing([circle], 1)
    assert res.degree == 2 and res.minimality_certified
    assert res.polynomial == P("x^2 + y^2 - 1", QQ, 3)
    plain = min_degree_vanishing([circle], 1, prefer_top_free=False)
    assert plain.degree == 2
    f, P1 = build_lift_system(circle, 1).generators
    for cand in (f, P1, plain.polynomial):
        assert all(cand.evaluate(j.coordinates()) == 0 for j in fresh_jets(circle, 1, 2, 10))


def test_minimality_certificate():
    curves = c1_members(6)
    res = min_degree_vanishing(curves, 1)
    assert has_kernel_at(curves, 1, res.degree)
    assert not has_kernel_at(curves, 1, res.degree - 1)


def test_fit_needs_enough_field_points():
    from tangency.extremal import random_graph_arrangement

    curves = list(random_graph_arrangement(20, 3, 5, seed=1).curves)
    with pytest.raises(InsufficientFieldPoints):
        min_degree_vanishing(curves, 1)


def test_fit_over_q_general_curves():
    curves = [curve("x^2 + y^2 - 1", QQ, "circle"), curve("x*y - 1", QQ, "hyperbola")]
    res = min_degree_vanishing(curves, 1)
    for c in curves:
        assert contains_lift(res.polynomial, c, 1)
    assert not has_kernel_at(curves, 1, res.degree - 1)


def test_contains_lift_examples(circle):
    P1 = build_lift_system(circle, 1).generators[1]
    assert contains_lift(P1, circle, 1)
    parabola = graph([0, 0, 1])
    assert not contains_lift(P("z1", QQ, 3), parabola, 1)
    assert contains_lift(P("z1 - 2*x", QQ, 3), parabola, 1)
    with pytest.raises(ArityMismatch):
        contains_lift(P("z2", QQ, 4), parabola, 1)


def test_dz_top_examples():
    assert dz_top(P("2 + 2*z1^2 + 2*y*z2", QQ, 4), 2) == P("2*y", QQ, 4)
    assert not dz_top(P("x*y + z1", QQ, 4), 2)
    assert dz_top(P("z2^2", QQ, 4), 2) == P("2*z2", QQ, 4)
    f = P("x*z2^3 + y*z1", QQ, 4)
    assert dz_top(f * 5, 2) == dz_top(f, 2) * 5


def test_soundness_on_fresh_jets():
    for k in (1, 2):
        curves = c1_members(5, k=k, seed=k)
        res = min_degree_vanishing(curves, k)
        for c in curves:
            jets = fresh_jets(c, k, res.degree, 25)
            assert len(jets) == 25
            assert all(res.polynomial.evaluate(j.coordinates()) == 0 for j in jets)


@pytest.mark.parametrize("m", range(1, 51))
def test_parameter_count_bound(m):
    curves = c1_members(m)
    res = min_degree_vanishing(curves, 1)
    d, k = res.degree, 1
    assert d <= parameter_bound(curves, k)
    assert comb(d + k + 2, k + 2) <= res.constraints_used + comb(d - 1 + k + 2, k + 2)


def test_corollary_witness_values():
    spec = SharpFamilySpec(23, 1)
    curves = []
    for w in [(0, 0, 0), (1, 2, 3), (2, 5, 1)]:
        for i in (1, 2):
            a = solve_member(spec, i, w)
            curves.append(graph_of(sharp_polynomial(spec, i, a), sharp_label(i, a)))
    res = min_degree_vanishing(curves, 1)
    checks = shared_jet_checks(res.polynomial, curves, 1)
    assert len(checks) >= 3
    assert all(c.dz_value == 0 for c in checks)


def test_cascade_on_the_x_axis():
    res = cascade([graph([0], label="axis")], 1)
    assert res.status == "complete"
    assert res.p0 == P("y")
    assert res.p0_vanishes == {"axis": True}


def test_cascade_on_a_single_circle_reports_its_status(circle):
    res = cascade([circle], 1)
    # the kernel at degree 2 holds x^2 + y^2 - 1, which is z1-free, so the descent completes
    assert res.status == "complete"
    assert res.p0 == P("x^2 + y^2 - 1")
    assert vanishes_on_curve(res.p0, circle)


def test_cascade_stops_on_a_single_parabola():
    res = cascade([graph([0, 0, 1], label="parabola")], 1)
    # the only degree-1 polynomial on the lift (t, t^2, 2t) is z1 - 2x
    assert res.status == "DescentStopped" and res.stopped_at == 1
    assert res.levels[0].fit.polynomial == P("x - 1/2*z1", QQ, 3)
    assert res.p0 is None


def test_cascade_empty_input():
    with pytest.raises(EmptyInput):
        cascade([], 1)
