import pytest

from tangency.algebra import GF, QQ, MultiPoly, UniPoly, parse_poly
from tangency.curves import graph_of, new_curve

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def P(text, field=QQ, nvars=2):
    return parse_poly(text, field, nvars)


def graph(coeffs, field=QQ, label=""):
    return graph_of(UniPoly(field, list(coeffs)), label)


def curve(text, field=QQ, label=""):
    return new_curve(parse_poly(text, field, 2), label)


@pytest.fixture
def circle():
    return curve("x^2 + y^2 - 1", QQ, "circle")


def naive_total(arr):
    """Sum of m_k by scanning all of F_p^2 and every curve pair.

    Graph curves only: jets come from differentiating g directly.
    """
    from itertools import combinations

    from tangency.lift import graph_jet

    p, k = arr.field.p, arr.k
    total = 0
    for x in range(p):
        for y in range(p):
            on = [c for c in arr.curves if c.graph(x) == y]
            jets = {c.label: graph_jet(c.graph, x, k).derivatives for c in on}
            part = set()
            for a, b in combinations(on, 2):
                if jets[a.label] == jets[b.label]:
                    part.update((a.label, b.label))
            total += len(part)
    return total


def random_graphs(n, max_deg, p, seed, k):
    from tangency.extremal import random_graph_arrangement

    return random_graph_arrangement(n, max_deg, p, seed, k)
