import sys
from fractions import Fraction

import pytest
import sympy
from hypothesis import settings

from netident import Network, Poly
from netident.counterexamples import bridge_network

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

X = Poly.x()
X2 = Poly.monomial(2)
X3 = Poly.monomial(3)


@pytest.fixture
def triangle_net():
    """Nodes 1, 2, 3 -> ids 0, 1, 2; f21 = x^2, f32 = x, f31 = x."""
    return Network.from_edges(3, {(0, 1): X2, (1, 2): X, (0, 2): X}, ["1", "2", "3"])


@pytest.fixture
def bridge_quadratic():
    p = Poly([0, 1, 1])
    return bridge_network(p, p, p, p)


def path_network(*fns):
    n = len(fns) + 1
    return Network.from_edges(n, {(k, k + 1): f for k, f in enumerate(fns)}, [str(k + 1) for k in range(n)])


def sympy_response(net, i):
    """Independent oracle: unroll the time-stepping model symbolically.

    Outputs start at zero; after enough steps y_i[k] - u_i[k-1] is the response,
    with u_j[t] renamed to the delay k - t.
    """
    g = net.graph
    n = g.node_count
    k = g.max_depth_to(i) + 2
    u = [[sympy.Symbol(f"u_{j}_{t}") for t in range(k)] for j in range(n)]
    y = [[sympy.Integer(0)] * (k + 1) for _ in range(n)]
    for t in range(1, k + 1):
        for node in range(n):
            acc = u[node][t - 1]
            for j in g.in_neighbors(node):
                coeffs = net.fn(j, node).coeffs
                acc += sum(sympy.Rational(c.numerator, c.denominator) * y[j][t - 1] ** e for e, c in enumerate(coeffs))
            y[node][t] = sympy.expand(acc)
    expr = sympy.expand(y[i][k] - u[i][k - 1])
    rename = {u[j][t]: sympy.Symbol(f"v_{j}_{k - t}") for j in range(n) for t in range(k)}
    return sympy.expand(expr.xreplace(rename))


def mpoly_to_sympy(F):
    total = sympy.Integer(0)
    for mono, c in F.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, e in mono:
            term *= sympy.Symbol(f"v_{v.node}_{v.delay}") ** e
        total += term
    return sympy.expand(total)


def frac(s):
    return Fraction(s)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.section("acceptance")
        for line in lines:
            terminalreporter.write_line(line)
