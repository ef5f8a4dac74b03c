"""Explicit non-identifiability witnesses, each checked with exact response equality."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional

from .errors import GraphError, InvalidEdgeFunction
from .graph_core import Edge, Graph
from .network import Network
from .polyfun import Poly, RationalLike, classify, shift_argument, to_rational
from .response import build_response, responses_equal


@dataclass(frozen=True)
class AmbiguityWitness:
    net_a: Network
    net_b: Network
    measured: frozenset[int]
    differing_edges: frozenset[Edge]

    def verify(self) -> bool:
        """Same response at every measured node, different functions on the listed edges."""
        for m in self.measured:
            if not responses_equal(build_response(self.net_a, m), build_response(self.net_b, m)):
                return False
        if not self.differing_edges:
            return False
        return all(self.net_a.fn(*e) != self.net_b.fn(*e) for e in self.differing_edges)

    def diff(self) -> str:
        labels = self.net_a.graph.labels
        lines = []
        for a, b in sorted(self.differing_edges):
            lines.append(f"edge {labels[a]} -> {labels[b]}:")
            lines.append(f"  a: {self.net_a.fn(a, b)}")
            lines.append(f"  b: {self.net_b.fn(a, b)}")
        return "\n".join(lines)


def _checked(witness: AmbiguityWitness) -> AmbiguityWitness:
    if not witness.verify():
        raise AssertionError("constructed witness failed verification")
    return witness


def gauge_pair(path_net: Network, i: int, gamma: RationalLike) -> AmbiguityWitness:
    """Add ``gamma`` to the edge entering interior node ``i`` and undo it inside
    the edge leaving ``i``; the sink response does not change.
    """
    gamma = to_rational(gamma)
    g = path_net.graph
    if not g.is_path():
        raise GraphError("gauge_pair needs a directed path graph")
    if gamma == 0:
        raise ValueError("gamma must be nonzero")
    order = g.path_order()
    if i not in order[1:-1]:
        raise ValueError(f"node {i} must be neither the source nor the sink")
    pos = order.index(i)
    into, out = (order[pos - 1], i), (i, order[pos + 1])
    net_b = path_net.replace({
        into: path_net.fn(*into) + gamma,
        out: shift_argument(path_net.fn(*out), -gamma),
    })
    return _checked(AmbiguityWitness(path_net, net_b, frozenset(g.sinks()), frozenset({into, out})))


BRIDGE_LABELS = ("1", "2", "3", "4")
BRIDGE_EDGES = ((0, 1), (0, 2), (1, 3), (2, 3))


def bridge_graph() -> Graph:
    """Node 1 feeds 2 and 3, which both feed the sink 4 (ids 0..3)."""
    return Graph(4, BRIDGE_EDGES, BRIDGE_LABELS)


def bridge_network(f21: Poly, f31: Poly, f42: Poly, f43: Poly) -> Network:
    return Network(bridge_graph(), {(0, 1): f21, (0, 2): f31, (1, 3): f42, (2, 3): f43})


def linear_bridge_pair(alpha: RationalLike, beta: RationalLike, gamma_c: RationalLike, delta: RationalLike) -> AmbiguityWitness:
    """Two linear parameterizations of the bridge with identical sink response.

    With ``f21 = beta x, f31 = delta x, f42 = alpha x, f43 = gamma_c x`` the sink
    only sees ``alpha*beta + gamma_c*delta`` on ``u_1[k-3]``. Moving along
    ``(beta + t gamma_c, delta - t alpha)`` keeps it fixed; ``t`` is the first
    of 1, -1, 2 that keeps both edges nonzero.
    """
    alpha, beta, gamma_c, delta = map(to_rational, (alpha, beta, gamma_c, delta))
    if alpha == 0 or gamma_c == 0:
        raise InvalidEdgeFunction("alpha and gamma_c must be nonzero")
    if beta == 0 or delta == 0:
        raise InvalidEdgeFunction("beta and delta must be nonzero")
    for t in (1, -1, 2):
        beta2, delta2 = beta + t * gamma_c, delta - t * alpha
        if beta2 and delta2:
            break
    lin = Poly.monomial
    net_a = bridge_network(lin(1, beta), lin(1, delta), lin(1, alpha), lin(1, gamma_c))
    net_b = bridge_network(lin(1, beta2), lin(1, delta2), lin(1, alpha), lin(1, gamma_c))
    return _checked(AmbiguityWitness(net_a, net_b, frozenset({3}), frozenset({(0, 1), (0, 2)})))


# Integer points (u1[k-3], u2[k-2], u3[k-2]) for fingerprinting bridge
# responses. Equal canonical responses always give equal fingerprints;
# fingerprint collisions are settled exactly.
_FINGERPRINT_POINTS = ((1, 2, -3), (-2, 5, 7), (3, -1, 2), (7, 11, -4))


def _int_eval(coeffs: tuple[int, ...], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def bounded_polys(coeff_range: Iterable[int] = range(-2, 3), max_degree: int = 2, nonlinear: bool = True) -> list[Poly]:
    """Every zero-at-origin polynomial with coefficients from ``coeff_range``."""
    out = []
    for cs in product(list(coeff_range), repeat=max_degree):
        p = Poly((0,) + cs)
        if p.is_zero() or (nonlinear and p.degree() < 2):
            continue
        out.append(p)
    return out


@dataclass
class SweepResult:
    networks: int
    collisions_checked: int
    ambiguous_pairs: list[tuple[Network, Network]]


def bridge_sweep(
    coeff_range: Iterable[int] = range(-2, 3),
    max_degree: int = 2,
    nonlinear: bool = True,
    stop_after: Optional[int] = None,
) -> SweepResult:
    """Exhaustively look for distinct bridge networks with equal sink response.

    Networks are bucketed by fingerprint; only networks sharing a bucket are
    compared canonically.
    """
    polys = bounded_polys(coeff_range, max_degree, nonlinear)
    ints = [tuple(int(c) for c in p.coeffs) for p in polys]
    buckets: dict[tuple, list[tuple[Poly, ...]]] = {}
    count = 0
    for idx in product(range(len(polys)), repeat=4):
        count += 1
        c21, c31, c42, c43 = (ints[k] for k in idx)
        key = tuple(
            _int_eval(c42, u2 + _int_eval(c21, u1)) + _int_eval(c43, u3 + _int_eval(c31, u1))
            for u1, u2, u3 in _FINGERPRINT_POINTS
        )
        buckets.setdefault(key, []).append(tuple(polys[k] for k in idx))
    ambiguous: list[tuple[Network, Network]] = []
    checked = 0
    for members in buckets.values():
        if len(members) < 2:
            continue
        canon = [(fs, build_response(bridge_network(*fs), 3)) for fs in members]
        for a in range(len(canon)):
            for b in range(a + 1, len(canon)):
                checked += 1
                if responses_equal(canon[a][1], canon[b][1]):
                    ambiguous.append((bridge_network(*canon[a][0]), bridge_network(*canon[b][0])))
                    if stop_after is not None and len(ambiguous) >= stop_after:
                        return SweepResult(count, checked, ambiguous)
    return SweepResult(count, checked, ambiguous)


def gauge_leaves_fz(witness: AmbiguityWitness) -> bool:
    """The gauge moves the edge entering the interior node out of the zero-at-origin class."""
    g = witness.net_a.graph
    order = g.path_order()
    entering = [e for e in witness.differing_edges if e[1] in order[1:-1]]
    return all(not classify(witness.net_b.fn(*e)).in_fz for e in entering)
