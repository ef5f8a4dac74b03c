"""Constructive identification of edge polynomials from measured responses.

Measured nodes are exposed as black-box :class:`ResponseOracle` objects. The
incoming edges of a measured node are read off single-input slices of its
response; peeling an identified edge then yields a *virtual* oracle for the
upstream node, and the recursion continues until every edge is known.
"""

from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional

from .errors import (
    AmbiguityError,
    DegreeTooLow,
    InconsistentSamples,
    SizeLimitExceeded,
    UnreachedEdge,
)
from .graph_core import Edge, Graph
from .network import Network
from .polyfun import FunctionClass, Poly, interpolate, recover_shift, sample_points, shift_argument, to_rational
from .response import Assignment, DelayedInput, MPoly, build_response, eval_response, evaluate_response

DEFAULT_DEGREE_BOUND = 4


class ResponseOracle:
    """Memoizing evaluator of one node's response ``F_target``.

    ``evaluate`` receives a dict containing only the nonzero inputs.
    ``queries`` counts evaluations that missed the memo table.
    """

    def __init__(
        self,
        target: int,
        evaluate: Callable[[dict[DelayedInput, Fraction]], Fraction],
        degree_bound: int = DEFAULT_DEGREE_BOUND,
        mpoly: Optional[MPoly] = None,
        virtual: bool = False,
    ):
        self.target = target
        self.evaluate = evaluate
        self.degree_bound = degree_bound
        self.mpoly = mpoly
        self.virtual = virtual
        self.queries = 0
        self._memo: dict[frozenset, Fraction] = {}

    def __call__(self, assignment: Assignment) -> Fraction:
        clean = {DelayedInput(*v): to_rational(x) for v, x in assignment.items() if x}
        key = frozenset(clean.items())
        hit = self._memo.get(key)
        if hit is None:
            self.queries += 1
            hit = self._memo[key] = to_rational(self.evaluate(clean))
        return hit

    def __repr__(self) -> str:
        kind = "virtual" if self.virtual else "measured"
        return f"<ResponseOracle {kind} node={self.target} bound={self.degree_bound}>"


def oracle_from_network(net: Network, i: int, degree_bound: int = DEFAULT_DEGREE_BOUND) -> ResponseOracle:
    """Oracle that evaluates ``F_i`` numerically from hidden ground truth."""
    net.graph._check(i)
    return ResponseOracle(i, lambda a: evaluate_response(net, i, a), degree_bound)


def oracle_from_mpoly(F: MPoly, i: int, degree_bound: int = DEFAULT_DEGREE_BOUND) -> ResponseOracle:
    """Oracle backed by an expanded canonical response."""
    return ResponseOracle(i, lambda a: eval_response(F, a), degree_bound, mpoly=F)


def measured_oracles(
    net: Network,
    measured: Optional[Iterable[int]] = None,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
    canonical: bool = False,
) -> dict[int, ResponseOracle]:
    """Oracles for ``measured`` nodes (default: the sinks) of a ground-truth network."""
    nodes = sorted(net.graph.sinks() if measured is None else set(measured))
    if canonical:
        return {m: oracle_from_mpoly(build_response(net, m), m, degree_bound) for m in nodes}
    return {m: oracle_from_network(net, m, degree_bound) for m in nodes}


@dataclass(frozen=True)
class MeasurementPlan:
    """``sufficient`` is None when sufficiency of ``required`` is not known."""

    required: frozenset[int]
    sufficient: Optional[bool]
    rationale: str


def measurement_plan(g: Graph, cls: FunctionClass) -> MeasurementPlan:
    """Which nodes must be measured for identifiability in ``cls``."""
    g.topological_order()
    sinks = g.sinks()
    if cls is FunctionClass.GENERAL:
        if g.is_path():
            return MeasurementPlan(frozenset(g.nodes) - g.sources() | sinks, True, "path-general: every non-source node")
        return MeasurementPlan(sinks, None, "sinks-necessary: sinks are a lower bound, sufficiency unknown")
    if cls is FunctionClass.FZNL:
        return MeasurementPlan(sinks, True, "dag-fznl: sinks are necessary and sufficient")
    if g.is_path():
        return MeasurementPlan(sinks, True, "path-fz: the sink is necessary and sufficient")
    if g.is_forest():
        return MeasurementPlan(sinks, True, "tree-fz: sinks are necessary and sufficient")
    return MeasurementPlan(sinks, None, "dag-fz-open: sinks are necessary, sufficiency unknown")


def identify_incoming(oracle: ResponseOracle, g: Graph, i: int, degree_bound: Optional[int] = None) -> dict[int, Poly]:
    """Recover ``f_{i,j}`` for every in-neighbour ``j`` of ``i``.

    With every other input at zero the response reduces to ``f_{i,j}(u_j[k-2])``
    for zero-at-origin edge functions, so interpolating that slice recovers the
    edge. One extra sample beyond the bound checks the bound.
    """
    bound = oracle.degree_bound if degree_bound is None else degree_bound
    if oracle(dict()) != 0:
        raise InconsistentSamples(f"response of node {g.label(i)} is nonzero at the origin; edges are not zero at the origin")
    out = {}
    for j in sorted(g.in_neighbors(i)):
        var = DelayedInput(j, 2)
        samples = [(t, oracle({var: t})) for t in sample_points(bound + 2)]
        f = interpolate(samples, bound)
        if f.is_zero():
            raise InconsistentSamples(f"edge {g.label(j)}->{g.label(i)} looks like the zero function")
        out[j] = f
    return out


class PeelMode(enum.Enum):
    TREE = "tree"
    DAG = "dag"


def tree_peel_admissible(g: Graph, i: int, j: int) -> bool:
    """Zeroing the other branches of ``i`` removes them entirely from a ``j`` slice.

    Holds when no other in-neighbour of ``i`` shares an ancestor with ``j``.
    """
    anc_j = g.ancestors(j)
    return all(not (g.ancestors(l) & anc_j) and j not in g.ancestors(l) for l in g.in_neighbors(i) - {j})


def peel_upstream(
    oracle: ResponseOracle,
    g: Graph,
    i: int,
    j: int,
    f_ij: Poly,
    mode: PeelMode,
) -> ResponseOracle:
    """Virtual oracle for node ``j`` built from the oracle of its child ``i``.

    For an assignment ``y`` of ``j``'s inputs the oracle of ``i`` is sampled
    along ``u_j[k-2]`` with ``y`` delayed by one step. The slice equals
    ``f_ij(t + F_j(y)) + K``; ``F_j(y)`` is the argument shift. In DAG mode
    ``K`` may be any constant and the shift is read off the top coefficients,
    which needs ``deg f_ij >= 2``. Tree mode requires ``K = 0`` and therefore
    disjoint branches, but also accepts linear edges.
    """
    if j not in g.in_neighbors(i):
        raise ValueError(f"{j} is not an in-neighbour of {i}")
    mode = PeelMode(mode)
    d = f_ij.degree()
    if mode is PeelMode.DAG and d < 2:
        raise DegreeTooLow(
            f"edge {g.label(j)}->{g.label(i)} is linear: in a DAG its shift cannot be separated from other branches"
        )
    if mode is PeelMode.TREE and not tree_peel_admissible(g, i, j):
        raise AmbiguityError(f"branches into node {g.label(i)} share ancestors with {g.label(j)}; tree peeling does not apply")
    if d < 1:
        raise DegreeTooLow(f"edge {g.label(j)}->{g.label(i)} is constant")
    slice_var = DelayedInput(j, 2)
    points = sample_points(d + 1)

    def evaluate(y: dict[DelayedInput, Fraction]) -> Fraction:
        base = {DelayedInput(v.node, v.delay + 1): x for v, x in y.items() if v.delay >= 2}
        samples = []
        for t in points:
            query = dict(base)
            query[slice_var] = t
            samples.append((t, oracle(query)))
        s = interpolate(samples, d)
        if d == 1:
            if s.coeff(1) != f_ij.coeff(1):
                raise InconsistentSamples(f"slope through edge {g.label(j)}->{g.label(i)} disagrees with {f_ij}")
            return (s.coeff(0) - f_ij.coeff(0)) / f_ij.coeff(1)
        return recover_shift(f_ij, s, up_to_constant=mode is PeelMode.DAG)

    return ResponseOracle(j, evaluate, oracle.degree_bound, virtual=True)


@dataclass
class IdentificationReport:
    network: Network
    measured: tuple[int, ...]
    queries: int
    verification: str
    routes: dict[int, str] = field(default_factory=dict)


def _choose_mode(cls: FunctionClass, g: Graph, i: int, j: int, f: Poly) -> PeelMode:
    if f.degree() >= 2 or cls is FunctionClass.FZNL:
        return PeelMode.DAG
    return PeelMode.TREE


def run_identification(
    oracles: Mapping[int, ResponseOracle],
    g: Graph,
    cls: FunctionClass,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
    *,
    check_points: int = 12,
    seed: int = 0,
) -> IdentificationReport:
    """Identify every edge of ``g`` from the measured ``oracles``.

    Raises AmbiguityError when the measurements cannot pin the network down
    (unmeasured sinks, linear edges across shared branches, general-class
    paths without intermediate measurements).
    """
    g.topological_order()
    measured = tuple(sorted(oracles))
    for m in measured:
        g._check(m)
    start = sum(o.queries for o in oracles.values())
    if cls is FunctionClass.GENERAL:
        fns, routes = _identify_general_path(oracles, g, degree_bound)
    else:
        fns, routes = _identify_zero_class(oracles, g, cls, degree_bound)
    missing = sorted(set(g.edges) - set(fns))
    if missing:
        raise UnreachedEdge(f"edges {missing} were not reached")
    recovered = Network(g, fns)
    verification = _cross_check(recovered, oracles, check_points, seed)
    queries = sum(o.queries for o in oracles.values()) - start
    return IdentificationReport(recovered, measured, queries, verification, routes)


def identify_network(
    oracles: Mapping[int, ResponseOracle],
    g: Graph,
    cls: FunctionClass,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
    **kwargs,
) -> Network:
    return run_identification(oracles, g, cls, degree_bound, **kwargs).network


def _identify_zero_class(oracles, g: Graph, cls: FunctionClass, degree_bound: int):
    unmeasured = sorted(g.sinks() - set(oracles))
    if unmeasured:
        raise AmbiguityError(
            f"sink(s) {', '.join(g.label(k) for k in unmeasured)} are not measured; their incoming edges appear in no measured response"
        )
    fns: dict[Edge, Poly] = {}
    oracle_at = dict(oracles)
    routes = {m: "measured" for m in oracles}
    failures: dict[int, str] = {}
    # breadth-first from the measured nodes keeps peeling chains short
    queue = deque(sorted(oracles))
    done: set[int] = set()
    while queue:
        i = queue.popleft()
        if i in done:
            continue
        done.add(i)
        if not g.in_neighbors(i):
            continue
        incoming = identify_incoming(oracle_at[i], g, i, degree_bound)
        for j, f in incoming.items():
            fns[(j, i)] = f
        for j, f in incoming.items():
            if j in oracle_at or not g.in_neighbors(j):
                continue
            if cls is FunctionClass.FZNL and f.degree() < 2:
                raise AmbiguityError(f"edge {g.label(j)}->{g.label(i)} = {f} is linear, outside the nonlinear class")
            mode = _choose_mode(cls, g, i, j, f)
            try:
                oracle_at[j] = peel_upstream(oracle_at[i], g, i, j, f, mode)
            except AmbiguityError as exc:
                failures.setdefault(j, str(exc))
                continue
            routes[j] = f"peeled from {g.label(i)} ({mode.value})"
            queue.append(j)
    stuck = sorted(j for j in g.nodes if g.in_neighbors(j) and j not in done)
    if stuck and failures:
        reasons = "; ".join(failures[j] for j in stuck if j in failures)
        names = ", ".join(g.label(j) for j in stuck)
        raise AmbiguityError(f"cannot reach the incoming edges of node(s) {names}: {reasons}")
    return fns, routes


def _identify_general_path(oracles, g: Graph, degree_bound: int):
    if not g.is_path():
        raise AmbiguityError("in the general class identification is only constructed for path graphs")
    needed = set(g.nodes) - g.sources()
    missing = sorted(needed - set(oracles))
    if missing:
        raise AmbiguityError(
            f"node(s) {', '.join(g.label(k) for k in missing)} are not measured: adding a constant to an edge and subtracting it "
            "inside the next edge leaves every downstream response unchanged"
        )
    order = g.path_order()
    fns = {}
    for prev, i in zip(order, order[1:]):
        offset = oracles[prev]({}) if prev in oracles else Fraction(0)
        var = DelayedInput(prev, 2)
        samples = [(t, oracles[i]({var: t})) for t in sample_points(degree_bound + 2)]
        fns[(prev, i)] = shift_argument(interpolate(samples, degree_bound), -offset)
    return fns, {m: "measured" for m in oracles}


def _cross_check(recovered: Network, oracles, check_points: int, seed: int) -> str:
    """Compare each measured response of the recovered network with its oracle.

    Canonical forms are compared when the oracle exposes one; otherwise the two
    agree at ``check_points`` pseudo-random integer assignments.
    """
    rng = random.Random(seed)
    kinds = set()
    g = recovered.graph
    for m in sorted(oracles):
        o = oracles[m]
        if o.mpoly is not None:
            try:
                if build_response(recovered, m, cap=o.mpoly.cap) != o.mpoly:
                    raise InconsistentSamples(f"recovered response of node {g.label(m)} differs from the measurement")
                kinds.add("canonical")
                continue
            except SizeLimitExceeded:
                pass
        depth = g.max_depth_to(m)
        variables = [DelayedInput(a, d) for a in sorted(g.ancestors(m)) for d in range(2, depth + 2)]
        for _ in range(check_points):
            point = {v: rng.randint(-2, 2) for v in variables}
            if evaluate_response(recovered, m, point) != o(point):
                raise InconsistentSamples(f"recovered response of node {g.label(m)} differs from the measurement")
        kinds.add("sampled")
    return "+".join(sorted(kinds)) or "none"
