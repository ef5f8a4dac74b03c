"""Measured-node response functions as canonical multivariate polynomials.

A node's output is its own delayed excitation plus a polynomial ``F_i`` in the
delayed excitations ``u_j[k-s]`` of its ancestors. ``F_i`` is built by
structural recursion over the DAG and kept fully expanded, so two responses
are equal exactly when their canonical forms are.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Optional

from .errors import SizeLimitExceeded
from .network import Network
from .polyfun import Poly, RationalLike, recover_shift, shift_argument, to_rational

DEFAULT_TERM_CAP = 10**6
TERM_CAP_ENV = "NETIDENT_TERM_CAP"


class DelayedInput(NamedTuple):
    """The excitation of ``node`` delayed by ``delay`` steps, ``u_node[k-delay]``."""

    node: int
    delay: int

    def __str__(self) -> str:
        return f"u{self.node}[k-{self.delay}]"


Monomial = tuple[tuple[DelayedInput, int], ...]
Assignment = Mapping[DelayedInput, RationalLike]


def default_term_cap() -> int:
    raw = os.environ.get(TERM_CAP_ENV)
    return int(raw) if raw else DEFAULT_TERM_CAP


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for v, e in b:
        merged[v] = merged.get(v, 0) + e
    return tuple(sorted(merged.items()))


class MPoly:
    """Sparse polynomial over :class:`DelayedInput` variables.

    ``terms`` maps a monomial (sorted ``(variable, exponent)`` pairs, the empty
    tuple being the constant monomial) to a nonzero Fraction.
    """

    __slots__ = ("terms", "cap")

    def __init__(self, terms: Optional[Mapping[Monomial, RationalLike]] = None, cap: Optional[int] = None):
        self.cap = cap if cap is not None else default_term_cap()
        clean = {}
        for mono, c in (terms or {}).items():
            c = to_rational(c)
            if c:
                clean[tuple(sorted(mono))] = c
        self._check_cap(len(clean))
        self.terms: dict[Monomial, Fraction] = clean

    def _check_cap(self, size: int) -> None:
        if size > self.cap:
            raise SizeLimitExceeded(f"expanded response has more than {self.cap} terms")

    @classmethod
    def _raw(cls, terms: dict, cap: int) -> MPoly:
        out = cls.__new__(cls)
        out.cap = cap
        out._check_cap(len(terms))
        out.terms = terms
        return out

    @classmethod
    def constant(cls, c: RationalLike, cap: Optional[int] = None) -> MPoly:
        return cls({(): c}, cap)

    @classmethod
    def var(cls, node: int, delay: int, cap: Optional[int] = None) -> MPoly:
        return cls({((DelayedInput(node, delay), 1),): 1}, cap)

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> frozenset[DelayedInput]:
        return frozenset(v for mono in self.terms for v, _ in mono)

    def total_degree(self) -> int:
        return max((sum(e for _, e in mono) for mono in self.terms), default=-1)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> MPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return MPoly._raw(out, self.cap)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly._raw({m: -c for m, c in self.terms.items()}, self.cap)

    def __sub__(self, other) -> MPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> MPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> MPoly:
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = _mono_mul(ma, mb)
                out[mono] = out.get(mono, 0) + ca * cb
            if len(out) > self.cap:
                raise SizeLimitExceeded(f"expanded response has more than {self.cap} terms")
        return MPoly._raw({m: c for m, c in out.items() if c}, self.cap)

    __rmul__ = __mul__

    def _coerce(self, other) -> MPoly:
        if isinstance(other, MPoly):
            return other
        return MPoly.constant(other, self.cap)

    def __repr__(self) -> str:
        return f"MPoly({self})"

    def __str__(self) -> str:
        return format_mpoly(self)


def format_mpoly(F: MPoly, labels: Optional[Mapping[int, str]] = None) -> str:
    """Render with canonically sorted terms; variables print as ``u{node}[k-{delay}]``."""
    if F.is_zero():
        return "0"

    def var(v: DelayedInput) -> str:
        name = labels[v.node] if labels is not None else v.node
        return f"u{name}[k-{v.delay}]"

    out = ""
    for idx, mono in enumerate(sorted(F.terms)):
        c = F.terms[mono]
        factors = [var(v) if e == 1 else f"{var(v)}^{e}" for v, e in mono]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if idx == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def delay_shift(F: MPoly, s: int) -> MPoly:
    """Delay every variable of ``F`` by ``s`` more steps."""
    if s < 0:
        raise ValueError("delay shift must be non-negative")
    if s == 0:
        return F
    terms = {
        tuple((DelayedInput(v.node, v.delay + s), e) for v, e in mono): c
        for mono, c in F.terms.items()
    }
    return MPoly._raw(terms, F.cap)


def compose(p: Poly, X: MPoly) -> MPoly:
    """``p(X)`` fully expanded, by Horner's rule."""
    acc = MPoly({}, X.cap)
    for c in reversed(p.coeffs):
        acc = acc * X + c
    return acc


def build_all_responses(net: Network, nodes: Optional[Iterable[int]] = None, cap: Optional[int] = None) -> dict[int, MPoly]:
    """Responses of ``nodes`` (default: all) and of every ancestor they need."""
    g = net.graph
    cap = cap if cap is not None else default_term_cap()
    wanted = set(g.nodes) if nodes is None else set(nodes)
    for i in list(wanted):
        wanted |= g.ancestors(i)
    resp: dict[int, MPoly] = {}
    for i in g.topological_order():
        if i not in wanted:
            continue
        F = MPoly({}, cap)
        for j in sorted(g.in_neighbors(i)):
            arg = MPoly.var(j, 2, cap) + delay_shift(resp[j], 1)
            F = F + compose(net.fn(j, i), arg)
        resp[i] = F
    return resp


def build_response(net: Network, i: int, cap: Optional[int] = None) -> MPoly:
    """The response ``F_i`` of node ``i`` as a canonical MPoly."""
    net.graph._check(i)
    return build_all_responses(net, [i], cap)[i]


def eval_response(F: MPoly, assignment: Assignment) -> Fraction:
    """Value of ``F``; variables missing from ``assignment`` are zero."""
    vals = {v: to_rational(x) for v, x in assignment.items()}
    total = Fraction(0)
    for mono, c in F.terms.items():
        term = c
        for v, e in mono:
            x = vals.get(v)
            if not x:
                term = 0
                break
            term *= x**e
        total += term
    return total


def partial_eval(F: MPoly, assignment: Assignment) -> MPoly:
    """Substitute the assigned variables, leaving the rest symbolic."""
    vals = {v: to_rational(x) for v, x in assignment.items()}
    out: dict[Monomial, Fraction] = {}
    for mono, c in F.terms.items():
        keep = []
        for v, e in mono:
            if v in vals:
                c *= vals[v] ** e
            else:
                keep.append((v, e))
        if c:
            key = tuple(keep)
            out[key] = out.get(key, 0) + c
    return MPoly._raw({m: c for m, c in out.items() if c}, F.cap)


def responses_equal(F: MPoly, G: MPoly) -> bool:
    """Exact structural equality of canonical forms."""
    return F.terms == G.terms


def restrict_to_single_input(F: MPoly, j: int, delay: int) -> Poly:
    """Univariate polynomial in ``u_j[k-delay]`` with all other inputs zeroed."""
    target = DelayedInput(j, delay)
    coeffs: dict[int, Fraction] = {}
    for mono, c in F.terms.items():
        if not mono:
            coeffs[0] = coeffs.get(0, 0) + c
        elif len(mono) == 1 and mono[0][0] == target:
            e = mono[0][1]
            coeffs[e] = coeffs.get(e, 0) + c
    if not coeffs:
        return Poly()
    return Poly(coeffs.get(n, 0) for n in range(max(coeffs) + 1))


def univariate_slice(F: MPoly, var: DelayedInput) -> Poly:
    """View an MPoly whose only variable is ``var`` as a Poly."""
    coeffs: dict[int, Fraction] = {}
    for mono, c in F.terms.items():
        if not mono:
            e = 0
        elif len(mono) == 1 and mono[0][0] == var:
            e = mono[0][1]
        else:
            raise ValueError(f"MPoly has variables other than {var}")
        coeffs[e] = coeffs.get(e, 0) + c
    if not coeffs:
        return Poly()
    return Poly(coeffs.get(n, 0) for n in range(max(coeffs) + 1))


def evaluate_response(net: Network, i: int, assignment: Assignment) -> Fraction:
    """Numeric value of ``F_i`` at ``assignment`` without expanding anything.

    Uses the recursion ``F_i = sum_l f_{i,l}(u_l[k-2] + F_l delayed by one)``
    directly on numbers, so it stays cheap where the canonical form would blow up.
    """
    vals = {v: to_rational(x) for v, x in assignment.items() if x}
    g = net.graph
    memo: dict[tuple[int, int], Fraction] = {}

    def value(node: int, lag: int) -> Fraction:
        key = (node, lag)
        if key not in memo:
            total = Fraction(0)
            for j in g.in_neighbors(node):
                arg = vals.get(DelayedInput(j, lag + 2), 0) + value(j, lag + 1)
                total += net.fn(j, node)(arg)
            memo[key] = total
        return memo[key]

    return value(i, 0)


def verify_edge_slice_shape(net: Network, i: int, j: int, rng: Optional[random.Random] = None, trials: int = 3) -> bool:
    """Check that, with every other input frozen at random values, ``F_i`` as a
    function of ``u_j[k-2]`` equals ``f_{i,j}(u_j[k-2] + beta) + alpha``."""
    if j not in net.graph.in_neighbors(i):
        raise ValueError(f"{j} is not an in-neighbour of {i}")
    rng = rng or random.Random(0)
    F = build_response(net, i)
    f = net.fn(j, i)
    target = DelayedInput(j, 2)
    others = sorted(F.variables() - {target})
    for _ in range(trials):
        frozen = {v: Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for v in others}
        h = univariate_slice(partial_eval(F, frozen), target)
        if f.degree() >= 2:
            try:
                beta = recover_shift(f, h, up_to_constant=True)
            except (ValueError, ArithmeticError):
                return False
            alpha = h.coeff(0) - shift_argument(f, beta).coeff(0)
            if shift_argument(f, beta) + alpha != h:
                return False
        else:
            # linear f: the shift folds into the constant, beta = 0 works
            if h.degree() > 1 or h.coeff(1) != f.coeff(1):
                return False
    return True
