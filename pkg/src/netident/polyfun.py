"""Exact univariate polynomials over the rationals.

Edge functions are truncated power series ``a_0 + a_1 x + ... + a_d x^d`` with
:class:`fractions.Fraction` coefficients. Besides arithmetic, this module
provides the class predicates (zero at the origin, genuinely nonlinear) and
the argument-shift machinery that identification relies on.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from math import comb
from typing import Iterable, Iterator, Sequence, Union

from .errors import DegreeTooLow, DuplicateAbscissa, InconsistentSamples, InvalidEdgeFunction, NotAShift

RationalLike = Union[int, Fraction, str]


def to_rational(value: RationalLike) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings. Floats are refused."""
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is one."""
    return str(Fraction(value))


class Poly:
    """Immutable polynomial; ``coeffs[n]`` is the coefficient of ``x**n``."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = hash(self.coeffs)

    @classmethod
    def constant(cls, c: RationalLike) -> Poly:
        return cls([c])

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def monomial(cls, n: int, c: RationalLike = 1) -> Poly:
        return cls([0] * n + [c])

    def degree(self) -> int:
        """Highest power with a nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else Fraction(0)

    def __call__(self, x: RationalLike) -> Fraction:
        return self.eval(x)

    def eval(self, x: RationalLike) -> Fraction:
        acc = Fraction(0)
        x = to_rational(x)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({[format_rational(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for n, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if n == 0:
                body = format_rational(abs(c))
            else:
                mono = "x" if n == 1 else f"x^{n}"
                body = mono if abs(c) == 1 else f"{format_rational(abs(c))}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __add__(self, other) -> Poly:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> Poly:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> Poly:
        return _as_poly(other) - self

    def __mul__(self, other) -> Poly:
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def compose(self, inner: Poly) -> Poly:
        """``self(inner(x))``."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def derivative(self) -> Poly:
        return Poly(n * c for n, c in enumerate(self.coeffs) if n > 0)


def _as_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly.constant(value)


class FunctionClass(enum.Enum):
    GENERAL = "general"
    FZ = "fz"
    FZNL = "fznl"


@dataclass(frozen=True)
class Classification:
    in_fz: bool
    in_fznl: bool
    is_linear: bool

    @property
    def classes(self) -> frozenset[FunctionClass]:
        out = {FunctionClass.GENERAL}
        if self.in_fz:
            out.add(FunctionClass.FZ)
        if self.in_fznl:
            out.add(FunctionClass.FZNL)
        return frozenset(out)

    @property
    def tightest(self) -> FunctionClass:
        if self.in_fznl:
            return FunctionClass.FZNL
        return FunctionClass.FZ if self.in_fz else FunctionClass.GENERAL


def classify(p: Poly) -> Classification:
    """Class membership of an edge function. The zero polynomial is not one."""
    if p.is_zero():
        raise InvalidEdgeFunction("the zero polynomial is not a valid edge function")
    in_fz = p.coeff(0) == 0
    in_fznl = in_fz and p.degree() > 1
    return Classification(in_fz=in_fz, in_fznl=in_fznl, is_linear=in_fz and p.degree() <= 1)


def belongs_to(p: Poly, cls: FunctionClass) -> bool:
    return cls in classify(p).classes


def shift_argument(p: Poly, c: RationalLike) -> Poly:
    """The polynomial ``x -> p(x + c)``, by binomial expansion."""
    c = to_rational(c)
    if c == 0:
        return p
    d = p.degree()
    out = [Fraction(0)] * (d + 1)
    powers = [Fraction(1)]
    for _ in range(d):
        powers.append(powers[-1] * c)
    for n, a in enumerate(p.coeffs):
        if a:
            for k in range(n + 1):
                out[k] += a * comb(n, k) * powers[n - k]
    return Poly(out)


def recover_shift(p: Poly, q: Poly, *, up_to_constant: bool = False) -> Fraction:
    """Find ``c`` with ``q(x) == p(x + c)``.

    ``c`` is read off the two leading coefficients, then the whole shift is
    checked. With ``up_to_constant`` the constant terms are not compared, so
    ``q = p(x + c) + K`` yields ``c`` for any ``K``.

    Raises DegreeTooLow when ``deg p < 2`` and NotAShift when verification fails.
    """
    d = p.degree()
    if d < 2:
        raise DegreeTooLow(f"shift extraction needs degree >= 2, got degree {d}")
    if q.degree() != d or q.coeff(d) != p.coeff(d):
        raise NotAShift("leading terms differ")
    c = (q.coeff(d - 1) - p.coeff(d - 1)) / (d * p.coeff(d))
    shifted = shift_argument(p, c)
    if up_to_constant:
        ok = shifted.coeffs[1:] == q.coeffs[1:]
    else:
        ok = shifted == q
    if not ok:
        raise NotAShift(f"{q} is not a shift of {p}")
    return c


def sample_points(n: int) -> list[Fraction]:
    """The first ``n`` abscissae of the sequence 0, 1, -1, 2, -2, ..."""
    return [Fraction(v) for v, _ in zip(_alternating(), range(n))]


def _alternating() -> Iterator[int]:
    yield 0
    for k in count(1):
        yield k
        yield -k


def interpolate(points: Sequence[tuple[RationalLike, RationalLike]], degree_bound: int) -> Poly:
    """Unique polynomial of degree <= ``degree_bound`` through ``points``.

    Newton divided differences on the first ``degree_bound + 1`` points; any
    further points must lie on the result or InconsistentSamples is raised.
    """
    pts = [(to_rational(x), to_rational(y)) for x, y in points]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissa("interpolation abscissae must be distinct")
    if degree_bound < 0:
        raise ValueError("degree_bound must be non-negative")
    if len(pts) < degree_bound + 1:
        raise ValueError(f"need at least {degree_bound + 1} points, got {len(pts)}")
    fit, extra = pts[: degree_bound + 1], pts[degree_bound + 1:]
    xs = [x for x, _ in fit]
    table = [y for _, y in fit]
    n = len(fit)
    # in-place divided differences: table[k] becomes f[x_0..x_k]
    for level in range(1, n):
        for k in range(n - 1, level - 1, -1):
            table[k] = (table[k] - table[k - 1]) / (xs[k] - xs[k - level])
    result = Poly.constant(table[-1])
    for k in range(n - 2, -1, -1):
        result = result * Poly([-xs[k], 1]) + table[k]
    for x, y in extra:
        if result(x) != y:
            raise InconsistentSamples(f"sample ({x}, {y}) is off the degree-{degree_bound} fit {result}")
    return result


def periodicity_impossible(p: Poly, period: RationalLike) -> bool:
    """True iff ``p`` is non-constant and ``p(x + period) != p(x)``."""
    period = to_rational(period)
    if period == 0:
        raise ValueError("period must be nonzero")
    return not p.is_constant() and shift_argument(p, period) != p
