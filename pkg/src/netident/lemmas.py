"""Brute-force checks of the polynomial facts behind identification.

* a non-constant polynomial has no nonzero period;
* ``f(x + g) == f(x + h)`` with ``f`` non-constant and ``f(0) = 0`` forces ``g == h``;
* ``sum f_i(x_i + g_i) == sum f_i(x_i + h_i)`` with every ``f_i`` nonlinear
  forces ``g_i == h_i``; linear ``f_i`` break this.

Equalities are decided on canonical MPoly forms, never numerically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .generators import random_coefficient, random_fznl_poly
from .polyfun import Poly, periodicity_impossible, recover_shift, shift_argument
from .response import MPoly, compose, responses_equal

# offset keeping the upstream variables apart from the summand variables
_UPSTREAM_BASE = 100


def summand_var(i: int) -> MPoly:
    return MPoly.var(i, 2)


def upstream_var(k: int) -> MPoly:
    return MPoly.var(_UPSTREAM_BASE + k, 3)


@dataclass
class SuiteResult:
    name: str
    instances: int = 0
    passed: int = 0
    equal_responses: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.instances and not self.failures

    def line(self) -> str:
        extra = f", equal responses {self.equal_responses}" if self.equal_responses else ""
        return f"{self.name}: {self.passed}/{self.instances} pass{extra}"


def random_poly(rng: random.Random, max_degree: int = 5) -> Poly:
    d = rng.randint(1, max_degree)
    return Poly([random_coefficient(rng) for _ in range(d)] + [random_coefficient(rng, nonzero=True)])


def random_period(rng: random.Random) -> Fraction:
    while True:
        p = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
        if p:
            return p


def periodicity_suite(rng: random.Random, instances: int) -> SuiteResult:
    res = SuiteResult("periodicity", instances)
    for _ in range(instances):
        p, period = random_poly(rng), random_period(rng)
        if periodicity_impossible(p, period):
            res.passed += 1
        else:
            res.failures.append(f"{p} appears periodic with period {period}")
    return res


def random_upstream(rng: random.Random, m: int, max_degree: int = 3, terms: int = 3) -> MPoly:
    """Nonzero polynomial in ``m`` upstream variables with no constant term."""
    while True:
        g = MPoly()
        for _ in range(rng.randint(1, terms)):
            mono = MPoly.constant(random_coefficient(rng, nonzero=True))
            for _ in range(rng.randint(1, max_degree)):
                mono = mono * upstream_var(rng.randrange(m))
            g = g + mono
        if not g.is_zero():
            return g


def perturb(rng: random.Random, gs: list[MPoly], fs: list[Poly], m: int) -> list[MPoly]:
    """Candidate alternative to ``gs``: unchanged, randomly moved, or moved so
    that the first-order parts of the sums cancel exactly."""
    kind = rng.choice(("same", "random", "cancel"))
    hs = list(gs)
    if kind == "same":
        return hs
    delta = random_upstream(rng, m)
    if kind == "random" or len(gs) == 1:
        k = rng.randrange(len(gs))
        hs[k] = hs[k] + delta
        return hs
    a, b = rng.sample(range(len(gs)), 2)
    slope_a, slope_b = fs[a].coeff(1), fs[b].coeff(1)
    if slope_b == 0:
        hs[a] = hs[a] + delta
        return hs
    hs[a] = hs[a] + delta
    hs[b] = hs[b] - delta * (slope_a / slope_b)
    return hs


def summed_response(fs: list[Poly], gs: list[MPoly]) -> MPoly:
    total = MPoly()
    for i, (f, g) in enumerate(zip(fs, gs)):
        total = total + compose(f, summand_var(i) + g)
    return total


def sum_decomposition_suite(
    rng: random.Random,
    instances: int,
    max_summands: int = 3,
    max_upstream: int = 2,
    max_degree: int = 3,
    linear: bool = False,
) -> SuiteResult:
    """``linear=True`` draws linear ``f_i`` instead, where violations are expected."""
    res = SuiteResult("sum-decomposition" + (" (linear f)" if linear else ""), instances)
    for _ in range(instances):
        n = rng.randint(1, max_summands)
        m = rng.randint(1, max_upstream)
        if linear:
            fs = [Poly([0, random_coefficient(rng, nonzero=True)]) for _ in range(n)]
        else:
            fs = [random_fznl_poly(rng, 2, max_degree) for _ in range(n)]
        gs = [random_upstream(rng, m, max_degree) for _ in range(n)]
        hs = perturb(rng, gs, fs, m)
        if any(h.is_zero() for h in hs):
            hs = list(gs)
        equal = responses_equal(summed_response(fs, gs), summed_response(fs, hs))
        if equal:
            res.equal_responses += 1
            if hs != gs:
                res.failures.append(f"f={list(map(str, fs))} g={list(map(str, gs))} h={list(map(str, hs))}")
                continue
        res.passed += 1
    return res


def shift_uniqueness_suite(rng: random.Random, instances: int, max_upstream: int = 2, max_degree: int = 3) -> SuiteResult:
    """Single summand: ``f(x + g) == f(x + h)`` must force ``g == h`` for any
    non-constant zero-at-origin ``f``. Also round-trips shift extraction."""
    res = SuiteResult("shift-uniqueness", instances)
    for _ in range(instances):
        f = random_fznl_poly(rng, 2, max_degree) if rng.random() < 0.7 else Poly([0, random_coefficient(rng, nonzero=True)])
        m = rng.randint(1, max_upstream)
        g = random_upstream(rng, m, max_degree)
        h = g if rng.random() < 0.4 else g + random_upstream(rng, m, max_degree)
        if h.is_zero():
            h = g
        equal = responses_equal(compose(f, summand_var(0) + g), compose(f, summand_var(0) + h))
        ok = (not equal) or h == g
        if f.degree() >= 2:
            c = random_period(rng)
            ok = ok and recover_shift(f, shift_argument(f, c)) == c
        if equal:
            res.equal_responses += 1
        if ok:
            res.passed += 1
        else:
            res.failures.append(f"f={f} g={g} h={h}")
    return res


@dataclass(frozen=True)
class LinearCounterexample:
    fs: tuple[Poly, ...]
    gs: tuple[MPoly, ...]
    hs: tuple[MPoly, ...]

    def verified(self) -> bool:
        return self.gs != self.hs and responses_equal(summed_response(list(self.fs), list(self.gs)), summed_response(list(self.fs), list(self.hs)))


def linear_counterexample() -> LinearCounterexample:
    """With ``f_1 = f_2 = x`` moving ``y_1`` from one summand to the other is invisible."""
    y1, y2 = upstream_var(0), upstream_var(1)
    fs = (Poly.x(), Poly.x())
    gs = (y1 * y1, y2)
    hs = (y1 * y1 + y1, y2 - y1)
    return LinearCounterexample(fs, gs, hs)


def run_all(seed: int, instances: int) -> tuple[list[SuiteResult], LinearCounterexample]:
    rng = random.Random(seed)
    suites = [
        periodicity_suite(rng, instances),
        shift_uniqueness_suite(rng, instances),
        sum_decomposition_suite(rng, instances),
    ]
    return suites, linear_counterexample()
