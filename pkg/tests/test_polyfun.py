from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from netident import DegreeTooLow, InvalidEdgeFunction, NotAShift, Poly, classify, interpolate, periodicity_impossible
from netident.errors import DuplicateAbscissa, InconsistentSamples
from netident.polyfun import FunctionClass, format_rational, sample_points, shift_argument, recover_shift, to_rational

rationals = st.builds(Fraction, st.integers(-8, 8), st.integers(1, 6))
nonzero_rationals = rationals.filter(bool)


def polys_of_degree(min_degree=0, max_degree=5):
    """Polynomials whose degree lies in [min_degree, max_degree]."""
    return st.builds(
        lambda body, lead: Poly(body + [lead]),
        st.integers(min_degree, max_degree).flatmap(lambda d: st.lists(rationals, min_size=d, max_size=d)),
        nonzero_rationals,
    )


polys = st.one_of(st.just(Poly()), polys_of_degree())
nonconstant = polys_of_degree(1)
quadratic_plus = polys_of_degree(2)


def test_eval_examples():
    assert Poly.monomial(2)(3) == 9
    assert Poly()(Fraction(7, 3)) == 0
    assert Poly([0, 1, 0, 1])(Fraction(1, 2)) == Fraction(5, 8)


def test_canonical_trimming():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly([0, 0]).is_zero() and Poly().degree() == -1


def test_classify_examples():
    c = classify(Poly.monomial(2))
    assert c.in_fz and c.in_fznl and not c.is_linear
    c = classify(Poly([0, 2]))
    assert c.in_fz and not c.in_fznl and c.is_linear
    c = classify(Poly([5, 0, 1]))
    assert c.classes == {FunctionClass.GENERAL}
    with pytest.raises(InvalidEdgeFunction):
        classify(Poly())


@given(polys_of_degree())
def test_classify_monotone(p):
    c = classify(p)
    assert not c.in_fznl or c.in_fz
    assert not (c.in_fznl and c.is_linear)


def test_shift_examples():
    assert shift_argument(Poly.monomial(2), 1) == Poly([1, 2, 1])
    p = Poly([3, 0, -1, 2])
    assert shift_argument(p, 0) == p
    # gauge pair building block: x^3 shifted by -gamma, gamma = 2
    assert shift_argument(Poly.monomial(3), -2) == Poly([-8, 12, -6, 1])


@given(polys, rationals)
def test_shift_matches_sympy(p, c):
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(a.numerator, a.denominator) * (x + sympy.Rational(c.numerator, c.denominator)) ** n for n, a in enumerate(p.coeffs))
    ref = sympy.Poly(sympy.expand(expr), x).all_coeffs()[::-1] if p.coeffs else []
    assert shift_argument(p, c) == Poly(Fraction(int(sympy.fraction(r)[0]), int(sympy.fraction(r)[1])) for r in ref)


@given(polys, rationals, rationals)
def test_shift_composes(p, a, b):
    assert shift_argument(shift_argument(p, a), b) == shift_argument(p, a + b)


@given(polys, rationals, rationals)
def test_shift_pointwise(p, c, x):
    assert shift_argument(p, c)(x) == p(x + c)


def test_recover_shift_examples():
    assert recover_shift(Poly.monomial(2), Poly([1, 2, 1])) == 1
    p = Poly([0, 1, 0, 1])
    assert recover_shift(p, p) == 0
    with pytest.raises(DegreeTooLow):
        recover_shift(Poly([0, 2]), Poly([1, 2]))


def test_recover_shift_rejects_non_shift():
    with pytest.raises(NotAShift):
        recover_shift(Poly([0, 0, 0, 1]), Poly([0, 1, 0, 1]))
    with pytest.raises(NotAShift):
        recover_shift(Poly.monomial(2), Poly([0, 0, 2]))
    # the constant term differs: a shift only up to an additive constant
    q = shift_argument(Poly([0, 1, 1]), 3) + 5
    with pytest.raises(NotAShift):
        recover_shift(Poly([0, 1, 1]), q)
    assert recover_shift(Poly([0, 1, 1]), q, up_to_constant=True) == 3


@given(quadratic_plus, rationals)
def test_recover_shift_round_trip(p, c):
    assert recover_shift(p, shift_argument(p, c)) == c


@given(quadratic_plus, rationals, rationals)
def test_recover_shift_ignores_constants(p, c, k):
    assert recover_shift(p, shift_argument(p, c) + k, up_to_constant=True) == c


def test_interpolate_examples():
    assert interpolate([(0, 0), (1, 1), (-1, 1)], 2) == Poly.monomial(2)
    assert interpolate([(0, 0), (1, 2)], 1) == Poly([0, 2])
    cubic = Poly([0, 1, 0, 1])
    assert interpolate([(x, cubic(x)) for x in (-2, -1, 0, 1)], 3) == cubic


def test_interpolate_errors():
    with pytest.raises(DuplicateAbscissa):
        interpolate([(0, 0), (0, 1)], 1)
    with pytest.raises(InconsistentSamples):
        interpolate([(x, x**3) for x in range(5)], 2)
    with pytest.raises(ValueError):
        interpolate([(0, 1)], 3)


@given(polys, st.integers(0, 3))
def test_interpolate_round_trip(p, extra):
    pts = sample_points(max(p.degree(), 0) + 1 + extra)
    assert interpolate([(x, p(x)) for x in pts], max(p.degree(), 0)) == p


def test_sample_points_order():
    assert sample_points(5) == [0, 1, -1, 2, -2]


def test_periodicity_examples():
    assert periodicity_impossible(Poly.monomial(2), 1)
    assert not periodicity_impossible(Poly.constant(5), 1)
    with pytest.raises(ValueError):
        periodicity_impossible(Poly.monomial(2), 0)


@given(nonconstant, rationals)
def test_no_nonconstant_polynomial_is_periodic(p, period):
    assume(period != 0)
    assert periodicity_impossible(p, period)
    assert shift_argument(p, period) != p


def test_rational_formatting():
    assert format_rational(Fraction(3, 1)) == "3"
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert to_rational("4/6") == Fraction(2, 3)
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_poly_arithmetic_and_printing():
    p = Poly([0, 1, 1])
    assert p * p == Poly([0, 0, 1, 2, 1])
    assert p.compose(Poly([1, 1])) == Poly([2, 3, 1])
    assert p - p == Poly()
    assert str(Poly([Fraction(-1, 2), 0, 3, -1])) == "-1/2 + 3*x^2 - x^3"
    assert str(Poly()) == "0"
