from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from helpers import to_sympy
from poschart.errors import InputError, NegativeExponent
from poschart.polynomials import CoxPolynomial, LaurentPolynomial

NV = 3


def laurent(nvars=NV, lo=-2, hi=3):
    term = st.tuples(
        st.tuples(*[st.integers(lo, hi)] * nvars),
        st.fractions(min_value=-5, max_value=5, max_denominator=4),
    )
    return st.lists(term, max_size=5).map(lambda ts: LaurentPolynomial(nvars, ts))


def cox(nvars=NV):
    term = st.tuples(st.tuples(*[st.integers(0, 3)] * nvars), st.integers(-4, 4))
    return st.lists(term, max_size=5).map(lambda ts: CoxPolynomial(nvars, ts))


@settings(max_examples=80, deadline=None)
@given(laurent())
def test_laurent_print_parse_round_trip(f):
    assert LaurentPolynomial.parse(str(f), NV) == f


@settings(max_examples=80, deadline=None)
@given(cox())
def test_cox_print_parse_round_trip(f):
    assert CoxPolynomial.parse(str(f), NV) == f


@settings(max_examples=60, deadline=None)
@given(laurent(), laurent(), laurent())
def test_ring_laws(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == 0
    assert f * 1 == f


@settings(max_examples=40, deadline=None)
@given(cox(), cox())
def test_product_matches_sympy(f, g):
    assert sympy.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0


@settings(max_examples=40, deadline=None)
@given(laurent(), st.tuples(*[st.fractions(min_value=1, max_value=5, max_denominator=5)] * NV))
def test_evaluate_matches_sympy(f, pt):
    ts = sympy.symbols(f"t1:{NV + 1}")
    expr = sympy.sympify(str(f).replace("^", "**"))
    want = expr.subs({t: sympy.Rational(p.numerator, p.denominator) for t, p in zip(ts, pt)})
    assert f.evaluate(pt) == Fraction(str(want))


def test_printing_conventions():
    f = LaurentPolynomial.parse("t1*t2 + t2 + 1 + t1", 2)
    assert str(f) == "1 + t1 + t2 + t1*t2"
    g = CoxPolynomial.parse("y1 - 1 + y3*y4", 4)
    assert str(g) == "y3*y4 + y1 - 1"
    assert str(LaurentPolynomial.parse("-3 + 1/2*t1^-1", 1)) == "1/2*t1^-1 - 3"
    assert str(CoxPolynomial(2, {})) == "0"


def test_parse_errors():
    with pytest.raises(InputError):
        LaurentPolynomial.parse("", 2)
    with pytest.raises(InputError):
        LaurentPolynomial.parse("1 + x1", 2)
    with pytest.raises(InputError):
        LaurentPolynomial.parse("1 + t3", 2)
    with pytest.raises(InputError):
        CoxPolynomial.parse("y0 + 1")
    with pytest.raises(NegativeExponent):
        CoxPolynomial.parse("y1^-1", 1)


def test_newton_polytope_and_vertex_coefficients():
    f = LaurentPolynomial.parse("1 + t2 + t1*t2 + 5*t1^0*t2^0", 2)
    P = f.newton_polytope()
    assert len(P.vertices) == 3
    assert f.vertex_coefficients()[(0, 0)] == 6


def test_substitute_monomials():
    f = CoxPolynomial.parse("y1*y2 + y1 - 1", 2)
    u = LaurentPolynomial.parse("t1", 1)
    v = LaurentPolynomial.parse("t1^-1", 1)
    assert f.substitute_monomials([u, v]) == LaurentPolynomial.parse("t1", 1)


def test_homogeneity():
    Kt = [[1, 0, 1, 0], [0, 1, 0, 1]]
    assert CoxPolynomial.parse("y1*y2 + y3*y4 + y1*y4", 4).is_homogeneous(Kt)
    assert not CoxPolynomial.parse("y1 + y2", 4).is_homogeneous(Kt)
