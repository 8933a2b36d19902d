import pytest
import sympy
from hypothesis import given, settings, strategies as st

from helpers import to_sympy
from poschart.errors import ResourceLimit
from poschart.groebner import (
    PolyIdeal,
    affine_dim_degree,
    degrevlex,
    hilbert_numerator,
    ideal_equal,
    lex,
    normal_form,
    saturate,
)
from poschart.polynomials import CoxPolynomial

N = 3
YS = sympy.symbols(f"y1:{N + 1}")


def _normalized(exprs, order):
    out = set()
    for e in exprs:
        p = sympy.Poly(e, *YS)
        out.add(sympy.expand(p.as_expr() / p.LC(order=order)))
    return out


small_polys = st.lists(
    st.tuples(st.tuples(*[st.integers(0, 2)] * N), st.integers(-3, 3)), min_size=1, max_size=3
).map(lambda ts: CoxPolynomial(N, ts))


@settings(max_examples=40, deadline=None)
@given(st.lists(small_polys, min_size=1, max_size=3), st.sampled_from(["grevlex", "lex"]))
def test_reduced_basis_matches_sympy(gens, order):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    mono_order = degrevlex(N) if order == "grevlex" else lex(N)
    mine = PolyIdeal(N, gens, mono_order).groebner_basis()
    theirs = sympy.groebner([to_sympy(g) for g in gens], *YS, order=order)
    assert _normalized([to_sympy(g) for g in mine], order) == _normalized(theirs.exprs, order)


def test_membership_and_normal_form():
    I = PolyIdeal(2, ["y1^2 - y2", "y1*y2 - 1"])
    assert I.contains("y2^2 - y1")
    assert not I.contains("y1 - y2")
    r = normal_form("y1^3", I)
    assert I.contains(CoxPolynomial.parse("y1^3", 2) - r)
    assert not I.is_unit()
    assert PolyIdeal(1, ["y1", "y1 - 1"]).is_unit()


def test_ideal_equal_with_different_generators():
    I = PolyIdeal(3, ["y1 + y2 - 1", "y2 - y3"])
    K = PolyIdeal(3, ["y1 + y3 - 1", "y2 - y3", "y1*y2 + y2^2 - y2"])
    assert ideal_equal(I, K)
    assert not ideal_equal(I, PolyIdeal(3, ["y1 - 1", "y2 - y3"]))


def test_saturation_examples():
    # a component on the coordinate hyperplane y1 = 0 is removed
    I = PolyIdeal(2, ["y1*y2 - y1"])
    assert ideal_equal(saturate(I, (1, 0)), PolyIdeal(2, ["y2 - 1"]))
    I = PolyIdeal(2, ["y1^2*y2", "y1*y2^2"])
    assert saturate(I, (1, 1)).is_unit()
    # a prime ideal avoiding the hyperplanes is saturated already
    I = PolyIdeal(2, ["y1 + y2 - 1"])
    assert ideal_equal(saturate(I, (1, 1)), I)
    # embedded component at the origin
    I = PolyIdeal(2, ["y1^2", "y1*y2"])
    assert ideal_equal(saturate(I, (0, 1)), PolyIdeal(2, ["y1"]))


def test_hilbert_numerator():
    assert hilbert_numerator([(1, 0), (0, 1)]) == [1, -2, 1]
    assert hilbert_numerator([(2, 0)]) == [1, 0, -1]
    assert hilbert_numerator([]) == [1]
    assert hilbert_numerator([(0, 0)]) == [0]


def test_affine_dim_degree():
    assert affine_dim_degree(PolyIdeal(4, ["y1 + y3 - 1", "y2 + y4 - 1"])) == (2, 1)
    cubic = PolyIdeal(4, ["y1*y3 - y2^2", "y2*y4 - y3^2", "y1*y4 - y2*y3"])
    assert affine_dim_degree(cubic) == (2, 3)
    assert affine_dim_degree(PolyIdeal(3, ["y1^2*y2 + y3^3 - 1"])) == (2, 3)
    assert affine_dim_degree(PolyIdeal(2, ["y1", "y1 - 1"])) == (-1, 0)
    # order of the ring is irrelevant for the answer
    assert affine_dim_degree(PolyIdeal(2, ["y1^2 - y2"], lex(2))) == (1, 2)


def test_budget_exhaustion():
    cyclic4 = PolyIdeal(
        4,
        [
            "y1 + y2 + y3 + y4",
            "y1*y2 + y2*y3 + y3*y4 + y4*y1",
            "y1*y2*y3 + y2*y3*y4 + y3*y4*y1 + y4*y1*y2",
            "y1*y2*y3*y4 - 1",
        ],
    )
    with pytest.raises(ResourceLimit, match="budget of 3 S-pairs"):
        cyclic4.groebner_basis(max_pairs=3)
    assert affine_dim_degree(cyclic4) == (1, 4)
