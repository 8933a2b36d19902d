import json
import random
from fractions import Fraction

import pytest
import sympy

from helpers import CHARTS, catalog_chart, phi_sympy, t_symbols
from poschart.catalog import catalog_get
from poschart.chart import (
    build_from_polytope,
    build_from_sections,
    homogenize,
    newton_polytope_of_parametrization,
    section_from_class,
    vanishes_on_phi,
    verify_section_identities,
)
from poschart.errors import (
    AssumptionFacetCount,
    AssumptionPositivity,
    AssumptionUnimodular,
    NegativeExponent,
    NotNef,
    NotSmoothFan,
    Torsion,
)
from poschart.exactla import IntegerMatrix, gale_dual, snf_invariants
from poschart.fan import nef_cone, normal_fan
from poschart.polynomials import CoxPolynomial, LaurentPolynomial
from poschart.polytope import Polytope, f_vector, minkowski_weighted


def L(s, d=2):
    return LaurentPolynomial.parse(s, d)


def test_pentagon_inverse_against_sympy():
    chart = catalog_chart("pentagon")
    inv = sympy.Matrix(chart.M.tolist()).inv()
    assert chart.M_inv.tolist() == inv.tolist()
    assert chart.B == IntegerMatrix([[int(inv[i, j]) for j in range(2)] for i in range(5)])


@pytest.mark.parametrize("name,index", [c for c in CHARTS if c[0] not in ("pezzotope", "perm3")])
def test_evaluate_phi_matches_symbolic(name, index):
    chart = catalog_chart(name, index)
    exprs = phi_sympy(chart)
    ts = t_symbols(chart.d)
    rng = random.Random(3)
    for _ in range(5):
        t = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(chart.d)]
        want = [e.subs({s: sympy.Rational(v.numerator, v.denominator) for s, v in zip(ts, t)}) for e in exprs]
        assert chart.evaluate_phi(t) == [Fraction(str(w)) for w in want]


@pytest.mark.parametrize("name,index", [c for c in CHARTS if c[0] != "perm3"])
def test_newton_polytope_of_phi_has_the_chart_fan(name, index):
    newton_polytope_of_parametrization(catalog_chart(name, index))


def test_ideal_generators_are_homogeneous():
    for name, index in CHARTS:
        chart = catalog_chart(name, index)
        Kt = chart.K.T
        for g, sec in zip(chart.ideal_gens, chart.sections):
            assert (g + 1).is_homogeneous(Kt)
            assert g.degree == sec.cls


def test_positivity_is_required():
    with pytest.raises(AssumptionPositivity):
        build_from_sections([L("1 - t1"), L("1 + t2")])
    with pytest.raises(AssumptionPositivity):
        build_from_sections([L("0"), L("1 + t2")])


def test_facet_count_is_checked():
    # square plus a diagonal segment is a hexagon: 6 facets, not d + k = 5
    with pytest.raises(AssumptionFacetCount):
        build_from_sections([L("1 + t1"), L("1 + t2"), L("1 + t1*t2")])
    with pytest.raises(AssumptionFacetCount):
        build_from_sections([L("1 + t1"), L("1 + t1^2")])


def test_unimodularity_is_checked():
    with pytest.raises(AssumptionUnimodular) as exc:
        build_from_sections([LaurentPolynomial.parse("1 + t1^2", 1)])
    assert abs(exc.value.det) == 2


def test_singular_and_torsion_polytopes():
    with pytest.raises(NotSmoothFan):
        build_from_polytope(Polytope.from_vertices(catalog_get("p121").vertices))
    with pytest.raises(Torsion):
        build_from_polytope(Polytope.from_vertices(catalog_get("diamond").vertices))


def test_verbatim_pezzotope_sections_have_extra_facets():
    entry = catalog_get("pezzotope")
    fs = [LaurentPolynomial.parse(s, 4) for s in entry.expected["sections_printed"]]
    P = minkowski_weighted([(f.newton_polytope(), 1) for f in fs])
    assert f_vector(P).as_tuple() == entry.expected["f_vector_printed_sections"]
    with pytest.raises(AssumptionFacetCount):
        build_from_sections(fs)


def test_section_from_class():
    P = Polytope.from_vertices([(0, 0), (0, 2), (2, 2), (2, 1), (1, 0)])
    fan = normal_fan(P)
    K = gale_dual(fan.rays)
    _, S = snf_invariants(K.T)
    N = nef_cone(fan, K, S)
    for c in N.rays:
        Q, a, f = section_from_class(c, fan, K, S)
        assert Q.vertices[0] == (0, 0)
        assert all(v == 1 for v in f.terms.values())
        assert tuple(K.T @ a) == tuple(c)
    outside = next(c for c in [(1, 0, -1), (-1, 0, 0), (0, -1, 0), (0, 0, -1)] if not N.contains(c))
    with pytest.raises(NotNef):
        section_from_class(outside, fan, K, S)


def test_homogenize():
    F = IntegerMatrix([[1, 0, -1, -1, 0], [0, 1, 1, 0, -1]])
    h = homogenize(L("1 + t2 + t1*t2"), (0, 0, 1, 1, 1), F)
    # exponents F^t m + z for m = 0, e2, e1 + e2
    assert str(h) == "y3*y4*y5 + y2*y3^2*y4 + y1*y2*y3"
    with pytest.raises(NegativeExponent):
        homogenize(L("1 + t1^2"), (0, 0, 1, 1, 1), F)


def test_verification_report():
    chart = catalog_chart("pentagon")
    rep = verify_section_identities(chart)
    assert rep.ok
    assert rep.to_json()["section_identities"] == [True] * 3
    assert vanishes_on_phi(chart, chart.ideal_gens[0])
    assert not vanishes_on_phi(chart, CoxPolynomial.parse("y1 + y2 - 1", 5))


def test_chart_json():
    out = json.loads(json.dumps(catalog_chart("pentagon").to_json()))
    assert set(out) == {"F", "M", "M_inv", "sections", "ideal", "phi"}
    assert out["ideal"][0] == "y3*y4 + y1 - 1"


def test_explicit_fan_with_wrong_ray_count():
    fan = normal_fan(Polytope.from_vertices([(0, 0), (1, 0), (0, 1), (1, 1)]))
    with pytest.raises(AssumptionFacetCount):
        build_from_sections([L("1 + t1 + t2")], fan=fan)
