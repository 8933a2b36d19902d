import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from scipy.spatial import ConvexHull

from poschart.errors import Empty, InputError, NotLattice, Unbounded
from poschart.exactla import IntegerMatrix, primitive
from poschart.polytope import (
    Polytope,
    dual_convert,
    f_vector,
    lattice_points,
    minkowski_weighted,
    polytope_from_json,
    support_vector,
)

PENTAGON = [(0, 0), (0, 2), (2, 2), (2, 1), (1, 0)]


def _brute_vertices(normals, offsets):
    """Vertices of {m : u_j . m + z_j >= 0} by solving every d-subset of facets."""
    d = len(normals[0])
    out = set()
    for idx in itertools.combinations(range(len(normals)), d):
        A = sympy.Matrix([normals[j] for j in idx])
        if A.det() == 0:
            continue
        b = sympy.Matrix([-offsets[j] for j in idx])
        p = A.LUsolve(b)
        pt = tuple(Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in p)
        if all(sum(u * x for u, x in zip(n, pt)) + z >= 0 for n, z in zip(normals, offsets)):
            out.add(pt)
    return out


def _brute_facets(vertices):
    """Facets (primitive inner normal, offset) of a full-dimensional hull by
    testing hyperplanes through every d-subset of vertices."""
    d = len(vertices[0])
    out = set()
    for idx in itertools.combinations(range(len(vertices)), d):
        base = vertices[idx[0]]
        rows = [[a - b for a, b in zip(vertices[i], base)] for i in idx[1:]]
        ns = sympy.Matrix(rows).nullspace() if rows else [sympy.Matrix([1])]
        if len(ns) != 1:
            continue
        u = primitive([sympy.Rational(x) for x in ns[0]])
        vals = [sum(a * b for a, b in zip(u, v)) for v in vertices]
        h = sum(a * b for a, b in zip(u, base))
        if all(v >= h for v in vals):
            out.add((u, -h))
        elif all(v <= h for v in vals):
            out.add((tuple(-x for x in u), h))
    return out


def _random_hrep(rng):
    d = rng.randint(1, 3)
    normals = [tuple(int(i == j) for j in range(d)) for i in range(d)] + [(-1,) * d]
    target = rng.randint(d + 1, 8)
    while len(normals) < target:
        u = tuple(rng.randint(-3, 3) for _ in range(d))
        if any(u):
            normals.append(primitive(u))
    offsets = [Fraction(rng.randint(1, 6)) for _ in normals]
    return normals, offsets


@pytest.mark.criterion(9)
def test_dual_conversion_against_brute_force():
    rng = random.Random(2024)
    for _ in range(100):
        normals, offsets = _random_hrep(rng)
        P = Polytope.from_inequalities(IntegerMatrix.from_columns(normals), offsets)
        assert set(P.vertices) == _brute_vertices(normals, offsets)
        facets = set(zip(P.normals.columns, P.offsets))
        assert facets == _brute_facets(list(P.vertices))
        # V -> H -> V round trip
        Q = Polytope.from_inequalities(P.normals, P.offsets)
        assert Q.vertices == P.vertices


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3).flatmap(lambda d: st.lists(st.tuples(*[st.integers(-4, 4)] * d), min_size=d + 2, max_size=12)))
def test_vertices_match_scipy_hull(points):
    arr = np.array(points, dtype=float)
    try:
        hull = ConvexHull(arr)
    except Exception:  # degenerate input (qhull refuses lower-dimensional sets)
        return
    P = Polytope.from_vertices(points)
    assert P.is_full_dimensional
    assert set(P.vertices) == {tuple(Fraction(x) for x in points[i]) for i in hull.vertices}


def test_pentagon_basics():
    P = Polytope.from_vertices(PENTAGON + [(1, 1)])
    assert len(P.vertices) == 5
    assert P.n_facets == 5
    assert f_vector(P).as_tuple() == (5, 5)
    assert set(P.facet_normals()) == {(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)}
    # Pick: area 7/2 with 7 boundary points gives 1 interior point, 8 in total
    assert len(lattice_points(P)) == 8
    F = IntegerMatrix.from_columns([(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)])
    assert support_vector(P, F) == (0, 0, 1, 2, 2)


def test_f_vectors():
    cube = Polytope.from_vertices(itertools.product((0, 1), repeat=3))
    assert f_vector(cube).as_tuple() == (8, 12, 6)
    perm = Polytope.from_vertices(itertools.permutations((1, 2, 3, 4)))
    assert not perm.is_full_dimensional
    assert perm.lattice_dim == 3
    fv = f_vector(perm)
    assert fv.as_tuple() == (24, 36, 14)
    assert fv.euler_characteristic() == 2


def test_minkowski_sum_of_segments_is_square():
    a = Polytope.from_vertices([(0, 0), (1, 0)])
    b = Polytope.from_vertices([(0, 0), (0, 1)])
    S = minkowski_weighted([(a, 2), (b, Fraction(1, 2))])
    assert S.vertices == tuple(sorted({(Fraction(x), Fraction(y)) for x in (0, 2) for y in (0, Fraction(1, 2))}))
    with pytest.raises(ValueError):
        minkowski_weighted([(a, 0)])


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=6),
    st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=6),
)
def test_minkowski_sum_matches_pointwise_hull(p, q):
    sums = [(a + c, b + d) for a, b in p for c, d in q]
    try:
        hull = ConvexHull(np.array(sums, dtype=float))
    except Exception:
        return
    S = minkowski_weighted([(Polytope.from_vertices(p), 1), (Polytope.from_vertices(q), 1)])
    assert set(S.vertices) == {tuple(map(Fraction, sums[i])) for i in hull.vertices}


def test_support_vector_not_lattice():
    P = Polytope.from_vertices([(0, 0), (1, 0), (0, Fraction(1, 2))])
    F = IntegerMatrix.from_columns([(1, 0), (0, -1), (-1, -2)])
    with pytest.raises(NotLattice):
        support_vector(P, F)
    assert support_vector(P, F, integral=False) == (0, Fraction(1, 2), 1)
    assert not P.is_lattice()


def test_inequality_errors():
    with pytest.raises(Unbounded):
        Polytope.from_inequalities(IntegerMatrix.from_columns([(1, 0), (0, 1)]), [0, 0])
    with pytest.raises(Empty):
        Polytope.from_inequalities(IntegerMatrix.from_columns([(1,), (-1,)]), [-2, 1])


def test_json_round_trip():
    P = Polytope.from_vertices(PENTAGON)
    Q = polytope_from_json(P.to_json())
    assert Q == P
    R = polytope_from_json({"facets": P.to_json()["facets"]})
    assert R == P
    assert dual_convert(PENTAGON) == P
    with pytest.raises(InputError):
        polytope_from_json({"points": []})


def test_lower_dimensional_local_coordinates():
    seg = Polytope.from_vertices([(0, 0, 0), (2, 2, 2)])
    assert seg.lattice_dim == 1
    assert sorted(seg.local_vertices) in ([(0,), (2,)], [(-2,), (0,)])
    assert len(lattice_points(seg)) == 3
    assert seg.contains((1, 1, 1))
    assert not seg.contains((1, 1, 0))


def test_translate_and_scale():
    P = Polytope.from_vertices(PENTAGON)
    T = P.translate((1, -1))
    assert T == Polytope.from_vertices([(x + 1, y - 1) for x, y in PENTAGON])
    assert P.scale(2) == Polytope.from_vertices([(2 * x, 2 * y) for x, y in PENTAGON])
