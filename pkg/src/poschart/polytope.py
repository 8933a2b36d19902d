"""Exact lattice polytopes in V- and H-representation.

A :class:`Polytope` always keeps its vertices in ambient coordinates.  When
the polytope is not full-dimensional, the facet description lives in the
coordinates of the lattice of its affine hull; the map between the two is
the :class:`AffineLattice` stored on the polytope.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import floor, ceil
from typing import Iterable, Sequence

from . import _dd
from .errors import Empty, InputError, NotLattice, NotPointed, Unbounded
from .exactla import (
    IntegerMatrix,
    column_hnf,
    nullspace,
    primitive,
    rank,
    unimodular_inverse,
    vec_gcd,
)

Point = tuple  # tuple of Fractions


def _frac_point(p) -> Point:
    out = []
    for x in p:
        if isinstance(x, float):
            raise TypeError("floating point coordinates are not allowed")
        out.append(Fraction(x))
    return tuple(out)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class AffineLattice:
    """Lattice coordinates on an affine subspace: ``x = origin + basis @ y``.

    ``basis`` is a D x r integer matrix whose columns span the saturated
    lattice of the direction space; ``inverse_rows`` are the r rows of a
    unimodular matrix recovering ``y`` from ``x - origin``; ``equations``
    cut out the direction space.
    """

    origin: Point
    basis: IntegerMatrix
    inverse_rows: IntegerMatrix
    equations: tuple

    @property
    def dim(self) -> int:
        return self.basis.ncols

    def to_local(self, x) -> Point:
        diff = tuple(Fraction(a) - b for a, b in zip(x, self.origin))
        return self.inverse_rows @ diff

    def to_ambient(self, y) -> Point:
        return tuple(o + s for o, s in zip(self.origin, self.basis @ tuple(y)))

    def contains(self, x) -> bool:
        diff = tuple(Fraction(a) - b for a, b in zip(x, self.origin))
        return all(_dot(e, diff) == 0 for e in self.equations)


def affine_lattice(points: Sequence[Point]) -> AffineLattice:
    """HNF-based lattice coordinates for the affine hull of ``points``."""
    origin = min(points)
    D = len(origin)
    diffs = [tuple(a - b for a, b in zip(p, origin)) for p in points]
    diffs = [d for d in diffs if any(d)]
    if diffs:
        equations = nullspace(diffs, D)
    else:
        equations = [tuple(int(i == j) for j in range(D)) for i in range(D)]
    c = len(equations)
    if c == 0:
        ident = IntegerMatrix.identity(D)
        return AffineLattice(origin, ident, ident, ())
    E = IntegerMatrix(equations, D)
    _, V = column_hnf(E)  # E @ V = [L | 0]
    basis = V.select_columns(range(c, D))
    Vinv = unimodular_inverse(V)
    inverse_rows = Vinv.select_rows(range(c, D))
    return AffineLattice(origin, basis, inverse_rows, tuple(equations))


@dataclass(frozen=True)
class FVector:
    counts: tuple[int, ...]

    def __iter__(self):
        return iter(self.counts)

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, i):
        return self.counts[i]

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.counts))

    def as_tuple(self) -> tuple[int, ...]:
        return self.counts


class Polytope:
    """A bounded convex polytope with exact coordinates.

    Attributes
    ----------
    vertices : tuple of points in ambient coordinates, lexicographically sorted
    normals : IntegerMatrix with one primitive inner facet normal per column,
        expressed in local lattice coordinates (ambient when full-dimensional)
    offsets : facet offsets ``z`` so that ``normals.T @ m + z >= 0``
    lattice : the affine lattice chart used for the local coordinates
    """

    __slots__ = ("vertices", "normals", "offsets", "lattice", "_local_vertices", "_incidence")

    def __init__(self, vertices, normals, offsets, lattice: AffineLattice | None):
        self.vertices = tuple(vertices)
        self.normals = normals
        self.offsets = tuple(offsets)
        self.lattice = lattice
        self._local_vertices = None
        self._incidence = None

    # -- construction ------------------------------------------------------
    @classmethod
    def from_vertices(cls, points: Iterable) -> "Polytope":
        pts = sorted({_frac_point(p) for p in points})
        if not pts:
            raise Empty("no points given")
        D = len(pts[0])
        if any(len(p) != D for p in pts):
            raise ValueError("points of different dimension")
        lat = affine_lattice(pts)
        full = lat.dim == D
        local = pts if full else [lat.to_local(p) for p in pts]
        r = lat.dim
        if r == 0:
            return cls(pts, IntegerMatrix.zeros(0, 0), (), None if full else lat)
        normals, offsets, vmask = _hull(local, r)
        verts = [p for p, keep in zip(pts, vmask) if keep]
        F = IntegerMatrix.from_columns(normals, r)
        return cls(verts, F, offsets, None if full else lat)

    @classmethod
    def from_inequalities(cls, normals, offsets) -> "Polytope":
        """Polytope ``{m : normals.T @ m + offsets >= 0}`` (normals as columns)."""
        F = normals if isinstance(normals, IntegerMatrix) else IntegerMatrix(normals)
        d, n = F.shape
        z = [Fraction(x) for x in offsets]
        if len(z) != n:
            raise ValueError("offset count does not match normal count")
        # homogenize: (lam, m) with lam * z_j + <u_j, m> >= 0 and lam >= 0
        rows = []
        for j in range(n):
            rows.append((z[j],) + F.col(j))
        rows.append((1,) + (0,) * d)
        rows = [primitive(r) for r in rows]
        try:
            rays = _dd.extreme_rays(rows, d + 1)
        except NotPointed as exc:  # lineality: some direction m with F^t m = 0
            raise Unbounded(str(exc)) from exc
        pts = []
        for ray in rays:
            lam = ray[0]
            if lam == 0:
                raise Unbounded(f"recession direction {ray[1:]}")
            pts.append(tuple(Fraction(x, lam) for x in ray[1:]))
        if not pts:
            raise Empty("inequalities are infeasible")
        return cls.from_vertices(pts)

    # -- basic properties --------------------------------------------------
    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @property
    def lattice_dim(self) -> int:
        return self.ambient_dim if self.lattice is None else self.lattice.dim

    dim = lattice_dim

    @property
    def is_full_dimensional(self) -> bool:
        return self.lattice is None

    @property
    def n_facets(self) -> int:
        return self.normals.ncols

    @property
    def local_vertices(self) -> tuple:
        if self._local_vertices is None:
            if self.lattice is None:
                self._local_vertices = self.vertices
            else:
                self._local_vertices = tuple(self.lattice.to_local(v) for v in self.vertices)
        return self._local_vertices

    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    def integer_vertices(self) -> list[tuple[int, ...]]:
        if not self.is_lattice():
            raise NotLattice("polytope has non-integral vertices")
        return [tuple(int(x) for x in v) for v in self.vertices]

    def facet_normals(self) -> list[tuple[int, ...]]:
        return list(self.normals.columns)

    def contains(self, x) -> bool:
        x = _frac_point(x)
        if self.lattice is not None:
            if not self.lattice.contains(x):
                return False
            x = self.lattice.to_local(x)
        return all(_dot(u, x) + z >= 0 for u, z in zip(self.normals.columns, self.offsets))

    def incidence(self) -> list[frozenset[int]]:
        """For each vertex, the set of facet indices containing it."""
        if self._incidence is None:
            cols = self.normals.columns
            self._incidence = [
                frozenset(j for j, (u, z) in enumerate(zip(cols, self.offsets)) if _dot(u, v) + z == 0)
                for v in self.local_vertices
            ]
        return self._incidence

    def translate(self, shift) -> "Polytope":
        shift = _frac_point(shift)
        verts = [tuple(a + b for a, b in zip(v, shift)) for v in self.vertices]
        if self.lattice is None:
            offs = [z - _dot(u, shift) for u, z in zip(self.normals.columns, self.offsets)]
            return Polytope(sorted(verts), self.normals, offs, None)
        return Polytope.from_vertices(verts)

    def scale(self, s) -> "Polytope":
        s = Fraction(s)
        return Polytope.from_vertices([tuple(s * x for x in v) for v in self.vertices])

    def with_facet_order(self, normals: Sequence[Sequence[int]]) -> "Polytope":
        """Reorder facets to match a given list of normals (must be a permutation)."""
        cols = list(self.normals.columns)
        index = {c: j for j, c in enumerate(cols)}
        wanted = [tuple(int(x) for x in u) for u in normals]
        if sorted(wanted) != sorted(cols):
            raise ValueError("requested normals are not a permutation of the facet normals")
        perm = [index[u] for u in wanted]
        return Polytope(
            self.vertices,
            IntegerMatrix.from_columns(wanted, self.normals.nrows),
            [self.offsets[j] for j in perm],
            self.lattice,
        )

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        vs = ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"Polytope[{vs}]"

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "vertices": [[str(x) for x in v] for v in self.vertices],
            "facets": {
                "normals": [list(u) for u in self.normals.columns],
                "offsets": [str(z) for z in self.offsets],
            },
        }


def polytope_from_json(obj: dict) -> Polytope:
    """Parse ``{"vertices": [...]}`` or ``{"facets": {"normals", "offsets"}}``."""
    if "vertices" in obj:
        return Polytope.from_vertices([[Fraction(str(x)) for x in v] for v in obj["vertices"]])
    if "facets" in obj:
        normals = [tuple(int(x) for x in u) for u in obj["facets"]["normals"]]
        offsets = [Fraction(str(x)) for x in obj["facets"]["offsets"]]
        if not normals:
            raise InputError("no facet normals given")
        return Polytope.from_inequalities(IntegerMatrix.from_columns(normals), offsets)
    raise InputError("polytope JSON needs 'vertices' or 'facets'")


# ---------------------------------------------------------------------------
# convex hull in local (full-dimensional) coordinates


def _facets_from_points(points: Sequence[Point], r: int):
    gens = [(1,) + tuple(p) for p in points]
    rays = _dd.facets_of_rays(gens, r + 1)
    facets = []
    for y in rays:
        u = y[1:]
        g = vec_gcd(u)
        if g == 0:
            continue
        facets.append((tuple(x // g for x in u), Fraction(y[0], g)))
    return facets


def _violations(points, facets):
    """Indices of points outside the hull, one extreme violator per facet."""
    out = set()
    for u, z in facets:
        worst = None
        for i, p in enumerate(points):
            v = _dot(u, p) + z
            if v < 0 and (worst is None or (v, p) < worst[0]):
                worst = ((v, p), i)
        if worst is not None:
            out.add(worst[1])
    return out


def _hull(points: list[Point], r: int):
    """Facets (lex-sorted) and a vertex mask for a full-dimensional point set."""
    if len(points) <= 40:
        seed = list(range(len(points)))
    else:
        seed = set()
        rng = random.Random(0)
        dirs = [tuple(int(i == j) * s for j in range(r)) for i in range(r) for s in (1, -1)]
        dirs += [tuple(rng.randint(-1000, 1000) for _ in range(r)) for _ in range(8 * r)]
        for c in dirs:
            best = min(points, key=lambda p: (_dot(c, p), p))
            seed.add(points.index(best))
        # make sure the seed is full-dimensional
        base = [points[0]]
        seed.add(0)
        for i, p in enumerate(points):
            if rank([tuple(a - b for a, b in zip(q, points[0])) for q in base[1:] + [p]]) == len(base):
                base.append(p)
                seed.add(i)
                if len(base) == r + 1:
                    break
        seed = sorted(seed)
    while True:
        facets = _facets_from_points([points[i] for i in seed], r)
        bad = _violations(points, facets) - set(seed)
        if not bad:
            break
        seed = sorted(set(seed) | bad)
    facets.sort()
    mask = []
    for p in points:
        tight = [u for u, z in facets if _dot(u, p) + z == 0]
        mask.append(len(tight) >= r and rank(tight) == r)
    normals = [u for u, _ in facets]
    offsets = [z for _, z in facets]
    return normals, offsets, mask


# ---------------------------------------------------------------------------
# operations


def dual_convert(obj) -> Polytope:
    """Build a polytope from a V-rep (iterable of points), an H-rep pair
    ``(normals, offsets)`` or the JSON schema dictionary."""
    if isinstance(obj, Polytope):
        return obj
    if isinstance(obj, dict):
        return polytope_from_json(obj)
    if isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[0], IntegerMatrix):
        return Polytope.from_inequalities(*obj)
    return Polytope.from_vertices(obj)


def support_vector(P: Polytope, F: IntegerMatrix, integral: bool = True) -> tuple:
    """``a_j = -min_{m in P} <u_j, m>`` for each column ``u_j`` of ``F``."""
    out = []
    for u in F.columns:
        val = -min(_dot(u, v) for v in P.vertices)
        if integral:
            if val.denominator != 1:
                raise NotLattice(f"support value {val} along {u} is not an integer")
            val = int(val)
        out.append(val)
    return tuple(out)


def lattice_points(P: Polytope) -> list[tuple[int, ...]]:
    """All integer points of P in lexicographic order (bounding-box scan)."""
    D = P.ambient_dim
    lo = [ceil(min(v[i] for v in P.vertices)) for i in range(D)]
    hi = [floor(max(v[i] for v in P.vertices)) for i in range(D)]
    pts = []
    for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if P.contains(p):
            pts.append(tuple(p))
    return pts


def minkowski_weighted(parts: Sequence[tuple[Polytope, object]]) -> Polytope:
    """Exact Minkowski sum ``sum_i w_i * P_i`` computed in V-representation."""
    if not parts:
        raise ValueError("empty Minkowski sum")
    D = parts[0][0].ambient_dim
    if any(P.ambient_dim != D for P, _ in parts):
        raise ValueError("Minkowski summands live in different dimensions")
    acc = [tuple(Fraction(0) for _ in range(D))]
    for P, w in parts:
        w = Fraction(w)
        if w <= 0:
            raise ValueError("Minkowski weights must be positive")
        cand = {tuple(a + w * b for a, b in zip(v, u)) for v in acc for u in P.vertices}
        acc = list(Polytope.from_vertices(cand).vertices)
    return Polytope.from_vertices(acc)


def f_vector(P: Polytope) -> FVector:
    """Face counts of P by dimension 0..dim-1 from the vertex-facet incidences."""
    d = P.lattice_dim
    if d == 0:
        return FVector(())
    inc = P.incidence()
    nv = len(P.vertices)
    facets = [frozenset(i for i in range(nv) if j in inc[i]) for j in range(P.n_facets)]
    faces = set(facets)
    frontier = set(facets)
    while frontier:
        new = set()
        for a in frontier:
            for b in facets:
                c = a & b
                if c and c not in faces:
                    new.add(c)
        faces |= new
        frontier = new
    counts = [0] * d
    lv = P.local_vertices
    for face in faces:
        pts = [lv[i] for i in face]
        base = pts[0]
        k = rank([tuple(a - b for a, b in zip(p, base)) for p in pts[1:]]) if len(pts) > 1 else 0
        if k < d:
            counts[k] += 1
    return FVector(tuple(counts))
