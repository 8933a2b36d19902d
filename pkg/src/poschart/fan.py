"""Normal fans, deformation and nef cones, and smooth subcones."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _dd
from .errors import NotSimplicial, NotSmoothFan
from .exactla import (
    IntegerMatrix,
    det,
    hnf,
    primitive,
    rank,
    rational_inverse,
    rational_solve,
)
from .polytope import Polytope


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class Fan:
    """A complete fan given by primitive rays (columns of ``rays``) and the
    index sets of its maximal cones."""

    rays: IntegerMatrix
    maximal_cones: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return self.rays.nrows

    @property
    def n_rays(self) -> int:
        return self.rays.ncols

    def cone_matrix(self, sigma: Sequence[int]) -> IntegerMatrix:
        return self.rays.select_columns(sigma)

    def is_simplicial(self) -> bool:
        return all(len(s) == self.dim for s in self.maximal_cones)

    def is_smooth(self) -> bool:
        return self.is_simplicial() and all(
            abs(det(self.cone_matrix(s))) == 1 for s in self.maximal_cones
        )

    def check_smooth(self) -> None:
        """Raise NotSmoothFan naming the first offending maximal cone."""
        for s in self.maximal_cones:
            if len(s) != self.dim:
                raise NotSmoothFan(s, None)
            D = abs(det(self.cone_matrix(s)))
            if D != 1:
                raise NotSmoothFan(s, D)

    def irrelevant_generators(self) -> list[tuple[int, ...]]:
        """Exponent vectors of y^{sigma-hat}: the product of all y_j with j outside sigma."""
        n = self.n_rays
        return [tuple(0 if j in s else 1 for j in range(n)) for s in self.maximal_cones]

    def same_as(self, other: "Fan") -> bool:
        """Equality of fans as sets of cones, ignoring ray labels."""
        if sorted(self.rays.columns) != sorted(other.rays.columns):
            return False
        mine = {frozenset(self.rays.col(j) for j in s) for s in self.maximal_cones}
        theirs = {frozenset(other.rays.col(j) for j in s) for s in other.maximal_cones}
        return mine == theirs


def normal_fan(P: Polytope, ray_order: Sequence[Sequence[int]] | None = None) -> Fan:
    """Inner normal fan of a full-dimensional polytope.

    One maximal cone per vertex (vertices in lex order), made of the facets
    containing it.  ``ray_order`` optionally fixes the column order of F.
    """
    if not P.is_full_dimensional:
        raise ValueError("normal fan requires a full-dimensional polytope")
    if ray_order is not None:
        P = P.with_facet_order(ray_order)
    cones = tuple(tuple(sorted(s)) for s in P.incidence())
    return Fan(P.normals, cones)


def fan_properties(fan: Fan) -> tuple[bool, bool]:
    """``(simplicial, smooth)``."""
    return fan.is_simplicial(), fan.is_smooth()


# ---------------------------------------------------------------------------
# cones


class Cone:
    """A polyhedral cone with lazily computed rays and facet inequalities.

    ``inequalities`` are rows g with g . x >= 0.
    """

    __slots__ = ("ambient_dim", "_rays", "_ineqs")

    def __init__(self, ambient_dim: int, rays=None, inequalities=None):
        if rays is None and inequalities is None:
            raise ValueError("a cone needs rays or inequalities")
        self.ambient_dim = ambient_dim
        self._rays = None if rays is None else sorted({primitive(r) for r in rays})
        self._ineqs = None if inequalities is None else [tuple(g) for g in inequalities]

    @property
    def rays(self) -> list[tuple[int, ...]]:
        if self._rays is None:
            self._rays = cone_rays(self._ineqs, self.ambient_dim)
        return self._rays

    @property
    def inequalities(self) -> list[tuple[int, ...]]:
        if self._ineqs is None:
            self._ineqs = cone_inequalities(self._rays, self.ambient_dim)
        return self._ineqs

    @property
    def dim(self) -> int:
        return rank(self.rays) if self.rays else 0

    def contains(self, x) -> bool:
        return all(_dot(g, x) >= 0 for g in self.inequalities)

    def contains_in_interior(self, x) -> bool:
        return all(_dot(g, x) > 0 for g in self.facets())

    def facets(self) -> list[tuple[int, ...]]:
        """Irredundant facet inequalities (requires a full-dimensional pointed cone)."""
        return cone_inequalities(self.rays, self.ambient_dim)

    def is_smooth(self) -> bool:
        R = self.rays
        return len(R) == self.ambient_dim and abs(det(R)) == 1

    def to_json(self) -> dict:
        out = {}
        if self._rays is not None:
            out["rays"] = [list(r) for r in self._rays]
        if self._ineqs is not None:
            out["inequalities"] = [[str(x) for x in g] for g in self._ineqs]
        return out

    def __repr__(self):
        if self._rays is not None:
            return f"Cone(rays={self._rays})"
        return f"Cone(inequalities={len(self._ineqs)})"


def cone_rays(inequalities, dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of ``{x : g . x >= 0}``; NotPointed if the cone has a line."""
    return _dd.extreme_rays(inequalities, dim)


def cone_inequalities(rays, dim: int) -> list[tuple[int, ...]]:
    """Irredundant facets of the full-dimensional cone spanned by ``rays``."""
    return _dd.facets_of_rays(rays, dim)


def _vertex_inequalities(fan: Fan):
    """Rows g in Q^n with g . z = <u_j, m_sigma(z)> + z_j, for sigma and j not in sigma."""
    F = fan.rays
    n = F.ncols
    out = []
    for s in fan.maximal_cones:
        if len(s) != fan.dim:
            raise NotSimplicial(f"maximal cone {s} is not simplicial")
        # m_sigma(z) = -(F_sigma^t)^{-1} z_sigma
        inv = rational_inverse(F.select_columns(s).T)
        for j in range(n):
            if j in s:
                continue
            w = inv.T @ F.col(j)  # <u_j, inv z_s> = (inv^t u_j) . z_s
            g = [Fraction(0)] * n
            for pos, i in enumerate(s):
                g[i] -= w[pos]
            g[j] += 1
            out.append(g)
    return out


def deformation_cone(fan: Fan) -> Cone:
    """Deformation cone in R^n as an H-representation.

    One inequality per pair (maximal cone, ray outside it); redundancy is kept.
    """
    rows = [primitive(g) if any(g) else tuple(0 for _ in g) for g in _vertex_inequalities(fan)]
    return Cone(fan.n_rays, inequalities=rows)


def nef_cone(fan: Fan, K: IntegerMatrix, S: IntegerMatrix) -> Cone:
    """Nef cone in class coordinates c, with z = S c a lift of c.

    ``K`` is a Gale dual of F and ``S`` an integer right inverse of ``K^t``.
    """
    k = K.ncols
    St = S.T
    seen = set()
    rows = []
    for g in deformation_cone(fan).inequalities:
        h = primitive(St @ g)
        if any(h) and h not in seen:
            seen.add(h)
            rows.append(h)
    rows.sort()
    return Cone(k, inequalities=rows)


# ---------------------------------------------------------------------------
# smooth subcones


def _coords(basis: Sequence[Sequence[int]], x) -> tuple[Fraction, ...]:
    """Coefficients of x in the basis given by the rows of ``basis``."""
    return rational_solve(IntegerMatrix(basis).T, x)


def placing_triangulation(rays: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Placing triangulation of a full-dimensional pointed cone.

    The initial cell is the first linearly independent k-subset chosen greedily
    in input order; remaining rays are placed in input order.  Cells are index
    tuples into ``rays``, in creation order.
    """
    rays = [tuple(r) for r in rays]
    k = len(rays[0])
    first: list[int] = []
    for i, r in enumerate(rays):
        if rank([rays[j] for j in first] + [r]) > len(first):
            first.append(i)
            if len(first) == k:
                break
    if len(first) < k:
        raise ValueError("rays do not span a full-dimensional cone")
    cells = [tuple(first)]
    normals: dict[tuple[int, ...], tuple[int, ...]] = {}
    for i in range(len(rays)):
        if i in first:
            continue
        r = rays[i]
        # boundary facets: (k-1)-subsets lying in exactly one cell
        count: dict[tuple[int, ...], int] = {}
        owner: dict[tuple[int, ...], tuple[int, ...]] = {}
        for c in cells:
            for drop in c:
                f = tuple(x for x in c if x != drop)
                count[f] = count.get(f, 0) + 1
                owner[f] = c
        new = []
        for f, cnt in count.items():
            if cnt != 1:
                continue
            if f not in normals:
                normals[f] = _hyperplane([rays[x] for x in f])
            normal = normals[f]
            c = owner[f]
            apex = next(x for x in c if x not in f)
            if _dot(normal, rays[apex]) * _dot(normal, r) < 0:
                new.append(tuple(sorted(f + (i,))))
        cells.extend(sorted(new))
    return cells


def _hyperplane(vectors: list[tuple[int, ...]]) -> tuple[int, ...]:
    """Integer normal of the hyperplane spanned by k-1 independent vectors in Z^k
    (signed maximal minors)."""
    k = len(vectors) + 1
    out = []
    for j in range(k):
        minor = [tuple(v[i] for i in range(k) if i != j) for v in vectors]
        out.append((-1) ** j * (det(minor) if minor else 1))
    return primitive(out)


def _fundamental_points(basis: list[tuple[int, ...]]):
    """Nonzero lattice points of the half-open fundamental parallelepiped,
    each paired with its coefficient vector in ``basis``."""
    k = len(basis)
    H, _ = hnf(basis)
    diag = [H[i, i] for i in range(k)]
    inv = rational_inverse(IntegerMatrix(basis).T)
    out = []

    def reps(prefix):
        i = len(prefix)
        if i == k:
            yield tuple(prefix)
            return
        for v in range(abs(diag[i])):
            yield from reps(prefix + [v])

    for x in reps([]):
        lam = inv @ x
        frac = tuple(l - (l.numerator // l.denominator) for l in lam)
        if not any(frac):
            continue
        p = tuple(sum(frac[i] * basis[i][j] for i in range(k)) for j in range(k))
        out.append((tuple(int(v) for v in p), frac))
    return out


def resolve_simplicial(basis: Sequence[Sequence[int]], reference) -> list[tuple[int, ...]]:
    """Stellar subdivision of a simplicial cone down to a unimodular cone containing
    ``reference``.  The multiplicity strictly decreases at every step."""
    basis = [tuple(int(x) for x in b) for b in basis]
    mult = abs(det(basis))
    while mult != 1:
        pts = _fundamental_points(basis)
        p, lam = min(pts, key=lambda t: (sum(t[1]), t[0]))
        chosen = None
        for i in range(len(basis)):
            if lam[i] == 0:
                continue
            cand = basis[:i] + [p] + basis[i + 1 :]
            if all(c >= 0 for c in _coords(cand, reference)):
                chosen = cand
                break
        assert chosen is not None, "reference lost during subdivision"
        new_mult = abs(det(chosen))
        assert new_mult < mult
        basis, mult = chosen, new_mult
    return basis


def smooth_subcone(N: Cone, reference) -> Cone:
    """A smooth full-dimensional subcone of N whose closure contains the
    triangulation cell holding ``reference``."""
    rays = N.rays
    cells = placing_triangulation(rays)
    for c in cells:
        basis = [rays[i] for i in c]
        if all(x >= 0 for x in _coords(basis, reference)):
            break
    else:
        raise ValueError("reference point is not in the cone")
    return Cone(N.ambient_dim, rays=resolve_simplicial(basis, reference))
