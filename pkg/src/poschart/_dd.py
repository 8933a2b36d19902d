"""Double description method over the integers.

``extreme_rays(A)`` returns the extreme rays of the pointed cone
``{x : A x >= 0}``.  Rays are kept primitive; zero sets are Python ints used
as bitsets so the combinatorial adjacency test stays cheap.
"""

from __future__ import annotations

from typing import Sequence

from .errors import NotPointed
from .exactla import primitive, rank, rational_inverse


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _normalize_rows(A: Sequence[Sequence]) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for row in A:
        p = primitive(row)
        if not any(p) or p in seen:
            continue
        seen.add(p)
        out.append(p)
    return out


def _initial_rays(B: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Primitive columns r_j with B r_j a positive multiple of e_j."""
    inv = rational_inverse(B)
    return [primitive(c) for c in inv.columns]


def extreme_rays(A: Sequence[Sequence], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of ``{x in R^dim : a . x >= 0 for a in A}``.

    Raises NotPointed when the cone contains a line.
    """
    rows = _normalize_rows(A)
    r = rank(rows) if rows else 0
    if r < dim:
        raise NotPointed(f"cone has a lineality space (rank {r} < {dim})")
    rows.sort()
    # greedy choice of a nonsingular initial block
    basis: list[int] = []
    for i, r in enumerate(rows):
        if rank([rows[j] for j in basis] + [r]) > len(basis):
            basis.append(i)
            if len(basis) == dim:
                break
    order = basis + [i for i in range(len(rows)) if i not in set(basis)]
    rows = [rows[i] for i in order]

    B = rows[:dim]
    rays = _initial_rays(B)
    zsets = []
    for j in range(dim):
        z = 0
        for i in range(dim):
            if i != j:
                z |= 1 << i
        zsets.append(z)

    need = dim - 2
    for idx in range(dim, len(rows)):
        a = rows[idx]
        vals = [_dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            bit = 1 << idx
            zsets = [z | bit if v == 0 else z for z, v in zip(zsets, vals)]
            continue
        new_rays = []
        new_z = []
        nrays = len(rays)
        for p in pos:
            zp = zsets[p]
            for q in neg:
                common = zp & zsets[q]
                if bin(common).count("1") < need:
                    continue
                adjacent = True
                for o in range(nrays):
                    if o != p and o != q and zsets[o] & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = vals[p], vals[q]
                r = tuple(vp * y - vq * x for x, y in zip(rays[p], rays[q]))
                new_rays.append(primitive(r))
                new_z.append(common | (1 << idx))
        bit = 1 << idx
        keep_rays = []
        keep_z = []
        for i, v in enumerate(vals):
            if v > 0:
                keep_rays.append(rays[i])
                keep_z.append(zsets[i])
            elif v == 0:
                keep_rays.append(rays[i])
                keep_z.append(zsets[i] | bit)
        rays = keep_rays + new_rays
        zsets = keep_z + new_z

    return sorted(set(rays))


def facets_of_rays(R: Sequence[Sequence], dim: int) -> list[tuple[int, ...]]:
    """Irredundant inequalities of the full-dimensional cone generated by R."""
    R = _normalize_rows(R)
    if not R or rank(R) < dim:
        raise ValueError("cone generated by the given rays is not full-dimensional")
    return extreme_rays(R, dim)
