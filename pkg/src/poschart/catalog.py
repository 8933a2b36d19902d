"""Built-in examples with fixed ray orders and expected results.

Entries are plain data and load without computation.  Every expected value
carries an origin label: ``"literature"`` for values transcribed from the
published worked examples and ``"closed form"`` for values derived by hand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any

from .errors import UnknownEntry
from .polynomials import LaurentPolynomial

Vector = tuple[int, ...]


@dataclass(frozen=True)
class ChartFixture:
    """One choice of sections for an entry, with its expected outputs."""

    sections: tuple[str, ...]
    ray_order: tuple[Vector, ...] | None = None
    ideal: tuple[str, ...] | None = None
    M: tuple[Vector, ...] | None = None
    degree: tuple[int, int] | None = None
    binary_relations: tuple[str, ...] = ()
    saturation_feasible: bool = True


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    dim: int
    vertices: tuple[Vector, ...] | None = None
    ray_order: tuple[Vector, ...] | None = None
    charts: tuple[ChartFixture, ...] = ()
    expected: dict[str, Any] = field(default_factory=dict)
    origin: dict[str, str] = field(default_factory=dict)

    @property
    def chart(self) -> ChartFixture | None:
        return self.charts[0] if self.charts else None

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "description": self.description, "dim": self.dim}
        if self.vertices is not None:
            out["vertices"] = [[str(x) for x in v] for v in self.vertices]
        if self.ray_order is not None:
            out["ray_order"] = [list(u) for u in self.ray_order]
        out["charts"] = [
            {
                "sections": list(c.sections),
                "ray_order": None if c.ray_order is None else [list(u) for u in c.ray_order],
                "ideal": None if c.ideal is None else list(c.ideal),
                "M": None if c.M is None else [list(r) for r in c.M],
                "degree": None if c.degree is None else list(c.degree),
                "binary_relations": list(c.binary_relations),
            }
            for c in self.charts
        ]
        out["expected"] = {k: _jsonable(v) for k, v in self.expected.items()}
        out["origin"] = dict(self.origin)
        return out


def _jsonable(v):
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    return v


def _columns(rows) -> tuple[Vector, ...]:
    return tuple(tuple(r[j] for r in rows) for j in range(len(rows[0])))


def _rows(text: str) -> tuple[Vector, ...]:
    return tuple(tuple(int(x) for x in line.split()) for line in text.strip().splitlines())


# ---------------------------------------------------------------------------
# pentagon

_PENTAGON_ORDER = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1))

PENTAGON = CatalogEntry(
    name="pentagon",
    description="pentagon with vertices (0,0),(0,2),(2,2),(2,1),(1,0); toric surface with five rays",
    dim=2,
    vertices=((0, 0), (0, 2), (2, 2), (2, 1), (1, 0)),
    ray_order=_PENTAGON_ORDER,
    charts=(
        ChartFixture(
            sections=("1+t1", "1+t2", "1+t2+t1*t2"),
            ray_order=_PENTAGON_ORDER,
            ideal=("y3*y4 + y1 - 1", "y5 + y2*y3 - 1", "y4*y5 + y2*y3*y4 + y1*y2 - 1"),
            M=_rows(
                """
                1 0 -1 -1 0
                0 1 1 0 -1
                0 0 1 1 0
                0 0 0 0 1
                0 0 0 1 1
                """
            ),
            degree=(2, 5),
        ),
    ),
    expected={
        # phi as (numerator, denominator) pairs
        "phi": (
            ("t1", "1+t1"),
            ("t2+t1*t2", "1+t2+t1*t2"),
            ("1+t2+t1*t2", "1+t1+t2+t1*t2"),
            ("1+t2", "1+t2+t1*t2"),
            ("1", "1+t2"),
        ),
        # nef rays as divisor combinations sum_j D_j, and their coordinates in
        # the basis [D3], [D4], [D5]
        "nef_ray_divisors": ((3, 4), (5,), (4, 5)),
        "nef_ray_classes_d345": ((1, 1, 0), (0, 0, 1), (0, 1, 1)),
        "Kt": ((1, -1, 1, 0, 0), (0, 0, 1, -1, 1), (0, 1, -1, 1, 0)),
        "irrelevant": ("y1*y2*y3", "y1*y2*y5", "y3*y4*y5", "y1*y4*y5", "y2*y3*y4"),
        "scattering_count": 2,
        # moment map: per section, the exponent vectors eta with their monomials
        "moment_terms": (
            (("y3*y4", (0, 0, 1, 1, 0)), ("y1", (1, 0, 0, 0, 0))),
            (("y5", (0, 0, 0, 0, 1)), ("y2*y3", (0, 1, 1, 0, 0))),
            (
                ("y4*y5", (0, 0, 0, 1, 1)),
                ("y2*y3*y4", (0, 1, 1, 1, 0)),
                ("y1*y2", (1, 1, 0, 0, 0)),
            ),
        ),
        "f_vector": (5, 5),
    },
    origin={
        "M": "literature",
        "ideal": "literature",
        "phi": "literature",
        "nef_ray_classes_d345": "literature",
        "Kt": "literature",
        "irrelevant": "literature",
        "scattering_count": "literature",
        "moment_terms": "literature",
        "degree": "computed",
    },
)

# ---------------------------------------------------------------------------
# unit square

_SQUARE_ORDER = ((1, 0), (0, 1), (-1, 0), (0, -1))

SQUARE = CatalogEntry(
    name="square",
    description="unit square; P1 x P1 with sections 1+t1 and 1+t2",
    dim=2,
    vertices=((0, 0), (1, 0), (0, 1), (1, 1)),
    ray_order=_SQUARE_ORDER,
    charts=(
        ChartFixture(
            sections=("1+t1", "1+t2"),
            ray_order=_SQUARE_ORDER,
            ideal=("y3 + y1 - 1", "y4 + y2 - 1"),
            M=_rows(
                """
                1 0 -1 0
                0 1 0 -1
                0 0 1 0
                0 0 0 1
                """
            ),
            degree=(2, 1),
        ),
    ),
    expected={
        "phi": (("t1", "1+t1"), ("t2", "1+t2"), ("1", "1+t1"), ("1", "1+t2")),
        "scattering_count": 1,
        # E = [[2,1],[1,1]]: sections (1+t1)^a (1+t2)^b and (1+t1)^c (1+t2)^d
        "moment_E": ((2, 1), (1, 1)),
        "moment_E_components": (
            "2*s1*y1^2*y2 + s2*y1*y2 + 2*s1*y1^2*y4 + s2*y1*y4 + 2*s1*y1*y2*y3 + 2*s1*y1*y3*y4",
            "s1*y1^2*y2 + s2*y1*y2 + 2*s1*y1*y2*y3 + s1*y2*y3^2 + s2*y2*y3",
            "2*s1*y1*y2*y3 + 2*s1*y1*y3*y4 + 2*s1*y2*y3^2 + s2*y2*y3 + 2*s1*y3^2*y4 + s2*y3*y4",
            "s1*y1^2*y4 + s2*y1*y4 + 2*s1*y1*y3*y4 + s1*y3^2*y4 + s2*y3*y4",
        ),
    },
    origin={
        "M": "literature",
        "phi": "literature",
        "ideal": "literature",
        "moment_E_components": "literature",
        "scattering_count": "closed form",
    },
)


def square_sections(E) -> list[LaurentPolynomial]:
    """Sections (1+t1)^a (1+t2)^b and (1+t1)^c (1+t2)^d for E = [[a, b], [c, d]]."""
    u = LaurentPolynomial.parse("1+t1", 2)
    v = LaurentPolynomial.parse("1+t2", 2)
    return [u**a * v**b for a, b in E]


# ---------------------------------------------------------------------------
# simplices


def _simplex(d: int) -> CatalogEntry:
    order = tuple(tuple(int(i == j) for j in range(d)) for i in range(d)) + ((-1,) * d,)
    verts = ((0,) * d,) + order[:d]
    one = "1+" + "+".join(f"t{i + 1}" for i in range(d))
    return CatalogEntry(
        name=f"simplex{d}",
        description=f"standard {d}-simplex; projective space of dimension {d}",
        dim=d,
        vertices=verts,
        ray_order=order,
        charts=(
            ChartFixture(
                sections=(one,),
                ray_order=order,
                ideal=(" + ".join(f"y{i + 1}" for i in reversed(range(d + 1))) + " - 1",),
                degree=(d, 1),
            ),
        ),
        expected={
            "phi": tuple((f"t{i + 1}", one) for i in range(d)) + (("1", one),),
            "scattering_count": 1,
        },
        origin={"phi": "literature", "ideal": "literature", "scattering_count": "closed form"},
    )


SIMPLICES = tuple(_simplex(d) for d in range(1, 6))

# ---------------------------------------------------------------------------
# hexagon

_HEX_ORDER = ((0, -1), (-1, 0), (1, 0), (0, 1), (-1, 1), (1, -1))
# relabeling of the printed ray order under which the second printed ideal is reproduced
_HEX_ORDER_2 = ((0, -1), (1, 0), (0, 1), (-1, 0), (-1, 1), (1, -1))

HEXAGON = CatalogEntry(
    name="hexagon",
    description="hexagon with vertices (0,0),(0,2),(1,3),(2,0),(3,1),(3,3); two charts",
    dim=2,
    vertices=((0, 0), (0, 2), (1, 3), (2, 0), (3, 1), (3, 3)),
    ray_order=_HEX_ORDER,
    charts=(
        ChartFixture(
            sections=("1+t1", "1+t2", "1+t1+t1*t2", "1+t2+t1*t2"),
            ray_order=_HEX_ORDER,
            ideal=(
                "y2*y5 + y3*y6 - 1",
                "y1*y6 + y4*y5 - 1",
                "y1*y2*y5 + y1*y3*y6 + y3*y4*y5 - 1",
                "y1*y2*y6 + y2*y4*y5 + y3*y4*y6 - 1",
            ),
            degree=(2, 10),
        ),
        ChartFixture(
            sections=("1+t1", "1+t2", "1+t1*t2", "1+t2+t1*t2"),
            ray_order=_HEX_ORDER_2,
            ideal=(
                "y1*y4 + y2*y3 - 1",
                "y2*y6 + y4*y5 - 1",
                "y1*y4*y6 + y2*y3*y6 + y3*y4*y5 - 1",
                "y1*y6 + y3*y5 - 1",
            ),
            degree=(2, 7),
            binary_relations=(
                "y1 + y2*y3^2*y5 - 1",
                "y2 + y1*y4^2*y5 - 1",
                "y3 + y1*y4*y6 - 1",
                "y4 + y2*y3*y6 - 1",
                "y5 + y1*y2*y6^2 - 1",
                "y6 + y3*y4*y5 - 1",
            ),
        ),
    ),
    expected={
        "nef_ray_count": 5,
        # the printed nef rays, as divisor index sets in the printed ray order
        "nef_ray_divisors_printed": ((5, 6), (1, 6), (1, 2, 6), (2, 5), (2, 5, 6)),
    },
    origin={
        "ideal": "literature",
        "degree": "literature",
        "binary_relations": "literature",
        "nef_ray_divisors_printed": "literature",
    },
)

# ---------------------------------------------------------------------------
# E6 pezzotope

_PEZZO_F = _rows(
    """
    0 0 0 0 -1 0 0 -1 -1 1 0 0 -1 -1 0
    0 0 0 -1 0 0 -1 0 1 0 1 -1 0 0 -1
    0 0 -1 1 0 1 0 0 0 0 0 0 -1 1 1
    1 -1 0 1 0 0 0 1 0 0 0 1 0 1 0
    """
)

_PEZZO_PRINTED = (
    "1+t1",
    "1+t2",
    "1+t2+t1*t2",
    "1+t3",
    "1+t3+t2*t3",
    "1+t4",
    "1+t4+t2*t4+t1*t2*t4",
    "1+t3+t3*t4+t2*t4+t2*t3+t2*t4*t3",
    "1+t3+t3*t4+t2*t4+t2*t3+t1*t2*t4+t2*t3*t4",
    "1+t3+t2*t3+t2*t4+t3*t4+t1*t2*t4+t2*t3*t4+t1*t2*t3*t4",
    "1+t3+t2*t3+t2*t4+t3*t4+t1*t2*t3+t1*t2*t4+t2*t3*t4+t1*t2*t3*t4",
)

# the last four sections with the monomial t4 restored
_PEZZO_SECTIONS = _PEZZO_PRINTED[:7] + tuple(f + "+t4" for f in _PEZZO_PRINTED[7:])

PEZZOTOPE = CatalogEntry(
    name="pezzotope",
    description="E6 pezzotope: Minkowski sum of eleven Newton polytopes in dimension 4",
    dim=4,
    ray_order=_columns(_PEZZO_F),
    charts=(
        ChartFixture(
            sections=_PEZZO_SECTIONS,
            ray_order=_columns(_PEZZO_F),
            saturation_feasible=False,
            binary_relations=(
                "y1 + y2*y5*y7*y13*y15 - 1",
                "y6 + y3*y7*y8*y12*y13 - 1",
                "y11 + y4*y5*y7*y8*y12*y13*y14*y15 - 1",
                "y2 + y1*y4*y8*y12*y14 - 1",
                "y7 + y1*y6*y9*y11*y14 - 1",
                "y12 + y2*y5*y6*y9*y11*y13*y14*y15 - 1",
                "y3 + y4*y5*y6*y14*y15 - 1",
                "y8 + y2*y6*y10*y11*y15 - 1",
                "y13 + y1*y4*y6*y10*y11*y12*y14*y15 - 1",
                "y4 + y2*y3*y9*y11*y13 - 1",
                "y9 + y4*y7*y10*y12*y15 - 1",
                "y14 + y2*y3*y7*y10*y11*y12*y13*y15 - 1",
                "y5 + y1*y3*y10*y11*y12 - 1",
                "y10 + y5*y8*y9*y13*y14 - 1",
                "y15 + y1*y3*y8*y9*y11*y12*y13*y14 - 1",
            ),
        ),
    ),
    expected={
        "F": _PEZZO_F,
        "f_vector": (45, 90, 60, 15),
        "sections_printed": _PEZZO_PRINTED,
        "f_vector_printed_sections": (53, 106, 70, 17),
        "t_substitutions": (
            "y10/(y5*y8*y9*y13*y14)",
            "y9*y11/(y4*y7*y12*y15)",
            "y4*y6*y14*y15/(y3*y13)",
            "y1*y4*y8*y12*y14/y2",
        ),
    },
    origin={
        "F": "literature",
        "f_vector": "literature",
        "binary_relations": "literature",
        "sections_printed": "literature",
        "t_substitutions": "literature",
        "f_vector_printed_sections": "computed",
    },
)

# ---------------------------------------------------------------------------
# permutohedron Perm(3)

_PERM3_M = _rows(
    """
    -1 -1 -1 -1 1 1 1 0 0 1 0 0 0 0
    0 -1 -1 0 0 1 0 -1 1 1 1 -1 0 0
    0 0 -1 -1 1 0 0 -1 1 1 0 0 -1 1
    1 1 1 1 0 0 0 0 0 0 0 0 0 0
    0 1 1 0 0 0 0 1 0 0 0 1 0 0
    0 0 1 1 0 0 0 1 0 0 0 0 1 0
    1 1 1 1 0 -1 0 1 0 -1 0 1 0 0
    0 1 1 1 0 0 0 1 -1 -1 0 1 1 0
    0 1 1 1 0 0 0 1 0 0 0 1 1 0
    1 1 2 2 -1 0 0 1 0 -1 0 0 1 0
    1 2 2 2 0 -1 0 2 0 -1 0 1 1 0
    1 2 2 2 -1 0 0 2 0 -1 0 1 1 0
    1 2 3 2 -1 -1 0 2 -1 -2 0 1 1 0
    1 2 2 2 0 0 0 2 0 -1 0 1 2 0
    """
)

PERM3 = CatalogEntry(
    name="perm3",
    description="permutohedron: convex hull of the permutations of (1,2,3,4)",
    dim=3,
    vertices=tuple(itertools.permutations((1, 2, 3, 4))),
    ray_order=_columns(_PERM3_M[:3]),
    charts=(
        ChartFixture(
            sections=(
                "1+t1",
                "1+t2",
                "1+t3",
                "t1+t2",
                "t2+t3",
                "1+t2+t3",
                "t1+t3+t1*t3",
                "t1+t2+t1*t2+t1*t3+t2*t3",
                "t1+t3+t1*t2+t1*t3+t2*t3",
                "t1*t2+t1*t3+t2*t3+t1*t2*t3",
                "t1+t2+t3+t1*t2+t1*t3+t2*t3+t3^2",
            ),
            ray_order=_columns(_PERM3_M[:3]),
            M=_PERM3_M,
            saturation_feasible=False,
        ),
    ),
    expected={"nef_dim": 11, "nef_ray_count": 37},
    origin={"M": "literature", "nef_dim": "literature", "nef_ray_count": "literature"},
)

# ---------------------------------------------------------------------------
# negative examples

P121 = CatalogEntry(
    name="p121",
    description="triangle (0,0),(0,1),(2,0); weighted projective plane P(1,2,1), singular",
    dim=2,
    vertices=((0, 0), (0, 1), (2, 0)),
    ray_order=((1, 0), (0, 1), (-1, -2)),
    expected={
        "error": "NotSmoothFan",
        "class_group_rank": 1,
        "nef_rays": ((1,),),
        "non_lattice_vertices": (("0", "0"), ("1", "0"), ("0", "1/2")),
    },
    origin={"error": "literature", "non_lattice_vertices": "literature", "nef_rays": "literature"},
)

DIAMOND = CatalogEntry(
    name="diamond",
    description="diamond with vertices (1,0),(0,1),(-1,0),(0,-1); class group with torsion",
    dim=2,
    vertices=((1, 0), (0, 1), (-1, 0), (0, -1)),
    ray_order=((1, 1), (-1, 1), (-1, -1), (1, -1)),
    expected={"error": "Torsion", "elementary_divisors": (1, 2)},
    origin={"error": "literature", "elementary_divisors": "literature"},
)

_ENTRIES = {e.name: e for e in (PENTAGON, SQUARE, *SIMPLICES, HEXAGON, PEZZOTOPE, PERM3, P121, DIAMOND)}


def catalog_names() -> list[str]:
    return list(_ENTRIES)


def catalog_get(name: str) -> CatalogEntry:
    try:
        return _ENTRIES[name]
    except KeyError:
        raise UnknownEntry(name, _ENTRIES) from None
