"""Shared helpers for the test suite."""

import functools

import sympy

from poschart.catalog import catalog_get
from poschart.chart import build_from_sections
from poschart.polynomials import LaurentPolynomial


@functools.lru_cache(maxsize=None)
def catalog_chart(name: str, index: int = 0):
    """The chart of a catalog fixture, built once per session."""
    entry = catalog_get(name)
    fx = entry.charts[index]
    fs = [LaurentPolynomial.parse(s, entry.dim) for s in fx.sections]
    return build_from_sections(fs, ray_order=fx.ray_order)


CHARTS = [
    ("pentagon", 0),
    ("square", 0),
    ("simplex1", 0),
    ("simplex2", 0),
    ("simplex3", 0),
    ("simplex4", 0),
    ("simplex5", 0),
    ("hexagon", 0),
    ("hexagon", 1),
    ("pezzotope", 0),
    ("perm3", 0),
]


def to_sympy(poly) -> sympy.Expr:
    """A Laurent or Cox polynomial as a sympy expression in t1.. or y1.."""
    return sympy.sympify(str(poly).replace("^", "**"))


def t_symbols(d: int):
    return sympy.symbols(f"t1:{d + 1}")


def phi_sympy(chart) -> list:
    """The components of phi as sympy rational functions of t1..td."""
    ts = t_symbols(chart.d)
    fs = [to_sympy(f) for f in chart.polys]
    out = []
    for comp in chart.phi:
        e = sympy.Integer(1)
        for t, b in zip(ts, comp.t_exponent):
            e *= t**b
        for f, p in zip(fs, comp.f_powers):
            e *= f ** (-p)
        out.append(e)
    return out
