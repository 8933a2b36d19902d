"""Sparse Laurent and Cox-ring polynomials with exact rational coefficients.

Both types are immutable maps ``exponent tuple -> Fraction`` with no zero
coefficients.  They differ in variable names, printing order, and the Cox
polynomial's exponent nonnegativity and optional grading.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InputError, NegativeExponent


def _clean(terms: Mapping) -> dict:
    return {tuple(e): Fraction(c) for e, c in terms.items() if c != 0}


class _SparsePoly:
    var = "x"
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping | Iterable = ()):
        if not isinstance(terms, Mapping):
            acc: dict = {}
            for e, c in terms:
                e = tuple(e)
                acc[e] = acc.get(e, 0) + Fraction(c)
            terms = acc
        terms = _clean(terms)
        for e in terms:
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have {nvars} entries")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("polynomials are immutable")

    def __reduce__(self):
        return (type(self), (self.nvars, dict(self.terms)))

    def _new(self, terms):
        return type(self)(self.nvars, terms)

    # construction helpers
    @classmethod
    def constant(cls, nvars: int, c=1):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exponent: Sequence[int], c=1):
        return cls(len(exponent), {tuple(exponent): c})

    @classmethod
    def variable(cls, nvars: int, i: int):
        return cls.monomial(tuple(int(j == i) for j in range(nvars)))

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of polynomials are not polynomials")
        result = self.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, _SparsePoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return self.constant(self.nvars, Fraction(other))

    def __eq__(self, other):
        if isinstance(other, _SparsePoly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.nvars, frozenset(self.terms.items()))))
        return self._hash

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def exponents(self) -> list[tuple[int, ...]]:
        return sorted(self.terms)

    def coefficients(self) -> list[Fraction]:
        return [self.terms[e] for e in self.exponents()]

    def __len__(self):
        return len(self.terms)

    def evaluate(self, point):
        """Evaluate at a point; exact for Fractions, any ring for other inputs."""
        total = 0
        for e, c in self.terms.items():
            v = c if isinstance(point[0], (int, Fraction)) else float(c)
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total = total + v
        return total

    def substitute_monomials(self, images: Sequence) -> "_SparsePoly":
        """Substitute x_i -> images[i] (polynomials of a common type)."""
        out = None
        for e, c in self.terms.items():
            term = images[0].constant(images[0].nvars, c)
            for img, k in zip(images, e):
                if k:
                    term = term * img**k
            out = term if out is None else out + term
        if out is None:
            return images[0].constant(images[0].nvars, 0)
        return out

    # printing
    def _order(self) -> list[tuple[int, ...]]:
        raise NotImplementedError

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in self._order():
            c = self.terms[e]
            mono = "*".join(
                f"{self.var}{i + 1}" + (f"^{k}" if k != 1 else "") for i, k in enumerate(e) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


class LaurentPolynomial(_SparsePoly):
    """Laurent polynomial in t1..td; printed by ascending degree, then
    descending lex within a degree (``1 + t1 + t2 + t1*t2``)."""

    var = "t"
    __slots__ = ()

    def _order(self):
        return sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e)))

    def newton_polytope(self):
        from .polytope import Polytope

        if not self.terms:
            raise ValueError("the zero polynomial has no Newton polytope")
        return Polytope.from_vertices(self.terms)

    def vertex_coefficients(self) -> dict:
        P = self.newton_polytope()
        return {tuple(int(x) for x in v): self.terms[tuple(int(x) for x in v)] for v in P.vertices}

    def shift(self, m: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the monomial t^m."""
        return self._new({tuple(a + b for a, b in zip(e, m)): c for e, c in self.terms.items()})

    @classmethod
    def parse(cls, s: str, nvars: int | None = None) -> "LaurentPolynomial":
        return parse_polynomial(s, "t", nvars, cls)


class CoxPolynomial(_SparsePoly):
    """Polynomial in y1..yn with nonnegative exponents and an optional Cox degree.

    Printed with terms sorted by reversed exponent vector, descending, so the
    constant comes last (``y3*y4 + y1 - 1``).
    """

    var = "y"
    __slots__ = ("degree",)

    def __init__(self, nvars: int, terms=(), degree: Sequence[int] | None = None):
        super().__init__(nvars, terms)
        for e in self.terms:
            if any(k < 0 for k in e):
                raise NegativeExponent(f"exponent {e} has a negative entry")
        object.__setattr__(self, "degree", None if degree is None else tuple(degree))

    def __reduce__(self):
        return (CoxPolynomial, (self.nvars, dict(self.terms), self.degree))

    def _new(self, terms):
        return CoxPolynomial(self.nvars, terms)

    def with_degree(self, degree):
        return CoxPolynomial(self.nvars, self.terms, degree)

    def _order(self):
        return sorted(self.terms, key=lambda e: e[::-1], reverse=True)

    def is_homogeneous(self, Kt) -> bool:
        """All exponents share one class under the grading matrix ``Kt`` (k x n)."""
        rows = Kt.rows if hasattr(Kt, "rows") else Kt
        classes = {tuple(sum(a * b for a, b in zip(r, e)) for r in rows) for e in self.terms}
        return len(classes) <= 1

    @classmethod
    def parse(cls, s: str, nvars: int | None = None) -> "CoxPolynomial":
        return parse_polynomial(s, "y", nvars, cls)


# ---------------------------------------------------------------------------
# parsing

_SIGN = re.compile(r"(?<![\^(])([+-])")
_FACTOR = re.compile(r"^([a-zA-Z])(\d+)(?:\^\(?(-?\d+)\)?)?$")
_COEF = re.compile(r"^\d+(?:/\d+)?$")


def _split_terms(s: str) -> list[tuple[int, str]]:
    s = s.replace(" ", "").replace("**", "^")
    if not s:
        raise InputError("empty polynomial string")
    out = []
    sign = 1
    for tok in _SIGN.split(s):
        if tok == "-":
            sign = -sign
        elif tok and tok != "+":
            out.append((sign, tok))
            sign = 1
    if not out:
        raise InputError(f"no terms in {s!r}")
    return out


def parse_polynomial(s: str, var: str, nvars: int | None, cls):
    """Parse strings like ``"y3*y4 + y1 - 1"`` or ``"2*t1^-1 + 1/2*t2"``."""
    raw = []
    maxvar = 0
    for sign, body in _split_terms(s):
        coef = Fraction(sign)
        exps: dict[int, int] = {}
        for factor in body.split("*"):
            if not factor:
                raise InputError(f"malformed term {body!r}")
            if _COEF.match(factor):
                coef *= Fraction(factor)
                continue
            m = _FACTOR.match(factor)
            if not m or m.group(1) != var:
                raise InputError(f"cannot parse factor {factor!r} (expected {var}1, {var}2, ...)")
            idx = int(m.group(2))
            if idx < 1:
                raise InputError(f"variable indices start at 1, got {factor!r}")
            k = int(m.group(3)) if m.group(3) is not None else 1
            exps[idx] = exps.get(idx, 0) + k
            maxvar = max(maxvar, idx)
        raw.append((coef, exps))
    if nvars is None:
        nvars = maxvar
    elif maxvar > nvars:
        raise InputError(f"variable {var}{maxvar} exceeds the declared {nvars} variables")
    terms: dict = {}
    for coef, exps in raw:
        e = tuple(exps.get(i + 1, 0) for i in range(nvars))
        terms[e] = terms.get(e, 0) + coef
    return cls(nvars, terms)
