"""Buchberger's algorithm, saturation and Hilbert-series invariants.

Polynomials are handled internally as dicts ``exponent -> int`` kept
primitive (fraction-free reduction); reduced bases are returned monic with
Fraction coefficients as :class:`CoxPolynomial` objects.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Callable, Iterable, Sequence

from .errors import ResourceLimit
from .polynomials import CoxPolynomial

MAX_PAIRS = 200_000
MAX_TERMS = 100_000


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given by a sort key; larger key means larger monomial.

    ``name`` is ``"degrevlex"``, ``"lex"`` or ``"block"``; for block orders
    ``blocks`` lists the variable indices of each block, first block largest,
    with degrevlex inside each block.
    """

    name: str
    nvars: int
    blocks: tuple[tuple[int, ...], ...] = ()

    @property
    def key(self) -> Callable[[tuple[int, ...]], tuple]:
        if self.name == "lex":
            return lambda e: e
        if self.name == "degrevlex":
            return _degrevlex_key
        if self.name == "block":
            blocks = self.blocks

            def key(e):
                out = ()
                for b in blocks:
                    sub = tuple(e[i] for i in b)
                    out += (sum(sub),) + tuple(-x for x in reversed(sub))
                return out

            return key
        raise ValueError(f"unknown monomial order {self.name!r}")

    def is_degree_compatible(self) -> bool:
        return self.name == "degrevlex"


def _degrevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


def degrevlex(n: int) -> MonomialOrder:
    return MonomialOrder("degrevlex", n)


def lex(n: int) -> MonomialOrder:
    return MonomialOrder("lex", n)


def block(n: int, first: Sequence[int]) -> MonomialOrder:
    """Elimination order: variables in ``first`` dominate the remaining ones."""
    first = tuple(first)
    rest = tuple(i for i in range(n) if i not in first)
    return MonomialOrder("block", n, (first, rest))


# ---------------------------------------------------------------------------
# integer polynomial helpers


def _content(p: dict) -> int:
    return reduce(gcd, p.values(), 0)


def _primitive(p: dict, lm) -> dict:
    g = _content(p)
    if lm is not None and p[lm] < 0:
        g = -g
    if g in (0, 1):
        return p
    return {e: c // g for e, c in p.items()}


def _to_int(poly: dict) -> dict:
    den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(c).denominator for c in poly.values()), 1)
    return {e: int(Fraction(c) * den) for e, c in poly.items() if c != 0}


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


class _Poly:
    __slots__ = ("terms", "lm", "lc", "sugar")

    def __init__(self, terms: dict, key, sugar: int | None = None):
        lm = max(terms, key=key) if terms else None
        terms = _primitive(terms, lm)
        self.terms = terms
        self.lm = lm
        self.lc = terms[lm] if lm is not None else 0
        self.sugar = sugar if sugar is not None else max((sum(e) for e in terms), default=0)


class _Budget:
    def __init__(self, max_pairs: int, max_terms: int):
        self.max_pairs = max_pairs
        self.max_terms = max_terms
        self.pairs = 0

    def pair(self):
        self.pairs += 1
        if self.pairs > self.max_pairs:
            raise ResourceLimit(f"Groebner basis exceeded the budget of {self.max_pairs} S-pairs")

    def terms(self, n: int):
        if n > self.max_terms:
            raise ResourceLimit(f"polynomial support exceeded {self.max_terms} terms")


def _reduce(f: dict, G: Sequence[_Poly], key, budget: _Budget | None = None, full: bool = True) -> dict:
    """Fraction-free remainder of f modulo G (up to a nonzero constant factor)."""
    p = dict(f)
    r: dict = {}
    heap = [(_neg_key(key(e)), e) for e in p]
    heapq.heapify(heap)
    while heap:
        _, lm = heapq.heappop(heap)
        c = p.get(lm)
        if not c:
            continue
        for g in G:
            if _divides(g.lm, lm):
                q = _sub(lm, g.lm)
                h = gcd(c, g.lc)
                a, b = g.lc // h, c // h  # p <- a*p - b*x^q*g
                if a != 1:
                    for e in p:
                        p[e] *= a
                    for e in r:
                        r[e] *= a
                for e, gc in g.terms.items():
                    ee = tuple(x + y for x, y in zip(e, q))
                    v = p.get(ee, 0) - b * gc
                    if v:
                        if ee not in p:
                            heapq.heappush(heap, (_neg_key(key(ee)), ee))
                        p[ee] = v
                    else:
                        p.pop(ee, None)
                if budget is not None:
                    budget.terms(len(p))
                break
        else:
            r[lm] = c
            del p[lm]
            if not full:
                r.update(p)
                return r
    return r


def _neg_key(k):
    return tuple(-x for x in k)


# ---------------------------------------------------------------------------
# Buchberger


def _update(G: list, everything: list[_Poly], pairs: list, h_idx: int, key):
    """Gebauer-Moeller update of the pair list and basis after adding G[h_idx].

    ``G`` holds None for elements dropped as redundant; ``everything`` keeps them.
    """
    h = G[h_idx]
    active = [i for i in range(len(G)) if G[i] is not None and i != h_idx]
    C = [(i, _lcm(G[i].lm, h.lm)) for i in active]
    # criterion M/F: drop pairs whose lcm is a proper multiple of another new lcm
    D = []
    for idx, (i, l) in enumerate(C):
        coprime = all(a == 0 or b == 0 for a, b in zip(G[i].lm, h.lm))
        dominated = False
        for jdx, (j, l2) in enumerate(C):
            if jdx == idx:
                continue
            if _divides(l2, l) and (l2 != l or jdx < idx):
                dominated = True
                break
        if not dominated:
            D.append((i, l, coprime))
    # product criterion
    new = [(i, l) for i, l, coprime in D if not coprime]
    # criterion B on old pairs
    kept = []
    for s, (i, j, l) in pairs:
        if (
            _divides(h.lm, l)
            and _lcm(everything[i].lm, h.lm) != l
            and _lcm(everything[j].lm, h.lm) != l
        ):
            continue
        kept.append((s, (i, j, l)))
    for i, l in new:
        sugar = max(G[i].sugar + sum(l) - sum(G[i].lm), h.sugar + sum(l) - sum(h.lm))
        kept.append(((sugar, key(l)), (i, h_idx, l)))
    heapq.heapify(kept)
    pairs[:] = kept
    # drop basis elements whose leading monomial is now redundant
    for i in active:
        if _divides(h.lm, G[i].lm):
            G[i] = None


def _spoly(f: _Poly, g: _Poly, l) -> dict:
    qf, qg = _sub(l, f.lm), _sub(l, g.lm)
    h = gcd(f.lc, g.lc)
    a, b = g.lc // h, f.lc // h
    out: dict = {}
    for e, c in f.terms.items():
        ee = tuple(x + y for x, y in zip(e, qf))
        out[ee] = out.get(ee, 0) + a * c
    for e, c in g.terms.items():
        ee = tuple(x + y for x, y in zip(e, qg))
        v = out.get(ee, 0) - b * c
        if v:
            out[ee] = v
        else:
            out.pop(ee, None)
    return out


def _interreduce(G: list[_Poly], order: MonomialOrder) -> list[dict]:
    key = order.key
    G = sorted(G, key=lambda g: key(g.lm))
    minimal = []
    for g in G:
        if not any(_divides(h.lm, g.lm) for h in minimal):
            minimal = [h for h in minimal if not _divides(g.lm, h.lm)]
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        r = _reduce(g.terms, others, key)
        lm = max(r, key=key)
        lc = Fraction(r[lm])
        out.append({e: Fraction(c) / lc for e, c in r.items()})
    out.sort(key=lambda p: key(max(p, key=key)), reverse=True)
    return out


# ---------------------------------------------------------------------------
# public API


def _as_dict(f, nvars: int) -> dict:
    if isinstance(f, str):
        f = CoxPolynomial.parse(f, nvars)
    if isinstance(f, CoxPolynomial):
        if f.nvars != nvars:
            raise ValueError("generator lives in a different polynomial ring")
        return dict(f.terms)
    return {tuple(e): Fraction(c) for e, c in dict(f).items() if c != 0}


class PolyIdeal:
    """An ideal of Q[y1..yn] with a fixed monomial order.

    ``gb`` holds the reduced Groebner basis once computed.
    """

    def __init__(self, nvars: int, generators: Iterable, order: MonomialOrder | None = None):
        self.nvars = nvars
        self.order = order or degrevlex(nvars)
        if self.order.nvars != nvars:
            raise ValueError("order and ring disagree on the number of variables")
        self.generators = [g for g in (_as_dict(f, nvars) for f in generators) if g]
        self._gb: list[dict] | None = None

    def groebner_basis(self, max_pairs: int = MAX_PAIRS, max_terms: int = MAX_TERMS) -> list[CoxPolynomial]:
        if self._gb is None:
            self._gb = _compute_gb(self.generators, self.order, _Budget(max_pairs, max_terms))
        return [CoxPolynomial(self.nvars, g) for g in self._gb]

    def _int_basis(self) -> list[_Poly]:
        self.groebner_basis()
        key = self.order.key
        return [_Poly(_to_int(g), key) for g in self._gb]

    def normal_form(self, f) -> CoxPolynomial:
        """Remainder of f on division by the reduced Groebner basis (monic-free,
        exact rational)."""
        self.groebner_basis()
        out = _nf_rational(_as_dict(f, self.nvars), self._gb, self.order.key)
        return CoxPolynomial(self.nvars, out)

    def contains(self, f) -> bool:
        G = self._int_basis()
        return not _reduce(_to_int(_as_dict(f, self.nvars)), G, self.order.key)

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and all(not any(e) for e in gb[0].terms)

    def __repr__(self):
        return f"PolyIdeal({self.nvars} vars, {len(self.generators)} generators, {self.order.name})"


def _compute_gb(gens, order, budget) -> list[dict]:
    ints = [_to_int(g) for g in gens]
    G = _buchberger_tracked(ints, order, budget)
    return _interreduce(G, order)


def _buchberger_tracked(ints, order, budget):
    """Buchberger with sugar selection.  Elements dropped from G by the update
    stay in ``everything`` so that pending pairs can still use them."""
    key = order.key
    G: list = []
    everything: list = []
    pairs: list = []

    def add(p: _Poly):
        G.append(p)
        everything.append(p)
        _update(G, everything, pairs, len(G) - 1, key)

    for f in ints:
        if not f:
            continue
        r = _reduce(f, [g for g in G if g is not None], key, budget)
        if r:
            add(_Poly(r, key))
    while pairs:
        _, (i, j, l) = heapq.heappop(pairs)
        budget.pair()
        f, g = everything[i], everything[j]
        s = _spoly(f, g, l)
        r = _reduce(s, [x for x in G if x is not None], key, budget)
        if not r:
            continue
        sugar = max(f.sugar + sum(l) - sum(f.lm), g.sugar + sum(l) - sum(g.lm))
        add(_Poly(r, key, sugar))
    return [g for g in G if g is not None]


def _nf_rational(f: dict, gb: list[dict], key) -> dict:
    """Exact normal form with rational coefficients against a monic basis."""
    lms = [(max(g, key=key), g) for g in gb]
    p = dict(f)
    r: dict = {}
    heap = [(_neg_key(key(e)), e) for e in p]
    heapq.heapify(heap)
    while heap:
        _, lm = heapq.heappop(heap)
        c = p.get(lm)
        if not c:
            continue
        for glm, g in lms:
            if _divides(glm, lm):
                q = _sub(lm, glm)
                for e, gc in g.items():
                    ee = tuple(x + y for x, y in zip(e, q))
                    v = p.get(ee, 0) - c * gc
                    if v:
                        if ee not in p:
                            heapq.heappush(heap, (_neg_key(key(ee)), ee))
                        p[ee] = v
                    else:
                        p.pop(ee, None)
                break
        else:
            r[lm] = c
            del p[lm]
    return r


def groebner_basis(I: PolyIdeal, **budget) -> list[CoxPolynomial]:
    return I.groebner_basis(**budget)


def normal_form(f, I: PolyIdeal) -> CoxPolynomial:
    return I.normal_form(f)


def saturate(I: PolyIdeal, m: Sequence[int], **budget) -> PolyIdeal:
    """``I : m^infinity`` for the monomial with exponent vector m, computed as
    ``(I + <1 - w m>)`` intersected with the original ring."""
    n = I.nvars
    ext = []
    for g in I.generators:
        ext.append({e + (0,): c for e, c in g.items()})
    ext.append({(0,) * (n + 1): Fraction(1), tuple(m) + (1,): Fraction(-1)})
    J = PolyIdeal(n + 1, [], block(n + 1, [n]))
    J.generators = ext
    gb = J.groebner_basis(**budget)
    kept = [{e[:n]: c for e, c in g.terms.items()} for g in gb if all(e[n] == 0 for e in g.terms)]
    out = PolyIdeal(n, kept, degrevlex(n))
    # the eliminated part is a Groebner basis for the restricted degrevlex order
    out._gb = _interreduce([_Poly(_to_int(g), out.order.key) for g in kept], out.order)
    return out


def ideal_equal(I: PolyIdeal, J: PolyIdeal, **budget) -> bool:
    if I.nvars != J.nvars:
        raise ValueError("ideals live in different rings")
    I.groebner_basis(**budget)
    J.groebner_basis(**budget)
    return all(J.contains(g) for g in I.generators) and all(I.contains(g) for g in J.generators)


# ---------------------------------------------------------------------------
# Hilbert series


def _poly_sub(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


def hilbert_numerator(monomials: Sequence[tuple[int, ...]]) -> list[int]:
    """Numerator Q(z) of the Hilbert series Q(z)/(1-z)^n of S / <monomials>,
    as a coefficient list in increasing degree."""
    memo: dict = {}

    def rec(gens: tuple) -> list[int]:
        if gens in memo:
            return memo[gens]
        if not gens:
            return [1]
        if all(sum(1 for x in g if x) == 1 for g in gens):
            # pure powers of distinct variables: product of (1 - z^a)
            out = [1]
            for g in gens:
                a = sum(g)
                nxt = [0] * (len(out) + a)
                for i, c in enumerate(out):
                    nxt[i] += c
                    nxt[i + a] -= c
                out = nxt
            memo[gens] = out
            return out
        *rest, last = gens
        rest = tuple(rest)
        quot = _minimalize([tuple(max(x - y, 0) for x, y in zip(g, last)) for g in rest])
        a = sum(last)
        shifted = [0] * a + rec(tuple(quot))
        out = _poly_sub(rec(rest), shifted)
        memo[gens] = out
        return out

    gens = _minimalize([tuple(m) for m in monomials])
    if any(not any(g) for g in gens):
        return [0]
    gens.sort(key=lambda g: (sum(g), g), reverse=True)
    return rec(tuple(gens))


def affine_dim_degree(I: PolyIdeal, **budget) -> tuple[int, int]:
    """(dimension, degree) of the affine variety of I from the leading-term ideal
    under degrevlex.  The unit ideal gives (-1, 0)."""
    n = I.nvars
    if I.order.name != "degrevlex":
        I = PolyIdeal(n, I.generators, degrevlex(n))
    gb = I.groebner_basis(**budget)
    key = I.order.key
    lms = [max(g.terms, key=key) for g in gb]
    Q = hilbert_numerator(lms)
    if Q == [0]:
        return -1, 0
    # divide out (1 - z) while Q(1) == 0
    power = 0
    while sum(Q) == 0:
        # synthetic division by (1 - z): Q = (1 - z) R, R_i = sum_{j<=i} Q_j
        R = []
        acc = 0
        for c in Q[:-1]:
            acc += c
            R.append(acc)
        Q = R
        power += 1
    return n - power, sum(Q)
