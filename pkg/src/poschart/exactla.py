"""Exact integer and rational linear algebra.

Matrices are small immutable value objects over Python ints or
``fractions.Fraction``.  Nothing in this module touches floating point.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .errors import NotUnimodular, RankDeficient, Torsion

__all__ = [
    "IntegerMatrix",
    "RationalMatrix",
    "hnf",
    "column_hnf",
    "snf_invariants",
    "smith_diagonal",
    "gale_dual",
    "unimodular_inverse",
    "det",
    "rank",
    "rational_inverse",
    "rational_solve",
    "nullspace",
    "primitive",
    "vec_gcd",
]


class _Matrix:
    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(self._coerce(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("cannot infer column count of an empty matrix")
            ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "_rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("matrices are immutable")

    def __reduce__(self):
        return (type(self), (self._rows, self.ncols))

    @staticmethod
    def _coerce(x):
        raise NotImplementedError

    # construction helpers
    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None):
        cols = [tuple(c) for c in cols]
        if not cols:
            return cls([() for _ in range(nrows or 0)], 0)
        return cls(zip(*cols), len(cols))

    @classmethod
    def identity(cls, n: int):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int):
        return cls([[0] * n for _ in range(m)], n)

    # accessors
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self._rows[i][j]
        return self._rows[key]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    @property
    def columns(self) -> tuple[tuple, ...]:
        return tuple(self.col(j) for j in range(self.ncols))

    def tolist(self) -> list[list]:
        return [list(r) for r in self._rows]

    @property
    def T(self):
        return type(self).from_columns(self._rows, self.ncols)

    def select_columns(self, idx: Iterable[int]):
        idx = list(idx)
        return type(self)([[r[j] for j in idx] for r in self._rows], len(idx))

    def select_rows(self, idx: Iterable[int]):
        idx = list(idx)
        return type(self)([self._rows[i] for i in idx], self.ncols)

    def hstack(self, other):
        cls = _result_type(self, other)
        return cls([a + b for a, b in zip(self._rows, other._rows)], self.ncols + other.ncols)

    def vstack(self, other):
        cls = _result_type(self, other)
        return cls(self._rows + other._rows, self.ncols)

    # arithmetic
    def __matmul__(self, other):
        if isinstance(other, _Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns
            cls = _result_type(self, other)
            return cls(
                [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows],
                other.ncols,
            )
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self._rows)

    def __add__(self, other):
        cls = _result_type(self, other)
        return cls([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols)

    def __sub__(self, other):
        cls = _result_type(self, other)
        return cls([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols)

    def __neg__(self):
        return type(self)([[-a for a in r] for r in self._rows], self.ncols)

    def __eq__(self, other):
        if isinstance(other, _Matrix):
            return self.shape == other.shape and self._rows == other._rows
        return NotImplemented

    def __hash__(self):
        return hash((self.shape, self._rows))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self._rows for a in r)

    def __repr__(self):
        return f"{type(self).__name__}({[list(map(_fmt, r)) for r in self._rows]})"


def _fmt(x):
    return x if isinstance(x, int) else str(x)


class IntegerMatrix(_Matrix):
    """Immutable matrix of arbitrary-precision integers."""

    __slots__ = ()

    @staticmethod
    def _coerce(x):
        if isinstance(x, numbers.Integral):
            return int(x)
        if isinstance(x, Fraction) and x.denominator == 1:
            return int(x.numerator)
        raise TypeError(f"non-integer entry {x!r}")

    def det(self) -> int:
        return det(self)


class RationalMatrix(_Matrix):
    """Immutable matrix of rationals kept in lowest terms."""

    __slots__ = ()

    @staticmethod
    def _coerce(x):
        if isinstance(x, float):
            raise TypeError("floating point entries are not allowed")
        return Fraction(x)

    def to_integer(self) -> IntegerMatrix:
        return IntegerMatrix(self._rows, self.ncols)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for r in self._rows for a in r)


def _result_type(a, b):
    if isinstance(a, RationalMatrix) or isinstance(b, RationalMatrix):
        return RationalMatrix
    return IntegerMatrix


def _as_int_rows(A) -> list[list[int]]:
    if isinstance(A, _Matrix):
        return [list(r) for r in A.rows]
    return [[int(x) for x in r] for r in A]


def vec_gcd(v: Iterable[int]) -> int:
    return reduce(gcd, (int(x) for x in v), 0)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = vec_gcd(ints)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms


def hnf(A) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ A == H``.  Pivots of
    ``H`` are positive, entries above a pivot lie in ``[0, pivot)`` and zero
    rows come last.
    """
    H = _as_int_rows(A)
    m = len(H)
    n = A.ncols if isinstance(A, _Matrix) else (len(H[0]) if H else 0)
    U = [[int(i == j) for j in range(m)] for i in range(m)]

    def addrow(dst, src, q):
        # row_dst -= q * row_src
        if q:
            hd, hs = H[dst], H[src]
            for c in range(n):
                hd[c] -= q * hs[c]
            ud, us = U[dst], U[src]
            for c in range(m):
                ud[c] -= q * us[c]

    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(H[i][c]), i))
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                U[r], U[piv] = U[piv], U[r]
            clean = True
            for i in range(r + 1, m):
                if H[i][c]:
                    addrow(i, r, H[i][c] // H[r][c])
                    if H[i][c]:
                        clean = False
            if clean:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][c]
        for i in range(r):
            addrow(i, r, H[i][c] // p)
        r += 1
    return IntegerMatrix(H, n), IntegerMatrix(U, m)


def column_hnf(A) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Column-style HNF: returns ``(L, V)`` with ``A @ V == L``, ``V`` unimodular."""
    A = A if isinstance(A, IntegerMatrix) else IntegerMatrix(A)
    H, U = hnf(A.T)
    return H.T, U.T


def smith_diagonal(A) -> list[int]:
    """Nonzero elementary divisors d_1 | d_2 | ... of an integer matrix."""
    D = _as_int_rows(A)
    m = len(D)
    n = len(D[0]) if D else 0
    out = []
    t = 0
    while t < min(m, n):
        nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        D[t], D[pi] = D[pi], D[t]
        for row in D:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = D[t][t]
            changed = False
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    D[i] = [a - q * b for a, b in zip(D[i], D[t])]
                if D[i][t]:
                    changed = True
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    for row in D:
                        row[j] -= q * row[t]
                if D[t][j]:
                    changed = True
            if not changed:
                # divisibility: every remaining entry must be a multiple of p
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                i, _ = bad
                D[t] = [a + b for a, b in zip(D[t], D[i])]
                changed = True
            # move the smallest nonzero entry of row/col t to the pivot
            cand = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
            cand += [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
            _, pi, pj = min(cand)
            if pi != t:
                D[t], D[pi] = D[pi], D[t]
            if pj != t:
                for row in D:
                    row[t], row[pj] = row[pj], row[t]
        out.append(abs(D[t][t]))
        t += 1
    return out


def snf_invariants(A) -> tuple[tuple[int, ...], IntegerMatrix | None]:
    """Elementary divisors of a full-row-rank matrix and, when the cokernel
    is free, an integer right inverse ``S`` with ``A @ S == I``."""
    A = A if isinstance(A, IntegerMatrix) else IntegerMatrix(A)
    divisors = tuple(smith_diagonal(A))
    if len(divisors) < A.nrows:
        raise RankDeficient(f"matrix of shape {A.shape} has rank {len(divisors)} < {A.nrows}")
    if any(d != 1 for d in divisors):
        return divisors, None
    d = A.nrows
    L, V = column_hnf(A)
    Lsq = L.select_columns(range(d))
    # cokernel free => square part of the column HNF is the identity
    assert Lsq == IntegerMatrix.identity(d), Lsq
    return divisors, V.select_columns(range(d))


def gale_dual(F) -> IntegerMatrix:
    """Integer matrix ``K`` (n x (n-d)) whose columns form a basis of ker_Z F.

    The basis is canonical: ``K.T`` is in row Hermite normal form.
    """
    F = F if isinstance(F, IntegerMatrix) else IntegerMatrix(F)
    divisors, _ = snf_invariants(F)
    if any(x != 1 for x in divisors):
        raise Torsion(divisors)
    d, n = F.shape
    _, V = column_hnf(F)
    K = V.select_columns(range(d, n))
    if n == d:
        return IntegerMatrix.zeros(n, 0)
    H, _ = hnf(K.T)
    return H.T


# ---------------------------------------------------------------------------
# determinants, inverses, solving


def det(A) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    M = _as_int_rows(A) if not _has_fractions(A) else None
    if M is None:
        return _det_rational(A)
    n = len(M)
    if n == 0:
        return 1
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pk - M[i][k] * M[k][j]) // prev
        prev = pk
    return sign * M[n - 1][n - 1]


def _has_fractions(A) -> bool:
    rows = A.rows if isinstance(A, _Matrix) else A
    return any(isinstance(x, Fraction) and x.denominator != 1 for r in rows for x in r)


def _det_rational(A) -> Fraction:
    M = [[Fraction(x) for x in r] for r in (A.rows if isinstance(A, _Matrix) else A)]
    n = len(M)
    result = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            M[k], M[p] = M[p], M[k]
            result = -result
        result *= M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    return result


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    M = [list(r) for r in rows]
    m = len(M)
    n = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return M, pivots


def rank(A) -> int:
    rows = A.rows if isinstance(A, _Matrix) else A
    rows = [[Fraction(x) for x in r] for r in rows]
    if not rows or not rows[0]:
        return 0
    return len(_rref(rows)[1])


def rational_inverse(A) -> RationalMatrix:
    rows = A.rows if isinstance(A, _Matrix) else A
    n = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    R, piv = _rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return RationalMatrix([r[n:] for r in R], n)


def rational_solve(A, b) -> tuple[Fraction, ...]:
    """Unique solution x of A x = b for square nonsingular A."""
    rows = A.rows if isinstance(A, _Matrix) else A
    n = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(bi)] for r, bi in zip(rows, b)]
    R, piv = _rref(aug)
    if piv != list(range(n)):
        raise ValueError("singular system")
    return tuple(r[n] for r in R)


def nullspace(A, ncols: int | None = None) -> list[tuple[int, ...]]:
    """Basis of the rational null space of A as primitive integer vectors."""
    rows = A.rows if isinstance(A, _Matrix) else [list(r) for r in A]
    if ncols is None:
        ncols = A.ncols if isinstance(A, _Matrix) else len(rows[0])
    rows = [[Fraction(x) for x in r] for r in rows]
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    R, piv = _rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        basis.append(primitive(v))
    return basis


def unimodular_inverse(M) -> IntegerMatrix:
    """Integer inverse of a square matrix with determinant +-1."""
    M = M if isinstance(M, IntegerMatrix) else IntegerMatrix(M)
    if M.nrows != M.ncols:
        raise ValueError("unimodular_inverse needs a square matrix")
    dm = det(M)
    if abs(dm) != 1:
        raise NotUnimodular(dm)
    return rational_inverse(M).to_integer()
