"""Positive charts: sections, the matrix M, homogenization and the parametrization.

Given Laurent polynomials f_1..f_k with nonnegative coefficients whose Newton
polytopes sum to a polytope P with d + k facets, the chart consists of

* F, the ray matrix of the normal fan of P,
* M = [F; a_1; ...; a_k] with a_i the support vector of Newt(f_i),
* the ideal generators f_i^h - 1 in the Cox ring,
* phi_i = t^{B_i} * prod_j f_j^{-K_ij} where M^{-1} = [B | K].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    AssumptionFacetCount,
    AssumptionPositivity,
    AssumptionUnimodular,
    IdentityFailed,
    NegativeExponent,
    NotNef,
    NotSmoothFan,
)
from .exactla import (
    IntegerMatrix,
    det,
    gale_dual,
    snf_invariants,
    unimodular_inverse,
)
from .fan import Fan, deformation_cone, nef_cone, normal_fan, smooth_subcone
from .polynomials import CoxPolynomial, LaurentPolynomial
from .polytope import Polytope, lattice_points, minkowski_weighted, support_vector


@dataclass(frozen=True)
class Section:
    poly: LaurentPolynomial
    support_vector: tuple[int, ...]
    cls: tuple[int, ...]


@dataclass(frozen=True)
class PhiComponent:
    """phi_i = t^{t_exponent} * prod_j f_j^{-f_powers[j]}."""

    t_exponent: tuple[int, ...]
    f_powers: tuple[int, ...]


@dataclass(frozen=True)
class PositiveChart:
    fan: Fan
    sections: tuple[Section, ...]
    M: IntegerMatrix
    M_inv: IntegerMatrix
    ideal_gens: tuple[CoxPolynomial, ...]
    phi: tuple[PhiComponent, ...]

    @property
    def F(self) -> IntegerMatrix:
        return self.fan.rays

    @property
    def d(self) -> int:
        return self.F.nrows

    @property
    def n(self) -> int:
        return self.F.ncols

    @property
    def k(self) -> int:
        return self.n - self.d

    @property
    def A(self) -> IntegerMatrix:
        return self.M.select_rows(range(self.d, self.n))

    @property
    def B(self) -> IntegerMatrix:
        return self.M_inv.select_columns(range(self.d))

    @property
    def K(self) -> IntegerMatrix:
        return self.M_inv.select_columns(range(self.d, self.n))

    @property
    def polys(self) -> list[LaurentPolynomial]:
        return [s.poly for s in self.sections]

    def homogenized(self) -> list[CoxPolynomial]:
        return [g + 1 for g in self.ideal_gens]

    def ideal_strings(self) -> list[str]:
        return [str(g) for g in self.ideal_gens]

    def evaluate_phi(self, t):
        """phi at a point t (exact for Fractions, floats otherwise)."""
        fvals = [f.evaluate(t) for f in self.polys]
        out = []
        for comp in self.phi:
            v = 1
            for x, e in zip(t, comp.t_exponent):
                if e:
                    v = v * x**e if e > 0 else v / x ** (-e)
            for fv, p in zip(fvals, comp.f_powers):
                if p > 0:
                    v = v / fv**p
                elif p < 0:
                    v = v * fv ** (-p)
            out.append(v)
        return out

    def to_json(self) -> dict:
        return {
            "F": self.F.tolist(),
            "M": self.M.tolist(),
            "M_inv": self.M_inv.tolist(),
            "sections": [
                {"class": list(s.cls), "support_vector": list(s.support_vector), "poly": str(s.poly)}
                for s in self.sections
            ],
            "ideal": self.ideal_strings(),
            "phi": [{"t_exponent": list(c.t_exponent), "f_powers": list(c.f_powers)} for c in self.phi],
        }


# ---------------------------------------------------------------------------
# sections and homogenization


def homogenize(f: LaurentPolynomial, z: Sequence[int], F: IntegerMatrix, K: IntegerMatrix | None = None):
    """``c t^m -> c y^{F^t m + z}``; the Cox degree is ``K^t z`` when K is given."""
    Ft = F.T
    terms = {}
    for m, c in f.terms.items():
        e = tuple(a + b for a, b in zip(Ft @ m, z))
        if any(x < 0 for x in e):
            raise NegativeExponent(f"monomial t^{m} leaves the polytope P_z for z = {tuple(z)}")
        terms[e] = c
    degree = None if K is None else K.T @ tuple(z)
    return CoxPolynomial(F.ncols, terms, degree)


def section_from_class(c: Sequence[int], fan: Fan, K: IntegerMatrix, S: IntegerMatrix):
    """All-ones section of the nef class c, with its polytope and support vector.

    The lift ``S c`` is translated so that the lex-smallest vertex of its
    polytope sits at the origin.
    """
    F = fan.rays
    z = S @ tuple(c)
    for g in deformation_cone(fan).inequalities:
        if sum(a * b for a, b in zip(g, z)) < 0:
            raise NotNef(f"class {tuple(c)} violates a deformation inequality")
    if not any(z) and not any(c):
        P = Polytope.from_vertices([(0,) * F.nrows])
    else:
        P = Polytope.from_inequalities(F, z)
    origin = P.vertices[0]
    P = P.translate(tuple(-x for x in origin))
    a = support_vector(P, F)
    f = LaurentPolynomial(F.nrows, {p: 1 for p in lattice_points(P)})
    return P, a, f


# ---------------------------------------------------------------------------
# assembly


def _check_positivity(fs: Sequence[LaurentPolynomial]):
    for i, f in enumerate(fs):
        if f.is_zero():
            raise AssumptionPositivity(f"section {i + 1} is zero")
        if any(c < 0 for c in f.terms.values()):
            raise AssumptionPositivity(f"section {i + 1} ({f}) has a negative coefficient")
        if any(c <= 0 for c in f.vertex_coefficients().values()):
            raise AssumptionPositivity(f"section {i + 1} has a nonpositive vertex coefficient")


def build_from_sections(
    fs: Sequence[LaurentPolynomial],
    ray_order: Sequence[Sequence[int]] | None = None,
    fan: Fan | None = None,
) -> PositiveChart:
    """Assemble the positive chart defined by the Laurent polynomials ``fs``.

    Without ``fan``, F is the ray matrix of the normal fan of the Minkowski sum
    of the Newton polytopes (columns in ``ray_order`` or lex order).  With an
    explicit ``fan`` the construction is tested against that fan instead,
    which is how non-Cartier section classes get diagnosed.
    """
    fs = list(fs)
    if not fs:
        raise AssumptionFacetCount("at least one section is required")
    d = fs[0].nvars
    k = len(fs)
    _check_positivity(fs)
    newts = [f.newton_polytope() for f in fs]
    if fan is None:
        P = minkowski_weighted([(Q, 1) for Q in newts])
        if not P.is_full_dimensional:
            raise AssumptionFacetCount(f"the Minkowski sum has dimension {P.lattice_dim} < {d}")
        if P.n_facets != d + k:
            raise AssumptionFacetCount(f"the Minkowski sum has {P.n_facets} facets, expected d + k = {d + k}")
        fan = normal_fan(P, ray_order)
    elif fan.n_rays != d + k:
        raise AssumptionFacetCount(f"fan has {fan.n_rays} rays, expected d + k = {d + k}")
    F = fan.rays
    A = [support_vector(Q, F) for Q in newts]
    M = F.vstack(IntegerMatrix(A, F.ncols))
    D = det(M)
    if abs(D) != 1:
        raise AssumptionUnimodular(D)
    if not fan.is_smooth():
        bad = next(s for s in fan.maximal_cones if len(s) != d or abs(det(fan.cone_matrix(s))) != 1)
        raise NotSmoothFan(bad, abs(det(fan.cone_matrix(bad))) if len(bad) == d else None)
    M_inv = unimodular_inverse(M)
    K = M_inv.select_columns(range(d, d + k))
    B = M_inv.select_columns(range(d))
    sections = []
    gens = []
    for f, a in zip(fs, A):
        h = homogenize(f, a, F, K)
        sections.append(Section(f, tuple(a), tuple(K.T @ a)))
        gens.append((h - 1).with_degree(h.degree))
    phi = tuple(PhiComponent(B.row(i), K.row(i)) for i in range(d + k))
    return PositiveChart(fan, tuple(sections), M, M_inv, tuple(gens), phi)


def build_from_polytope(P: Polytope, ray_order: Sequence[Sequence[int]] | None = None) -> PositiveChart:
    """Positive chart of the toric variety of a smooth lattice polytope."""
    if not P.is_full_dimensional:
        raise AssumptionFacetCount("the polytope must be full-dimensional")
    fan = normal_fan(P, ray_order)
    F = fan.rays
    K = gale_dual(F)  # torsion in the class group is reported before non-smoothness
    fan.check_smooth()
    _, S = snf_invariants(K.T)
    N = nef_cone(fan, K, S)
    ref = K.T @ support_vector(P, F)
    C = smooth_subcone(N, ref)
    fs = [section_from_class(c, fan, K, S)[2] for c in C.rays]
    return build_from_sections(fs, ray_order=[tuple(u) for u in F.columns])


# ---------------------------------------------------------------------------
# symbolic verification


def _rational_identity(terms, fs: Sequence[LaurentPolynomial], target: LaurentPolynomial) -> bool:
    """Decide ``sum_g coef * t^m * prod f^p == target`` for (coef, m, p) terms.

    Clears denominators by multiplying through with the smallest product of
    the f_j that makes every power nonnegative, then expands.
    """
    k = len(fs)
    d = target.nvars
    lift = [0] * k
    tshift = [0] * d
    for _, m, p in terms:
        for j in range(k):
            lift[j] = max(lift[j], -p[j])
        for i in range(d):
            tshift[i] = max(tshift[i], -m[i])
    cache: dict = {}

    def fpow(j, e):
        key = (j, e)
        if key not in cache:
            cache[key] = fs[j] ** e
        return cache[key]

    groups: dict = {}
    for c, m, p in terms:
        key = tuple(x + y for x, y in zip(p, lift))
        mono = tuple(a + b for a, b in zip(m, tshift))
        groups.setdefault(key, {})
        groups[key][mono] = groups[key].get(mono, 0) + c
    lhs = LaurentPolynomial(d, {})
    for key, mons in groups.items():
        part = LaurentPolynomial(d, mons)
        for j, e in enumerate(key):
            if e:
                part = part * fpow(j, e)
        lhs = lhs + part
    rhs = target.shift(tshift)
    for j, e in enumerate(lift):
        if e:
            rhs = rhs * fpow(j, e)
    return lhs == rhs


def _compose_monomial(chart: PositiveChart, e: Sequence[int]):
    """y^e evaluated on phi, as (t exponent, f-power vector)."""
    m = [0] * chart.d
    p = [0] * chart.k
    for ej, comp in zip(e, chart.phi):
        if ej:
            for i, b in enumerate(comp.t_exponent):
                m[i] += ej * b
            for j, kap in enumerate(comp.f_powers):
                p[j] -= ej * kap
    return tuple(m), tuple(p)


@dataclass(frozen=True)
class VerificationReport:
    section_identities: tuple[bool, ...]
    monomial_section: tuple[bool, ...]
    irrelevant_divisibility: bool

    @property
    def ok(self) -> bool:
        return all(self.section_identities) and all(self.monomial_section) and self.irrelevant_divisibility

    def to_json(self) -> dict:
        return {
            "section_identities": list(self.section_identities),
            "monomial_section": list(self.monomial_section),
            "irrelevant_divisibility": self.irrelevant_divisibility,
            "ok": self.ok,
        }


def verify_section_identities(chart: PositiveChart, raise_on_failure: bool = True) -> VerificationReport:
    """Symbolic checks of f_i^h(phi) = 1, phi_{F^t}(phi(t)) = t, and that every
    monomial of prod f_i^h lies in the irrelevant ideal."""
    fs = chart.polys
    one = LaurentPolynomial.constant(chart.d)
    sec = []
    for h in chart.homogenized():
        terms = [(c,) + _compose_monomial(chart, e) for e, c in h.terms.items()]
        sec.append(_rational_identity(terms, fs, one))
    mono = []
    for r in range(chart.d):
        m, p = _compose_monomial(chart, chart.F.row(r))
        target = LaurentPolynomial.variable(chart.d, r)
        mono.append(_rational_identity([(Fraction(1), m, p)], fs, target))
    prod = CoxPolynomial.constant(chart.n)
    for h in chart.homogenized():
        prod = prod * h
    gens = chart.fan.irrelevant_generators()
    divisible = all(
        any(all(a >= b for a, b in zip(e, g)) for g in gens) for e in prod.terms
    )
    report = VerificationReport(tuple(sec), tuple(mono), divisible)
    if raise_on_failure and not report.ok:
        raise IdentityFailed(f"chart verification failed: {report.to_json()}")
    return report


def vanishes_on_phi(chart: PositiveChart, g: CoxPolynomial) -> bool:
    """Whether g(phi(t)) is identically zero as a rational function of t."""
    terms = [(c,) + _compose_monomial(chart, e) for e, c in g.terms.items()]
    return _rational_identity(terms, chart.polys, LaurentPolynomial.constant(chart.d, 0))


def block_identities(chart: PositiveChart) -> bool:
    """FB = I, FK = 0, AB = 0, AK = I and BF + KA = I, exactly."""
    F, A, B, K = chart.F, chart.A, chart.B, chart.K
    d, k, n = chart.d, chart.k, chart.n
    return (
        F @ B == IntegerMatrix.identity(d)
        and F @ K == IntegerMatrix.zeros(d, k)
        and A @ B == IntegerMatrix.zeros(k, d)
        and A @ K == IntegerMatrix.identity(k)
        and (B @ F) + (K @ A) == IntegerMatrix.identity(n)
    )


def newton_polytope_of_parametrization(chart: PositiveChart, check: bool = True) -> Polytope:
    """Sum of Newt(numerator) + Newt(denominator) over the reduced components of phi.

    Common factors between the sections are cancelled using an irreducible
    factorization of each f_j.
    """
    factors = [_irreducible_factors(f) for f in chart.polys]
    parts = []
    for comp in chart.phi:
        mult: dict = {}
        for j, kap in enumerate(comp.f_powers):
            if kap == 0:
                continue
            for g, e in factors[j]:
                mult[g] = mult.get(g, 0) - kap * e
        num = tuple(max(b, 0) for b in comp.t_exponent)
        den = tuple(max(-b, 0) for b in comp.t_exponent)
        parts.append((Polytope.from_vertices([num]), 1))
        parts.append((Polytope.from_vertices([den]), 1))
        for g, e in mult.items():
            if e:
                parts.append((g.newton_polytope(), abs(e)))
    Q = minkowski_weighted(parts)
    if check:
        if not Q.is_full_dimensional:
            raise IdentityFailed("Newt(phi) is not full-dimensional")
        if not normal_fan(Q).same_as(chart.fan):
            raise IdentityFailed("the normal fan of Newt(phi) differs from the chart fan")
    return Q


def _irreducible_factors(f: LaurentPolynomial) -> list[tuple[LaurentPolynomial, int]]:
    """Non-monomial irreducible factors of f with multiplicities (monomials dropped)."""
    import sympy

    d = f.nvars
    ts = sympy.symbols(f"t1:{d + 1}")
    low = [min(e[i] for e in f.terms) for i in range(d)]
    g = f.shift(tuple(-x for x in low))
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[t**k for t, k in zip(ts, e)])
        for e, c in g.terms.items()
    )
    _, facs = sympy.factor_list(expr, *ts)
    out = []
    for fac, mult in facs:
        poly = sympy.Poly(fac, *ts)
        terms = {tuple(m): Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for m, c in poly.terms()}
        if len(terms) == 1:
            continue
        L = LaurentPolynomial(d, terms)
        # fix the sign so factors compare equal across sections
        lead = L.terms[max(L.terms)]
        if lead < 0:
            L = -L
        out.append((L, mult))
    return out
