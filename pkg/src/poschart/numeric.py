"""Moment maps of positive charts and the scattering equations.

The moment map is evaluated exactly over the rationals, either through the
Cox coordinates y = phi(t) or through the torus form
``M^t (sum_i s_i mu_i(t), s)``.  Scattering equations are solved in the d
torus coordinates by multistart Newton on ``sum_i s_i mu_i(t) = B^t x``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chart import PositiveChart
from .errors import DegenerateExponents, InputError, NoConvergence, PoleAt
from .polynomials import CoxPolynomial


def _frac_vec(v) -> tuple[Fraction, ...]:
    out = []
    for x in v:
        if isinstance(x, float):
            raise InputError("use exact rationals (strings 'p/q' or Fractions), not floats")
        out.append(Fraction(x))
    return tuple(out)


@dataclass(frozen=True)
class MomentSpec:
    chart: PositiveChart
    s: tuple[Fraction, ...]

    def __post_init__(self):
        s = _frac_vec(self.s)
        if len(s) != self.chart.k:
            raise InputError(f"expected {self.chart.k} weights s, got {len(s)}")
        if any(x <= 0 for x in s):
            raise InputError("moment map weights s must be strictly positive")
        object.__setattr__(self, "s", s)


def _exponents(chart: PositiveChart):
    """Per section: list of (coefficient, m, eta = F^t m + a_i)."""
    Ft = chart.F.T
    out = []
    for sec in chart.sections:
        rows = []
        for m, c in sec.poly.terms.items():
            eta = tuple(x + y for x, y in zip(Ft @ m, sec.support_vector))
            rows.append((c, m, eta))
        out.append(rows)
    return out


def _check_poles(chart: PositiveChart, t) -> list:
    if any(x == 0 for x in t):
        raise PoleAt(f"t = {tuple(t)} is not in the torus")
    vals = [f.evaluate(t) for f in chart.polys]
    for j, v in enumerate(vals):
        if v == 0:
            raise PoleAt(f"f_{j + 1} vanishes at t = {tuple(t)}")
    return vals


def moment_eval(spec: MomentSpec, t) -> tuple[Fraction, ...]:
    """mu_{Y,s}(phi(t)) computed from the Cox coordinates y = phi(t)."""
    chart = spec.chart
    t = _frac_vec(t)
    _check_poles(chart, t)
    y = chart.evaluate_phi(t)
    x = [Fraction(0)] * chart.n
    for s_i, rows in zip(spec.s, _exponents(chart)):
        for c, _, eta in rows:
            v = s_i * c
            for yj, e in zip(y, eta):
                if e:
                    v *= yj**e
            for j, e in enumerate(eta):
                if e:
                    x[j] += v * e
    return tuple(x)


def moment_eval_torus(spec: MomentSpec, t) -> tuple[Fraction, ...]:
    """The same map via ``M^t (sum_i s_i mu_i(t), s)`` with
    ``mu_i(t) = sum_m c_m t^m m / f_i(t)``."""
    chart = spec.chart
    t = _frac_vec(t)
    fvals = _check_poles(chart, t)
    nu = [Fraction(0)] * chart.d
    for s_i, f, fv in zip(spec.s, chart.polys, fvals):
        for m, c in f.terms.items():
            w = s_i * c / fv
            for x, e in zip(t, m):
                if e:
                    w *= x**e
            for r in range(chart.d):
                nu[r] += w * m[r]
    return chart.M.T @ (tuple(nu) + spec.s)


def moment_symbolic(chart: PositiveChart) -> list[list[CoxPolynomial]]:
    """Coefficient polynomials P[i][j] with mu_{Y,s}(y)_j = sum_i s_i P[i][j](y)."""
    out = []
    for rows in _exponents(chart):
        comps = [dict() for _ in range(chart.n)]
        for c, _, eta in rows:
            for j, e in enumerate(eta):
                if e:
                    comps[j][eta] = comps[j].get(eta, 0) + c * e
        out.append([CoxPolynomial(chart.n, comp) for comp in comps])
    return out


def moment_plane_check(spec: MomentSpec, t) -> bool:
    """K^t mu = s exactly; for positive t also mu > 0 componentwise."""
    x = moment_eval(spec, t)
    if tuple(spec.chart.K.T @ x) != spec.s:
        return False
    if all(Fraction(v) > 0 for v in t):
        return all(v > 0 for v in x)
    return True


# ---------------------------------------------------------------------------
# scattering


@dataclass(frozen=True)
class ScatteringConfig:
    starts: int = 200
    max_iter: int = 100
    tol: float = 1e-10
    cluster_tol: float = 1e-8
    torus_tol: float = 1e-8
    seed: int = 0
    min_found: int = 1
    jobs: int = 1
    max_rounds: int = 20
    max_step: float = 1.0


@dataclass(frozen=True)
class ScatteringProblem:
    chart: PositiveChart
    x: tuple[Fraction, ...]
    expected_count: int | None = None

    def __post_init__(self):
        x = _frac_vec(self.x)
        if len(x) != self.chart.n:
            raise InputError(f"expected {self.chart.n} exponents x, got {len(x)}")
        object.__setattr__(self, "x", x)
        if any(v == 0 for v in self.s):
            raise DegenerateExponents(f"induced multipliers s = K^t x = {self.s} have a zero entry")

    @property
    def s(self) -> tuple[Fraction, ...]:
        return tuple(self.chart.K.T @ self.x)

    @property
    def rhs(self) -> tuple[Fraction, ...]:
        return tuple(self.chart.B.T @ self.x)


@dataclass
class Solution:
    t: np.ndarray
    y: np.ndarray
    residual: float

    def to_json(self) -> dict:
        return {
            "t": [[float(z.real), float(z.imag)] for z in self.t],
            "y": [[float(z.real), float(z.imag)] for z in self.y],
            "residual": self.residual,
        }


@dataclass
class ScatteringResult:
    solutions: list[Solution]
    batch_counts: tuple[int, int]
    expected_count: int | None = None

    @property
    def count(self) -> int:
        return len(self.solutions)

    def to_json(self) -> dict:
        out = {
            "count": self.count,
            "batch_counts": list(self.batch_counts),
            "solutions": [s.to_json() for s in self.solutions],
        }
        if self.expected_count is not None:
            out["expected_count"] = self.expected_count
        return out


class _System:
    """Vectorized evaluation of G(tau) = sum_i s_i mu_i(e^tau) - B^t x.

    Newton runs on the deflated system ``H = c(t) G / prod_r l_r(t)`` where
    each known root r is divided out by a linear form ``l_r(t) = a . (t - r)``
    and ``c = prod_{i in cleared} f_i`` clears some of the denominators.  The
    returned Jacobian is that of H with respect to tau, divided by the same
    scalar factor: ``dG + G w^t`` with
    ``w = sum_{i in cleared} mu_i - sum_r (a * t) / l_r``.
    """

    def __init__(self, problem: ScatteringProblem):
        chart = problem.chart
        self.d = chart.d
        self.s = np.array([float(v) for v in problem.s])
        self.rhs = np.array([float(v) for v in problem.rhs])
        self.E = [np.array(list(f.terms.keys()), dtype=float) for f in chart.polys]
        self.c = [np.array([float(v) for v in f.terms.values()]) for f in chart.polys]
        self.scale = max(1.0, float(np.max(np.abs(self.rhs))), float(np.max(np.abs(self.s))))

    def __call__(self, tau: np.ndarray, roots=(), a=None, cleared=frozenset()):
        S = tau.shape[0]
        G = np.zeros((S, self.d), dtype=complex)
        J = np.zeros((S, self.d, self.d), dtype=complex)
        w = np.zeros((S, self.d), dtype=complex)
        for i, (s_i, E, c) in enumerate(zip(self.s, self.E, self.c)):
            terms = np.exp(tau @ E.T) * c
            f = terms.sum(axis=1)
            f = np.where(f == 0, np.nan, f)
            mu = (terms @ E) / f[:, None]
            second = np.einsum("sn,nj,nk->sjk", terms, E, E) / f[:, None, None]
            G += s_i * mu
            J += s_i * (second - mu[:, :, None] * mu[:, None, :])
            if i in cleared:
                w += mu
        G -= self.rhs
        if roots:
            t = np.exp(tau)
            for r in roots:
                ell = (t - r) @ a
                w -= (a * t) / ell[:, None]
        J += G[:, :, None] * w[:, None, :]
        return G, J

    def residual(self, tau: np.ndarray) -> np.ndarray:
        G, _ = self(tau)
        return np.max(np.abs(G), axis=1) / self.scale


def _safe_solve(J: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    out = np.full(rhs.shape, np.nan, dtype=complex)
    ok = np.all(np.isfinite(J), axis=(1, 2)) & np.all(np.isfinite(rhs), axis=1)
    try:
        out[ok] = np.linalg.solve(J[ok], rhs[ok][..., None])[..., 0]
        return out
    except np.linalg.LinAlgError:
        pass
    for i in np.flatnonzero(ok):
        try:
            out[i] = np.linalg.solve(J[i], rhs[i])
        except np.linalg.LinAlgError:
            pass
    return out


def _newton(system: _System, tau: np.ndarray, cfg: ScatteringConfig, roots=(), a=None, cleared=frozenset()) -> np.ndarray:
    """Newton on every start; returns the final points that converged."""
    tau = tau.copy()
    with np.errstate(all="ignore"):
        for _ in range(cfg.max_iter):
            G, J = system(tau, roots, a, cleared)
            res = np.max(np.abs(G), axis=1) / system.scale
            active = ~(res < cfg.tol) & np.all(np.isfinite(tau), axis=1)
            if not active.any():
                break
            step = _safe_solve(J[active], -G[active])
            # cap the step length in tau so that starts near a pole are not thrown far away
            size = np.max(np.abs(step), axis=1)
            tau[active] += step * np.minimum(1.0, cfg.max_step / size)[:, None]
            tau[np.abs(tau.real) > 50] = np.nan
        # polish on the undeflated system
        for _ in range(3):
            G, J = system(tau)
            tau += np.where(np.isfinite(G), _safe_solve(J, -G), 0)
        res = system.residual(tau)
    return tau[res < cfg.tol]


def _starts(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    """Starting points t = exp(z) with z complex Gaussian, stored as tau = z."""
    return rng.standard_normal((n, d)) + 1j * np.pi * rng.standard_normal((n, d))


def _close(p: np.ndarray, q: np.ndarray, tol: float) -> bool:
    return float(np.max(np.abs(p - q))) <= tol * max(1.0, float(np.max(np.abs(q))))


def _cluster(points, tol: float) -> list[np.ndarray]:
    pts = sorted(points, key=lambda p: tuple(np.round(np.concatenate([p.real, p.imag]), 6)))
    reps: list[np.ndarray] = []
    for p in pts:
        if not any(_close(p, q, tol) for q in reps):
            reps.append(p)
    return reps


def _full_residual(problem: ScatteringProblem, t: np.ndarray) -> tuple[np.ndarray, float, float]:
    """y = phi(t), the max-norm residual of x = mu_{Y,s}(y) and of f_i^h(y) = 1,
    and the smallest |y_j| (distance to the coordinate hyperplanes)."""
    chart = problem.chart
    y = np.array(chart.evaluate_phi([complex(v) for v in t]), dtype=complex)
    s = [float(v) for v in problem.s]
    mu = np.zeros(chart.n, dtype=complex)
    eqs = []
    for s_i, rows in zip(s, _exponents(chart)):
        total = 0
        for c, _, eta in rows:
            mono = float(c) * np.prod(y ** np.array(eta))
            total += mono
            mu += s_i * mono * np.array(eta, dtype=float)
        eqs.append(total - 1)
    x = np.array([float(v) for v in problem.x])
    scale = max(1.0, float(np.max(np.abs(x))))
    res = max(float(np.max(np.abs(mu - x))) / scale, float(np.max(np.abs(eqs))))
    return y, res, float(np.min(np.abs(y)))


def _clearings(k: int) -> list[frozenset]:
    """Denominator sets to clear: all, none, and each section alone."""
    out = [frozenset(range(k)), frozenset()]
    if k > 1:
        out += [frozenset((i,)) for i in range(k)]
    return out


def _run_chunk(args):
    # clearing two sections creates spurious roots where both vanish, and an
    # uncleared pole repels Newton from roots close to it; the variants reach
    # different basins
    problem, taus, cfg, roots, a = args
    system = _System(problem)
    k = problem.chart.k
    return np.concatenate([_newton(system, taus, cfg, roots, a, c) for c in _clearings(k)])


def _accept(problem: ScatteringProblem, t: np.ndarray, cfg: ScatteringConfig) -> bool:
    if not np.all(np.isfinite(t)) or np.min(np.abs(t)) <= cfg.torus_tol:
        return False
    with np.errstate(all="ignore"):
        _, res, ymin = _full_residual(problem, t)
    return res < cfg.tol and ymin > cfg.torus_tol


def _solve_batch(problem: ScatteringProblem, cfg: ScatteringConfig, seq, pool) -> list[np.ndarray]:
    """Deflated multistart Newton: rerun the starts with every known root divided
    out until a round finds nothing new."""
    rng = np.random.default_rng(seq)
    d = problem.chart.d
    taus = _starts(rng, cfg.starts, d)
    a = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    roots: list[np.ndarray] = []
    for _ in range(cfg.max_rounds):
        if pool is not None:
            chunks = np.array_split(taus, cfg.jobs)
            found = list(pool.map(_run_chunk, [(problem, c, cfg, tuple(roots), a) for c in chunks]))
            tau = np.concatenate(found)
        else:
            tau = _run_chunk((problem, taus, cfg, tuple(roots), a))
        new = []
        for t in _cluster(list(np.exp(tau)), cfg.cluster_tol):
            if _accept(problem, t, cfg) and not any(_close(t, r, cfg.cluster_tol) for r in roots):
                new.append(t)
        if not new:
            break
        roots.extend(new)
    return _cluster(roots, cfg.cluster_tol)


def scattering_solve(problem: ScatteringProblem, config: ScatteringConfig | None = None) -> ScatteringResult:
    """Solutions of the scattering equations that are found in both of two
    independent batches of Newton starts."""
    cfg = config or ScatteringConfig()
    seqs = np.random.SeedSequence(cfg.seed).spawn(2)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            a, b = (_solve_batch(problem, cfg, q, pool) for q in seqs)
    else:
        a, b = (_solve_batch(problem, cfg, q, None) for q in seqs)
    stable = [p for p in a if any(_close(p, q, cfg.cluster_tol) for q in b)]
    if len(stable) < cfg.min_found:
        raise NoConvergence(
            f"only {len(stable)} solution clusters were found in both seed batches "
            f"(batch counts {len(a)}, {len(b)})"
        )
    sols = []
    system = _System(problem)
    for p in stable:
        y, res, _ = _full_residual(problem, p)
        reduced = float(system.residual(np.log(p)[None, :])[0])
        sols.append(Solution(p, y, max(res, reduced)))
    return ScatteringResult(sols, (len(a), len(b)), problem.expected_count)
