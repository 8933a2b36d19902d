"""Command-line interface: ``poschart <command> [options]``.

All output is JSON on standard output.  Errors are printed as JSON on
standard error with exit code 2 (bad input), 3 (violated assumption) or
4 (resource limit).  Rationals are written as strings ``"p/q"``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import catalog as cat
from .chart import (
    PositiveChart,
    block_identities,
    build_from_polytope,
    build_from_sections,
    verify_section_identities,
)
from .errors import InputError, PosChartError
from .exactla import gale_dual, snf_invariants
from .fan import nef_cone, normal_fan
from .groebner import PolyIdeal, affine_dim_degree, ideal_equal, saturate
from .numeric import (
    MomentSpec,
    ScatteringConfig,
    ScatteringProblem,
    moment_eval,
    moment_eval_torus,
    moment_plane_check,
    scattering_solve,
)
from .polynomials import LaurentPolynomial
from .polytope import Polytope, minkowski_weighted, polytope_from_json

COMMANDS = ("fan", "nef", "chart", "ideal", "saturate", "degree", "moment", "scattering", "verify", "catalog")


def _rationals(text: str | None, name: str) -> list[Fraction]:
    if text is None:
        raise InputError(f"--{name} is required for this command")
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"--{name}: cannot parse {text!r} as comma-separated rationals") from exc


def _load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _full_dimensional(P: Polytope) -> Polytope:
    """The polytope in coordinates of its own affine lattice."""
    return P if P.is_full_dimensional else Polytope.from_vertices(P.local_vertices)


class _Source:
    """Resolves --catalog / --input / --sections into polytopes and charts."""

    def __init__(self, args):
        self.args = args
        self.entry = cat.catalog_get(args.catalog) if args.catalog else None
        if args.input and args.catalog:
            raise InputError("use either --catalog or --input, not both")
        if not (args.catalog or args.input or args.sections):
            raise InputError("one of --catalog, --input or --sections is required")

    def _fixture(self):
        e = self.entry
        if e is None or not e.charts:
            return None
        idx = self.args.chart - 1
        if not 0 <= idx < len(e.charts):
            raise InputError(f"entry {e.name!r} has {len(e.charts)} chart(s); got --chart {self.args.chart}")
        return e.charts[idx]

    def sections(self):
        """(polynomials, ray order) from --sections or the catalog, else None."""
        if self.args.sections:
            data = _load_json(self.args.sections)
            if isinstance(data, list):
                data = {"sections": data}
            if not isinstance(data, dict) or "sections" not in data:
                raise InputError("--sections file must be a list of strings or {\"sections\": [...]}")
            strs = data["sections"]
            d = data.get("dim")
            polys = [LaurentPolynomial.parse(s, d) for s in strs]
            d = max(p.nvars for p in polys)
            polys = [LaurentPolynomial.parse(s, d) for s in strs]
            order = data.get("ray_order")
            return polys, None if order is None else [tuple(u) for u in order]
        fx = self._fixture()
        if fx is None:
            return None
        e = self.entry
        return [LaurentPolynomial.parse(s, e.dim) for s in fx.sections], fx.ray_order

    def polytope(self) -> Polytope:
        if self.args.input:
            return polytope_from_json(_load_json(self.args.input))
        e = self.entry
        if e is not None and e.vertices is not None:
            return Polytope.from_vertices(e.vertices)
        secs = self.sections()
        if secs is None:
            raise InputError("no polytope available for this input")
        return minkowski_weighted([(f.newton_polytope(), 1) for f in secs[0]])

    def ray_order(self):
        if self.args.input or self.entry is None:
            return None
        return self.entry.ray_order

    def chart(self) -> PositiveChart:
        secs = self.sections()
        if secs is not None:
            return build_from_sections(secs[0], ray_order=secs[1])
        P = self.polytope()
        order = self.ray_order() if P.is_full_dimensional else None
        return build_from_polytope(_full_dimensional(P), ray_order=order)


def _fraction_list(v) -> list[str]:
    return [str(Fraction(x)) for x in v]


def _ideal(chart: PositiveChart) -> PolyIdeal:
    return PolyIdeal(chart.n, list(chart.ideal_gens))


def _budget(args) -> dict:
    return {} if args.budget is None else {"max_pairs": args.budget}


def _fan(src: _Source):
    P = src.polytope()
    # catalog ray orders refer to the given coordinates, so they only apply to
    # full-dimensional input
    order = src.ray_order() if P.is_full_dimensional else None
    return normal_fan(_full_dimensional(P), order)


def cmd_fan(src: _Source, args) -> dict:
    fan = _fan(src)
    return {
        "F": fan.rays.tolist(),
        "maximal_cones": [[i + 1 for i in s] for s in fan.maximal_cones],
        "simplicial": fan.is_simplicial(),
        "smooth": fan.is_smooth(),
    }


def cmd_nef(src: _Source, args) -> dict:
    fan = _fan(src)
    K = gale_dual(fan.rays)
    _, S = snf_invariants(K.T)
    N = nef_cone(fan, K, S)
    return {"dim": N.dim, "ray_count": len(N.rays), "rays": [list(r) for r in N.rays], "Kt": K.T.tolist()}


def cmd_chart(src: _Source, args) -> dict:
    return src.chart().to_json()


def cmd_ideal(src: _Source, args) -> dict:
    return {"generators": src.chart().ideal_strings()}


def cmd_saturate(src: _Source, args) -> dict:
    chart = src.chart()
    I = _ideal(chart)
    J = saturate(I, (1,) * chart.n, **_budget(args))
    return {
        "saturation": [str(g) for g in J.groebner_basis()],
        "equal_to_input": ideal_equal(I, J, **_budget(args)),
    }


def cmd_degree(src: _Source, args) -> dict:
    dim, deg = affine_dim_degree(_ideal(src.chart()), **_budget(args))
    return {"dim": dim, "degree": deg}


def cmd_moment(src: _Source, args) -> dict:
    chart = src.chart()
    spec = MomentSpec(chart, tuple(_rationals(args.s, "s")))
    t = _rationals(args.t, "t")
    if len(t) != chart.d:
        raise InputError(f"expected {chart.d} coordinates t, got {len(t)}")
    x = moment_eval(spec, t)
    return {"x": _fraction_list(x), "plane_check": moment_plane_check(spec, t)}


def cmd_scattering(src: _Source, args) -> dict:
    chart = src.chart()
    x = _rationals(args.x, "x")
    expected = None
    if src.entry is not None and args.chart == 1:
        expected = src.entry.expected.get("scattering_count")
    problem = ScatteringProblem(chart, tuple(x), expected)
    cfg = ScatteringConfig(starts=args.starts, tol=args.tol, seed=args.seed, jobs=args.jobs)
    return scattering_solve(problem, cfg).to_json()


def cmd_verify(src: _Source, args) -> dict:
    chart = src.chart()
    report = verify_section_identities(chart, raise_on_failure=False)
    rng = random.Random(args.seed)
    spec = MomentSpec(chart, tuple(Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(chart.k)))
    samples = 0
    moment_ok = True
    while samples < 10:
        t = [Fraction(rng.randint(1, 20), rng.randint(1, 20)) for _ in range(chart.d)]
        moment_ok &= moment_plane_check(spec, t) and moment_eval(spec, t) == moment_eval_torus(spec, t)
        samples += 1
    out = report.to_json()
    out["block_identities"] = block_identities(chart)
    out["moment_plane"] = moment_ok
    out["ok"] = report.ok and out["block_identities"] and moment_ok
    return out


def cmd_catalog(src: _Source | None, args) -> dict:
    if args.catalog is None:
        return {"entries": [{"name": n, "description": cat.catalog_get(n).description} for n in cat.catalog_names()]}
    return cat.catalog_get(args.catalog).to_json()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="poschart", description="Positive charts of smooth projective toric varieties.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--catalog", metavar="NAME", help="use a built-in example")
    p.add_argument("--input", metavar="FILE", help="polytope JSON ({\"vertices\": ...} or {\"facets\": ...})")
    p.add_argument("--sections", metavar="FILE", help="JSON list of Laurent polynomial strings")
    p.add_argument("--chart", type=int, default=1, metavar="N", help="which catalog chart to use (default 1)")
    p.add_argument("--s", metavar="LIST", help="moment map weights, comma-separated rationals")
    p.add_argument("--t", metavar="LIST", help="torus point, comma-separated rationals")
    p.add_argument("--x", metavar="LIST", help="scattering exponents, comma-separated rationals")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--starts", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--budget", type=int, default=None, metavar="N", help="maximum number of S-pairs")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", metavar="FILE", help="write JSON here instead of standard output")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "catalog":
            result = cmd_catalog(None, args)
        else:
            src = _Source(args)
            result = globals()[f"cmd_{args.command}"](src, args)
    except PosChartError as exc:
        print(json.dumps(exc.to_dict()), file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(json.dumps({"error": "InputError", "message": str(exc)}), file=sys.stderr)
        return 2
    text = json.dumps(result, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.command == "verify" and not result["ok"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
