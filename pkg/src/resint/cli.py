"""Command-line front end.

Exit codes: 0 success, 1 failed check or unmet ``--expect``, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .cyclotomic import (
    cos_degree,
    cyclotomic_poly,
    indices_with_cos_degree_at_most,
    min_poly_cos,
    totient,
)
from .dynmap.parse import MapSyntaxError
from .dynmap.ratfunc import PoleError
from .dynmap.rmap import ContinuumError, RationalMap
from .obstruction import Kind, ParamConstraint, PipelineOptions, analyze
from .resonance import HypothesisError, integral_bound
from .verifier import functional_independence, orbit_invariance_numeric, verify_first_integral

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_map(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return text, RationalMap.parse(text)
    except (MapSyntaxError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _point(text):
    try:
        return tuple(Fraction(p.strip()) for p in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad point {text!r}: expected comma-separated rationals") from exc


def _assignments(items):
    out = {}
    for it in items or ():
        name, _, val = it.partition("=")
        try:
            out[name.strip()] = Fraction(val.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad parameter value {it!r}") from exc
    return out


def _envelope(command, request, result, started):
    return {
        "schema": SCHEMA,
        "tool": {"name": "resint", "version": __version__},
        "command": command,
        "request": request,
        "result": result,
        "timing": {"elapsed_s": round(time.perf_counter() - started, 6)},
    }


def _emit(args, doc, text_lines):
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


# analyze ------------------------------------------------------------------------------------------------


def cmd_analyze(args):
    started = time.perf_counter()
    source, f = _read_map(args.file)
    constraint = None
    if args.param_constraint:
        try:
            constraint = ParamConstraint.parse(args.param_constraint)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        if constraint.param not in f.params:
            raise InputError(f"constraint refers to {constraint.param!r}, which is not a declared parameter")
    opts = PipelineOptions(degree_budget=args.budget, elimination_order=args.order, full_route=not args.no_full_route)
    verdict = analyze(f, constraint, opts)
    request = {"file": args.file, "source": source.strip(), "map": f.render(),
               "constraint": str(constraint) if constraint else None, "budget": args.budget, "order": args.order}
    result = verdict.to_dict(with_certificate=args.certificate)
    doc = _envelope("analyze", request, result, started)
    lines = [f"map: {f.render()}"]
    if constraint:
        lines.append(f"constraint: {constraint}")
    for fp in verdict.fixed_points:
        lines.append(f"fixed point {fp.point}")
        if fp.T:
            lines.append(f"  T = {fp.T}, D = {fp.D}")
        if fp.v:
            lines.append(f"  v = T^2/(2D) - 1 = {fp.v}")
        for k, v in fp.checks.items():
            lines.append(f"  {k}: {v}")
    lines.append(f"verdict: {verdict.kind.value} ({verdict.reason})")
    if verdict.params:
        lines.append("candidate parameter values: " + ", ".join(str(p) for p in verdict.params))
    if verdict.indices:
        lines.append("candidate indices p: " + ", ".join(str(p) for p in verdict.indices))
    for k, v in verdict.annotations.items():
        lines.append(f"note {k}: {v}")
    for label, d in verdict.details.items():
        if isinstance(d, dict) and isinstance(d.get("candidates"), dict) and label.startswith("("):
            for val, why in d["candidates"].items():
                lines.append(f"  at {label}, {val}: " + "; ".join(why))
    for fpd in verdict.details.get("per_fixed_point", []):
        for name, vals in fpd.get("details", {}).get("battery", {}).items():
            lines.append(f"resultants of {name} against V_p:")
            lines.extend(f"  p={p}: {val}" for p, val in vals.items())
    if "resultants" in verdict.details:
        lines.append("Res(P, Phi_p):")
        lines.extend(f"  p={p}: {r}" for p, r in verdict.details["resultants"].items())
    if args.certificate:
        lines.append("certificate:")
        lines.extend(f"  {e.name} [{e.op}] = {e.value}" for e in verdict.certificate.entries)
    _emit(args, doc, lines)
    if args.expect and verdict.kind.value != args.expect:
        return EXIT_FAIL
    return EXIT_OK


# verify ---------------------------------------------------------------------------------------------------


def cmd_verify(args):
    started = time.perf_counter()
    source, f = _read_map(args.file)
    if not args.integral:
        raise InputError("give at least one --integral")
    for text in args.integral:
        try:
            from .dynmap.parse import parse_expr

            parse_expr(text, f.universe, f.universe)
        except MapSyntaxError as exc:
            raise InputError(f"integral {text!r}: {exc}") from exc
    results = []
    lines = [f"map: {f.render()}"]
    for text in args.integral:
        r = verify_first_integral(f, text)
        results.append({"integral": text, "holds": r.holds, "residual": None if r.holds else str(r.residual)})
        lines.append(f"{text}: {'first integral' if r.holds else 'NOT a first integral'}")
        if not r.holds:
            lines.append(f"  residual: {r.residual}")
    ind = functional_independence(f, args.integral, seed=args.seed)
    lines.append(f"independence: {ind.label} (seed {ind.seed})")
    result = {"integrals": results, "independence": ind.to_dict()}
    if args.orbit:
        start = _point(args.orbit)
        if len(start) != f.n:
            raise InputError(f"orbit start needs {f.n} coordinates")
        params = _assignments(args.param)
        missing = [p for p in f.params if p not in params]
        if missing:
            raise InputError(f"orbit check needs values for {missing} (use --param name=value)")
        orbits = []
        for text in args.integral:
            rep = orbit_invariance_numeric(f, text, start, args.steps, params, exact=args.exact)
            orbits.append({"integral": text, **rep.to_dict()})
            esc = f", hit a pole at step {rep.escaped_at}" if rep.escaped_at is not None else ""
            lines.append(f"orbit of {text}: max deviation {rep.max_deviation:.3g} over {rep.steps} steps{esc}")
        result["orbits"] = orbits
    request = {"file": args.file, "source": source.strip(), "integrals": args.integral, "seed": args.seed}
    _emit(args, _envelope("verify", request, result, started), lines)
    return EXIT_OK if all(r["holds"] for r in results) else EXIT_FAIL


# resonance ---------------------------------------------------------------------------------------------------


def cmd_resonance(args):
    started = time.perf_counter()
    source, f = _read_map(args.file)
    params = _assignments(args.param)
    if params:
        f = f.specialize(params)
    if f.params:
        raise InputError(f"fix the parameters {list(f.params)} with --param name=value")
    if args.fixed_point:
        pt = _point(args.fixed_point)
        if len(pt) != f.n:
            raise InputError(f"fixed point needs {f.n} coordinates")
        if tuple(Fraction(c) for c in f.evaluate(pt)) != pt:
            raise InputError(f"{args.fixed_point} is not a fixed point")
        points = [pt]
    elif f.n == 2:
        points = f.real_fixed_points(args.budget)
    else:
        points = f.rational_fixed_points()
    out, lines = [], [f"map: {f.render()}"]
    for fp in points:
        label = fp.describe() if hasattr(fp, "describe") else "(" + ", ".join(str(c) for c in fp) + ")"
        try:
            rep = integral_bound(f, fp, args.bound)
        except HypothesisError as exc:
            out.append({"point": label, "error": str(exc)})
            lines.append(f"{label}: {exc}")
            continue
        d = rep.to_dict()
        d["point"] = label
        out.append(d)
        lines.append(f"{label}: at most {rep.bound} independent first integrals "
                     f"[{rep.method}, {rep.lattice.status.value}]")
        for row in rep.lattice.basis:
            lines.append(f"  resonance {list(row)}")
    request = {"file": args.file, "source": source.strip(), "bound": args.bound}
    _emit(args, _envelope("resonance", request, {"fixed_points": out}, started), lines)
    return EXIT_OK


# cyclo ------------------------------------------------------------------------------------------------------


def cmd_cyclo(args):
    started = time.perf_counter()
    if args.p is not None:
        if args.p < 1:
            raise InputError("--p must be a positive integer")
        p = args.p
        res = {"p": p, "totient": totient(p), "Phi": str(cyclotomic_poly(p)),
               "cos_degree": cos_degree(p), "M": str(min_poly_cos(p).poly)}
        lines = [f"Phi_{p}(x) = {res['Phi']}", f"phi({p}) = {res['totient']}",
                 f"minimal polynomial of cos(2 pi/{p}): {res['M']}"]
    else:
        if args.cos_degree < 1:
            raise InputError("--cos-degree must be >= 1")
        k = args.cos_degree
        idx = indices_with_cos_degree_at_most(k).indices
        rows = [{"p": p, "cos_degree": cos_degree(p), "M": str(min_poly_cos(p).poly)} for p in idx]
        res = {"k": k, "indices": list(idx), "table": rows}
        lines = [f"p with deg M_p <= {k}: {list(idx)}"] + [f"  p={r['p']} (deg {r['cos_degree']}): {r['M']}" for r in rows]
    _emit(args, _envelope("cyclo", {"p": args.p, "cos_degree": args.cos_degree}, res, started), lines)
    return EXIT_OK


# reproduce ----------------------------------------------------------------------------------------------------


def cmd_reproduce(args):
    from .reproduce import run_suite

    started = time.perf_counter()
    results = run_suite(only=args.only, corrupt=args.corrupt)
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.name}")
        if not r.passed:
            i = r.first_difference
            got = r.value[i] if i is not None and i < len(r.value) else None
            exp = r.golden[i] if i is not None and i < len(r.golden) else None
            lines.append(f"  first difference at entry {i}: got {got!r}, expected {exp!r}")
        if r.note:
            lines.append(f"  note: {r.note}")
    npass = sum(r.passed for r in results)
    lines.append(f"{npass}/{len(results)} golden checks passed")
    result = {"checks": [r.to_dict() for r in results], "passed": npass, "total": len(results)}
    _emit(args, _envelope("reproduce-paper", {"only": args.only, "corrupt": args.corrupt}, result, started), lines)
    return EXIT_OK if npass == len(results) else EXIT_FAIL


def build_parser():
    ap = argparse.ArgumentParser(prog="resint", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"resint {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    a = sub.add_parser("analyze", help="cyclotomic obstruction to first integrals")
    a.add_argument("file")
    a.add_argument("--param-constraint", help="e.g. 'a > 9/8'")
    a.add_argument("--bound", type=int, default=20, help="exponent bound for resonance searches")
    a.add_argument("--budget", type=int, default=6, help="degree budget for factor recombination")
    a.add_argument("--order", choices=("xy", "yx"), default="xy", help="elimination order for U")
    a.add_argument("--no-full-route", action="store_true", help="skip the unreduced U_k cross-check")
    a.add_argument("--certificate", action="store_true", help="include the full polynomial trail")
    a.add_argument("--expect", choices=[k.value for k in Kind], help="exit 1 unless the verdict has this kind")
    common(a)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="check candidate first integrals")
    v.add_argument("file")
    v.add_argument("--integral", action="append", help="rational expression; repeatable")
    v.add_argument("--orbit", help="start point for an orbit check, e.g. '2,3'")
    v.add_argument("--steps", type=int, default=50)
    v.add_argument("--param", action="append", help="name=value for the orbit check")
    v.add_argument("--exact", action="store_true", help="iterate the orbit in rational arithmetic")
    v.add_argument("--seed", type=int, default=0)
    common(v)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("resonance", help="bound on the number of independent integrals")
    r.add_argument("file")
    r.add_argument("--fixed-point", help="rational coordinates, e.g. '1,1'")
    r.add_argument("--param", action="append", help="name=value")
    r.add_argument("--bound", type=int, default=20)
    r.add_argument("--budget", type=int, default=6)
    common(r)
    r.set_defaults(func=cmd_resonance)

    c = sub.add_parser("cyclo", help="cyclotomic and cosine minimal polynomials")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--p", type=int)
    g.add_argument("--cos-degree", type=int)
    common(c)
    c.set_defaults(func=cmd_cyclo)

    rp = sub.add_parser("reproduce-paper", help="recompute every worked example against golden values")
    rp.add_argument("--only", action="append", help="run only the named check; repeatable")
    rp.add_argument("--corrupt", help="self-test: alter the golden value of the named check")
    common(rp)
    rp.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ContinuumError, PoleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
