"""grmcurves command line: GRM weight hierarchies, trace-form curves, maximal families.

Every command prints ReportRecords as JSON Lines (sorted keys) or CSV.  Exit
status is 0 when every check passes, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

import numpy as np
from sympy import Poly, Symbol, factorint
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from grmcurves.claims import CLAIMS, Options, run_claim
from grmcurves.curves import (
    ArtinSchreierCurve,
    FibreProduct,
    curve_report,
    fibre_report,
    subcode_points,
    subcode_weight_from_points,
)
from grmcurves.errors import ConsistencyError
from grmcurves.families import FAMILIES, FamilyParams, build_family, valid_params
from grmcurves.fields import build_tower
from grmcurves.grm import (
    ReducedMultiPoly,
    SubcodeBasis,
    code_dimension,
    evaluate,
    generator_words,
    subcode_support_weight,
    subcode_weight_by_sum,
    weight_distribution,
    word_weight,
)
from grmcurves.hierarchy import BRUTE_CAP, d_r_formula, first_r_sigmas, ghw_bruteforce, hp_min_subcode, sigma_to_poly
from grmcurves.traceforms import REDUCTION_MODES, TraceForm, format_form, reduce_form, word_to_trace_form

EXPLICIT_FAMILIES = FAMILIES[:4]
_TRANSFORMS = standard_transformations + (convert_xor,)


class UsageError(ValueError):
    pass


# --- record -----------------------------------------------------------------------

def make_record(command, params, outputs, checks, ms=None) -> dict:
    return {"command": command, "params": params, "outputs": outputs,
            "checks": {k: bool(v) for k, v in checks.items()}, "ms": ms}


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def dumps_json(record: dict) -> str:
    return json.dumps(_plain(record), sort_keys=True, separators=(",", ":"))


def _flatten(prefix, value, out):
    if isinstance(value, dict) and value:
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], out)
    elif isinstance(value, (dict, list, tuple)):
        out[prefix] = json.dumps(_plain(value), sort_keys=True, separators=(",", ":"))
    else:
        out[prefix] = "" if value is None else value
    return out


def dumps_csv(records: list[dict]) -> str:
    rows = [_flatten("", _plain(r), {}) for r in records]
    fields = sorted({k for row in rows for k in row})
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, restval="", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


# --- parsing ----------------------------------------------------------------------

def tower_from_args(args, m=None):
    m = args.m if m is None else m
    if m is None:
        raise UsageError("-m is required")
    if (args.p is None) == (args.q is None):
        raise UsageError("give exactly one of -p and -q")
    if args.p is not None:
        p, e = args.p, 1
        if set(factorint(p)) != {p}:
            raise UsageError(f"-p {p} is not a prime")
    else:
        f = factorint(args.q)
        if len(f) != 1:
            raise UsageError(f"-q {args.q} is not a prime power")
        (p, e), = f.items()
    return build_tower(p, e, m, alpha_order=args.alpha_order)


def resolve_generators(tower, rule: str, needed: set[str]) -> dict[str, int]:
    """Bind the names 'a' (and 'b') to top-field elements according to ``rule``."""
    base = set(tower.subfield_elements(tower.e))
    tz = rule == "trace-zero"
    if rule == "primitive":
        first = tower.big.generator
    elif rule.isdigit():
        first = int(rule)
        if not 0 <= first < tower.size:
            raise UsageError(f"--gen {rule} is not an element code of F_{tower.size}")
    elif rule in ("trace-zero", "non-base"):
        cands = [x for x in range(tower.size) if x not in base and (not tz or tower.tr(x) == 0)]
        if not cands:
            raise UsageError(f"no element for --gen {rule}")
        first = cands[0]
    else:
        raise UsageError(f"unknown --gen {rule!r}")
    out = {"a": first}
    if "b" in needed:
        for x in range(tower.size):
            if (not tz or tower.tr(x) == 0) and tower.independent_over([1, first, x], tower.e):
                out["b"] = x
                break
        else:
            raise UsageError(f"no b with {{1, a, b}} independent under --gen {rule}")
    return out


def parse_form(expr: str, tower, rule: str) -> tuple[TraceForm, dict]:
    """Integer-coefficient polynomial in x, a, b -> TraceForm over the top field."""
    x, a, b = Symbol("x"), Symbol("a"), Symbol("b")
    try:
        e = parse_expr(expr, local_dict={"x": x, "a": a, "b": b}, transformations=_TRANSFORMS)
    except (SyntaxError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot parse {expr!r}: {exc}") from exc
    names = {s.name for s in e.free_symbols}
    if names - {"x", "a", "b"}:
        raise UsageError(f"unknown symbols {sorted(names - {'x', 'a', 'b'})} in {expr!r}")
    gens = resolve_generators(tower, rule, names) if names & {"a", "b"} else {}
    try:
        poly = Poly(e, x, a, b)
    except Exception as exc:  # sympy raises several types for non-polynomials
        raise UsageError(f"{expr!r} is not a polynomial: {exc}") from exc
    big, p = tower.big, tower.p
    terms: dict[int, int] = {}
    for (i, j, k), coef in poly.terms():
        if not coef.is_integer:
            raise UsageError(f"non-integer coefficient {coef} in {expr!r}")
        c = big.scalar(int(coef) % p)
        c = big.mul(c, big.pow(gens.get("a", 0), j)) if j else c
        c = big.mul(c, big.pow(gens.get("b", 0), k)) if k else c
        terms[i] = big.add(terms.get(i, 0), c)
    const = terms.pop(0, 0)
    form = TraceForm(tower, terms)
    if const:
        form = form + TraceForm(tower, {0: const})
    return form, gens


def parse_multipoly(expr: str, tower) -> ReducedMultiPoly:
    m, F = tower.m, tower.small
    syms = [Symbol(f"X{j}") for j in range(1, m + 1)]
    try:
        e = parse_expr(expr, local_dict={s.name: s for s in syms}, transformations=_TRANSFORMS)
        poly = Poly(e, *syms)
    except Exception as exc:
        raise UsageError(f"cannot parse polynomial {expr!r} in X1..X{m}: {exc}") from exc
    out = ReducedMultiPoly(F, m)
    for exps, coef in poly.terms():
        if not coef.is_integer:
            raise UsageError(f"non-integer coefficient {coef} in {expr!r}")
        mono = ReducedMultiPoly.constant(F, m, F.scalar(int(coef) % F.p))
        for j, i in enumerate(exps, start=1):
            for _ in range(i):
                mono = mono * ReducedMultiPoly.variable(F, m, j)
        out = out + mono
    return out


# --- commands -----------------------------------------------------------------------

def cmd_ghw(args):
    tower = tower_from_args(args)
    q, m, s, r = tower.q, tower.m, args.s, args.r
    k = code_dimension(q, m, s)
    if not 1 <= r <= k:
        raise UsageError(f"-r {r} outside [1, {k}] for R_{q}({s},{m})")
    sigmas = first_r_sigmas(q, m, s, r)
    D = hp_min_subcode(tower, s, r)
    formula, measured = d_r_formula(q, m, s, r), subcode_support_weight(D)
    outputs = {"d_r": formula, "sigmas": [list(x) for x in sigmas],
               "polynomials": [str(sigma_to_poly(x, tower)) for x in sigmas],
               "support_weight": measured, "dimension": k, "brute": None}
    checks = {"formula = support weight": formula == measured}
    if args.brute:
        brute = ghw_bruteforce(generator_words(tower, s), r, tower.small, method=args.method, cap=args.cap)
        outputs["brute"] = brute
        checks["formula = brute force"] = brute == formula
    return [("ghw", {"q": q, "m": m, "s": s, "r": r}, outputs, checks)]


def cmd_subcode(args):
    tower = tower_from_args(args)
    if not args.poly:
        raise UsageError("give at least one --poly")
    polys = [parse_multipoly(e, tower) for e in args.poly]
    if args.s is not None and any(f.degree() > args.s for f in polys):
        raise UsageError(f"a polynomial has degree above s = {args.s}")
    try:
        D = SubcodeBasis([evaluate(f, tower) for f in polys], tower.small)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    w = subcode_support_weight(D)
    coords = tower.standard_basis()
    forms = [reduce_form(word_to_trace_form(f, coords, tower)) for f in polys]
    outputs = {"support_weight": w, "weight_by_sum": subcode_weight_by_sum(D),
               "weights": weight_distribution(D), "r": D.r,
               "trace_forms": [format_form(t) for t in forms], "curve": None}
    checks = {"support weight = span average": outputs["weight_by_sum"] == w}
    try:
        fp = FibreProduct(forms)
        rep = fibre_report(fp)
    except ValueError as exc:
        outputs["curve_error"] = str(exc)
    else:
        outputs["curve"] = rep.as_dict()
        checks["points from w(D)"] = rep.n_points == subcode_points(w, tower.size, tower.q, D.r)
    params = {"q": tower.q, "m": tower.m, "s": args.s, "polys": list(args.poly), "coords": coords}
    return [("subcode", params, outputs, checks)]


def _family_record(command, family, args, tower=None):
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    p, m = (args.p, args.m) if tower is None else (tower.p, tower.m)
    if p is None or m is None:
        raise UsageError("--family needs -p and -m")
    if args.r is None and args.d is None:
        plist = valid_params(family, p, m)
    else:
        plist = [FamilyParams(p, m, args.r or 1, args.d or 1)]
    records = []
    for pr in plist:
        try:
            inst = build_family(family, pr.validate(family))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        rep = inst.report
        out = rep.as_dict() | {"expected_genus": inst.expected_genus, "expected_points": inst.expected_points}
        checks = {"closed form": inst.matches, "maximal": rep.maximal}
        records.append((command, {"family": family, "p": p, "m": m, "r": pr.r, "d": pr.d}, out, checks))
    return records


def cmd_curve(args):
    if args.family:
        if args.family not in EXPLICIT_FAMILIES:
            raise UsageError(f"curve --family takes one of {', '.join(EXPLICIT_FAMILIES)}; use 'maximal' for quotients")
        return _family_record("curve", args.family, args)
    if not args.R:
        raise UsageError("give -R or --family")
    tower = tower_from_args(args)
    form, gens = parse_form(args.R, tower, args.gen)
    reduced = reduce_form(form, args.reduction)
    try:
        curve = ArtinSchreierCurve(reduced)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep = curve_report(curve)
    w = word_weight(form.values())
    outputs = rep.as_dict() | {"weight": w, "R_reduced": format_form(curve.form)}
    checks = {
        "weight/points dictionary": w == tower.size - (rep.n_points - 1) // tower.q,
        "n_points <= hasse_weil": rep.n_points <= rep.hw_bound,
    }
    params = {"q": tower.q, "m": tower.m, "R": args.R, "generators": gens, "reduction": args.reduction}
    return [("curve", params, outputs, checks)]


def cmd_fibre(args):
    tower = tower_from_args(args)
    if not args.R:
        raise UsageError("give at least one -R")
    parsed = [parse_form(e, tower, args.gen) for e in args.R]
    forms = [f for f, _ in parsed]
    gens = {k: v for _, g in parsed for k, v in g.items()}
    try:
        fp = FibreProduct([reduce_form(f, args.reduction) for f in forms], reduction=args.reduction)
        rep = fibre_report(fp)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    outputs = rep.as_dict()
    checks = {"n_points <= hasse_weil": rep.n_points <= rep.hw_bound}
    if args.reduction == "full":
        D = SubcodeBasis([f.values() for f in forms], tower.small)
        w = subcode_support_weight(D)
        outputs["w_D"] = w
        checks["points from w(D)"] = subcode_weight_from_points(rep.n_points, tower.size, tower.q, fp.r) == w
    params = {"q": tower.q, "m": tower.m, "R": list(args.R), "generators": gens, "reduction": args.reduction}
    return [("fibre", params, outputs, checks)]


def cmd_maximal(args):
    return _family_record("maximal", args.family, args)


def cmd_verify(args):
    opts = Options(grid_max=args.grid_max, alpha_order=args.alpha_order)
    ids = args.only or list(CLAIMS)
    for c in ids:
        if c not in CLAIMS:
            raise UsageError(f"unknown claim {c!r}; choose from {', '.join(CLAIMS)}")
    records = []
    for c in ids:
        res = run_claim(c, opts)
        outputs = res.outputs | ({"notes": res.notes} if res.notes else {})
        records.append(("verify-paper", {"claim": c} | res.params, outputs, res.checks))
    return records


# --- argument parser ------------------------------------------------------------------

def _add_field_args(p, need_s=False):
    p.add_argument("-p", type=int, help="prime; the tower is F_p^m over F_p")
    p.add_argument("-q", type=int, help="prime power; the tower is F_q^m over F_q")
    p.add_argument("-m", type=int, help="extension degree / number of variables")
    if need_s:
        p.add_argument("-s", type=int, required=True, help="code order")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON Lines output (default)")
    fmt.add_argument("--csv", action="store_true", help="CSV output, one row per record")
    common.add_argument("--timing", action="store_true", help="fill the ms field (breaks byte-identical output)")
    common.add_argument("--alpha-order", default="desc", choices=("asc", "desc"),
                        help="enumeration of F_q used to build minimum weight subcodes")

    parser = argparse.ArgumentParser(prog="grmcurves", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ghw", parents=[common], help="generalized Hamming weight d_r of R_q(s, m)")
    _add_field_args(p, need_s=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--brute", action="store_true", help="also run the brute-force oracle")
    p.add_argument("--method", default="auto", choices=("auto", "subspaces", "zero-sets", "words"))
    p.add_argument("--cap", type=int, default=BRUTE_CAP, help="search-space cap for --brute")
    p.set_defaults(func=cmd_ghw)

    p = sub.add_parser("subcode", parents=[common], help="support weight and curve of a subcode")
    _add_field_args(p)
    p.add_argument("-s", type=int, help="check every polynomial has degree <= s")
    p.add_argument("--poly", action="append", help="basis polynomial in X1..Xm, e.g. 'X1*X2'")
    p.set_defaults(func=cmd_subcode)

    for name, func, helptext in (("curve", cmd_curve, "Artin-Schreier curve y^q - y = R(x)"),
                                 ("fibre", cmd_fibre, "fibre product of several R_i")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        _add_field_args(p)
        p.add_argument("-R", action="append" if name == "fibre" else "store",
                       help="polynomial in x with integer coefficients and generators a, b")
        p.add_argument("--gen", default="non-base",
                       help="binding of a (and b): trace-zero, non-base, primitive, or an element code")
        p.add_argument("--reduction", default="full", choices=REDUCTION_MODES)
        if name == "curve":
            p.add_argument("--family", help=f"one of {', '.join(EXPLICIT_FAMILIES)}")
            p.add_argument("-r", type=int)
            p.add_argument("-d", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("maximal", parents=[common], help="maximal-curve family invariants")
    p.add_argument("--family", required=True, help=f"one of {', '.join(FAMILIES)}")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-r", type=int)
    p.add_argument("-d", type=int)
    p.set_defaults(func=cmd_maximal)

    p = sub.add_parser("verify-paper", parents=[common], help="run the reproduction suite")
    p.add_argument("--only", action="append", help=f"claim id ({', '.join(CLAIMS)}); repeatable")
    p.add_argument("--grid-max", type=int, help="skip grid towers with q^m above this size")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        results = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"grmcurves {args.command}: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"grmcurves {args.command}: consistency check failed: {exc}", file=sys.stderr)
        return 1
    ms = round((time.perf_counter() - t0) * 1000, 3) if args.timing else None
    records = [make_record(c, p, o, k, ms) for c, p, o, k in results]
    if args.csv:
        sys.stdout.write(dumps_csv(records))
    else:
        for rec in records:
            sys.stdout.write(dumps_json(rec) + "\n")
    failed = [f"{r['command']} {r['params']}: {k}" for r in records for k, v in r["checks"].items() if not v]
    for line in failed:
        print(f"FAILED {line}", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
