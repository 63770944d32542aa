"""Command-line interface: ``ffext {convolve,constant,maximizer,verify,search}``.

Exit status is 0 when every check passes, 1 when any check fails and 2 on
argument errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from . import formulas, verification
from .errors import FFExtError, UnsupportedCombination
from .field import make_field
from .geometry import SurfaceSpec, all_points
from .sharpness import SearchConfig, local_search, ratio
from .transform import SurfaceFunction, convolve_counting, convolve_fourier

SURFACES = {
    "p1": "P1",
    "p2": "P2",
    "h2": "H2",
    "gamma3": "Gamma3",
    "gamma3-full": "Gamma3Full",
    "upsilon3": "Upsilon3",
    "upsilon3-full": "Upsilon3Full",
}
UNKNOWN = "unknown"


# -- serialisation ----------------------------------------------------------------

def _scalar(v: Any) -> Any:
    if v is None:
        return UNKNOWN
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return UNKNOWN if math.isnan(v) else float(v)
    if isinstance(v, complex):
        return _scalar(v.real) if v.imag == 0 else [_scalar(v.real), _scalar(v.imag)]
    return v


def dumps(obj: Any) -> str:
    """Stable JSON: sorted keys, floats at 17 significant digits, rationals as strings."""
    obj = _scalar(obj)
    if isinstance(obj, dict):
        items = sorted((str(k), v) for k, v in obj.items())
        return "{" + ",".join(json.dumps(k) + ":" + dumps(v) for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        if math.isinf(obj):
            return json.dumps(UNKNOWN)
        return format(obj, ".17g")
    if isinstance(obj, int):
        return str(obj)
    return json.dumps(str(obj))


def to_csv(results: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["target", "claimed", "computed", "gap", "pass"])
    for r in results:
        w.writerow([r["name"]] + [_cell(r[key]) for key in ("claimed", "computed", "gap")] + [str(r["pass"]).lower()])
    return buf.getvalue()


def _cell(v: Any) -> str:
    v = _scalar(v)
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def to_table(results: list[dict]) -> str:
    rows = [["name", "claimed", "computed", "gap", "pass"]]
    for r in results:
        rows.append([r["name"]] + [_short(r[k]) for k in ("claimed", "computed", "gap")] + ["ok" if r["pass"] else "FAIL"])
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows) + "\n"


def _short(v: Any) -> str:
    v = _scalar(v)
    if isinstance(v, float):
        return format(v, ".10g")
    return str(v)


# -- commands ---------------------------------------------------------------------

def _surface(args) -> SurfaceSpec:
    return SurfaceSpec(SURFACES[args.surface], make_field(args.p, args.n))


def _field_info(field) -> dict:
    return {"p": field.p, "n": field.n, "q": field.q, "modulus": field.modulus_str()}


def cmd_convolve(args) -> tuple[dict, list[dict]]:
    s = _surface(args)
    try:
        predicted = formulas.predicted_conv(s, args.k)
    except UnsupportedCombination:
        predicted = None
    table = convolve_counting(s, args.k) if args.route in ("count", "both") else None
    fourier = convolve_fourier(s, args.k).values.real if args.route in ("fourier", "both") else None
    results = []
    for pt in all_points(s.field, s.dim):
        key = tuple(int(c) for c in pt)
        name = "(" + ",".join(map(str, key)) + ")"
        computed = table.value(key) if table is not None else float(fourier[key])
        claimed = predicted(key) if predicted is not None else None
        r = verification.check(name, claimed, computed)
        if table is not None and fourier is not None:
            r["fourier"] = float(fourier[key])
            r["pass"] = r["pass"] and abs(float(computed) - r["fourier"]) <= verification.FLOAT_TOL
        results.append(r)
    return {"surface": s.kind, "k": args.k, "route": args.route, "field": _field_info(s.field)}, results


def cmd_constant(args) -> tuple[dict, list[dict]]:
    s = _surface(args)
    return {"surface": s.kind, "exponent": args.exponent, "field": _field_info(s.field)}, verification.constant_checks(s, args.exponent)


def cmd_maximizer(args) -> tuple[dict, list[dict]]:
    s = _surface(args)
    lam = complex(*args.lam)
    params = formulas.MaximizerParams(lam, args.a % s.q, args.b % s.q, args.c % s.q)
    r = ratio(formulas.maximizer_family(s, params), 4)
    res = verification.check(f"{s.kind} family ({params.a},{params.b},{params.c})", r.claimed, r.value)
    return {"surface": s.kind, "field": _field_info(s.field)}, [res]


def cmd_verify(args) -> tuple[dict, list[dict]]:
    return {"suite": args.suite, "max_q": args.max_q}, verification.run_suite(args.suite, args.max_q)


def cmd_search(args) -> tuple[dict, list[dict]]:
    s = _surface(args)
    mode = {"phase": "phase_only", "complex": "full_complex"}[args.mode]
    cfg = SearchConfig(mode, args.steps, args.step_size, args.restarts, args.seed)
    _, rep = local_search(s, args.exponent, cfg)
    if rep.claimed is None:
        res = verification.check("best ratio", None, rep.value)
    else:
        res = verification.check("best ratio", rep.claimed, rep.value, ok=rep.value <= rep.claimed + verification.FLOAT_TOL)
    constant = ratio(SurfaceFunction.constant(s), args.exponent).value
    res["constant_ratio"] = constant
    return {"surface": s.kind, "exponent": args.exponent, "mode": mode, "field": _field_info(s.field)}, [res]


def _lam(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected RE,IM")
    return float(parts[0]), float(parts[1])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ffext", description="Sharp extension estimates over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    def field_args(p, surfaces=tuple(SURFACES)):
        p.add_argument("--surface", choices=surfaces, required=True)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--n", type=int, default=1)

    def fmt(p):
        p.add_argument("--format", choices=("json", "csv", "table"), default="json")

    c = sub.add_parser("convolve", help="k-fold convolution table")
    field_args(c)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--route", choices=("count", "fourier", "both"), default="both")
    fmt(c)
    c.set_defaults(func=cmd_convolve)

    c = sub.add_parser("constant", help="sharp constant vs constant-function ratio")
    field_args(c)
    c.add_argument("--exponent", type=int, choices=(4, 6), required=True)
    fmt(c)
    c.set_defaults(func=cmd_constant)

    c = sub.add_parser("maximizer", help="ratio of a maximizer-family member")
    field_args(c, ("p2", "h2"))
    c.add_argument("--a", type=int, default=0)
    c.add_argument("--b", type=int, default=0)
    c.add_argument("--c", type=int, default=0)
    c.add_argument("--lambda", dest="lam", type=_lam, default=(1.0, 0.0))
    fmt(c)
    c.set_defaults(func=cmd_maximizer)

    c = sub.add_parser("verify", help="run a verification suite")
    c.add_argument("--suite", choices=("lemmas", "convolutions", "theorems", "theorem6", "all"), required=True)
    c.add_argument("--max-q", type=int, default=7)
    fmt(c)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("search", help="gradient ascent on the extension ratio")
    field_args(c)
    c.add_argument("--exponent", type=int, choices=(4, 6), required=True)
    c.add_argument("--mode", choices=("phase", "complex"), default="phase")
    c.add_argument("--restarts", type=int, default=5)
    c.add_argument("--steps", type=int, default=200)
    c.add_argument("--step-size", type=float, default=0.5)
    c.add_argument("--seed", type=int, default=0)
    fmt(c)
    c.set_defaults(func=cmd_search)
    return ap


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    start = time.perf_counter()
    try:
        meta, results = args.func(args)
    except (FFExtError, ValueError) as exc:
        print(f"ffext: error: {exc}", file=sys.stderr)
        return 2
    elapsed = (time.perf_counter() - start) * 1000
    ok = all(r["pass"] for r in results)
    if args.format == "json":
        report = {"command": argv, "results": results, "elapsed_ms": elapsed, "pass": ok, **meta}
        out.write(dumps(report) + "\n")
    elif args.format == "csv":
        out.write(to_csv(results))
    else:
        out.write(to_table(results))
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
