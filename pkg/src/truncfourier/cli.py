"""Command-line front end.

Exit codes: 0 success, 2 invalid input (set literal or parameters),
3 numerical failure such as non-convergence.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import bounds, constructions, spectral
from .discretize import ANALYST, Convention, Resolution
from .interval_sets import format_set, is_symmetric, parse_set

EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class UsageError(ValueError):
    pass


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, shortest round-trip floats."""
    return json.dumps(_clean(obj), sort_keys=True, indent=2, allow_nan=True) + "\n"


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return _clean(obj.item())
    if isinstance(obj, float):
        return float(obj)
    return obj


def _floats(text: str) -> list[float]:
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _set(args):
    if args.set is None:
        raise UsageError("--set is required")
    try:
        return parse_set(args.set)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _resolution(args) -> Resolution:
    if args.order < 2 or args.panels <= 0:
        raise UsageError("--order must be >= 2 and --panels > 0")
    return Resolution(args.order, args.panels)


def _table_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([repr(r[c]) if isinstance(r[c], float) else r[c] for c in columns])
    return buf.getvalue()


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}


def cmd_spectrum(args):
    S = _set(args)
    rep = spectral.analyze(S, _resolution(args), args.convention)
    if args.format == "csv":
        return rep.to_csv()
    d = rep.to_dict()
    d["config"] = _config(args)
    return dumps(d)


def cmd_normality(args):
    S = _set(args)
    res = _resolution(args)
    defect = spectral.commutator_defect(S, res)
    witness, _, _ = spectral.normality_witness(S, res)
    verdict = "normal" if defect <= args.threshold else "not normal"
    d = {
        "set": format_set(S),
        "commutator_defect": defect,
        "asymmetry_witness": witness,
        "symmetric": is_symmetric(S, 0.0),
        "verdict": verdict,
        "threshold": args.threshold,
        "convention": ANALYST.value,
        "resolution": res.params(),
        "config": _config(args),
    }
    if args.format == "csv":
        return _table_csv([d], ["set", "commutator_defect", "asymmetry_witness", "symmetric", "verdict"])
    return dumps(d)


FUCHS_COLUMNS = ["l", "lambda0", "one_minus_lambda0", "prediction", "ratio",
                 "bandwidth_prediction", "bandwidth_ratio"]


def cmd_fuchs(args):
    ls = _floats(args.l)
    if not ls or any(l <= 0 for l in ls):
        raise UsageError("--l needs positive values")
    if args.n < 64:
        raise UsageError("--n must be >= 64")
    rows = spectral.fuchs_table(ls, args.n)
    if args.format == "csv":
        return _table_csv(rows, FUCHS_COLUMNS)
    return dumps({"rows": rows, "n": args.n, "config": _config(args)})


def cmd_traceclass(args):
    S = _set(args)
    res = _resolution(args)
    rep = bounds.bounds_report(S, A_values=_floats(args.A), resolution=res)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["quantity", "paper-raw", "analyst", "reference"])
        for name, raw, an, ref in rep.table():
            w.writerow([name, "" if raw is None else repr(float(raw)),
                        "" if an is None else repr(float(an)), ref])
        return buf.getvalue()
    d = rep.to_dict()
    d["config"] = _config(args)
    return dumps(d)


def cmd_nazarov(args):
    S = _set(args)
    F = parse_set(args.F) if args.F else S
    res = _resolution(args)
    est = bounds.nazarov_empirical(S, F, seed=args.seed, n=args.members, resolution=res)
    d = est.to_dict()
    d.pop("ratios")
    if F == S:
        q, X = bounds.heldout_vectors(S, 50, args.seed + 1, res)
        d["heldout_violations"] = len(bounds.bfu_violations(S, est.a_lower, q, X))
        d["bound_at_a_lower"] = bounds.nazarov_contraction_bound(S, est.a_lower)
    d.update({"E": format_set(S), "F": format_set(F), "config": _config(args)})
    if args.format == "csv":
        keys = sorted(k for k, v in d.items() if not isinstance(v, dict))
        return _table_csv([d], keys)
    return dumps(d)


def cmd_example(args):
    spec = constructions.BumpSpec(a=args.a, P=args.P)
    if args.mode == "isometric":
        vec = constructions.build_isometric_vector(spec)
    else:
        h = constructions.DEFAULT_SHIFT if args.h is None else args.h
        vec = constructions.build_null_vector(spec, h)
    if args.format == "csv":
        return vec.to_csv()
    d = vec.certification()
    d["config"] = _config(args)
    return dumps(d)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="truncfourier", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--set", help='interval set, e.g. "[-1,1]∪[2,3]" or JSON')
    common.add_argument("--convention", choices=[c.value for c in Convention], default=ANALYST.value)
    common.add_argument("--order", type=int, default=8)
    common.add_argument("--panels", type=float, default=4.0, help="panels per unit length")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectrum", parents=[common], help="singular spectrum and norms")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("normality", parents=[common], help="commutator defect")
    s.add_argument("--threshold", type=float, default=1e-8)
    s.set_defaults(func=cmd_normality)

    s = sub.add_parser("fuchs", parents=[common], help="largest sinc-kernel eigenvalue sweep")
    s.add_argument("--l", default="3,4,5")
    s.add_argument("--n", type=int, default=400)
    s.set_defaults(func=cmd_fuchs)

    s = sub.add_parser("traceclass", parents=[common], help="trace-class criterion and bounds")
    s.add_argument("--A", default="1")
    s.set_defaults(func=cmd_traceclass)

    s = sub.add_parser("nazarov", parents=[common], help="empirical Nazarov constant")
    s.add_argument("--F", help="second set (default: same as --set)")
    s.add_argument("--members", type=int, default=50)
    s.set_defaults(func=cmd_nazarov)

    s = sub.add_parser("example", parents=[common], help="isometric / null vectors on the periodic set")
    s.add_argument("--mode", choices=["isometric", "null"], default="isometric")
    s.add_argument("--a", type=float, default=0.5)
    s.add_argument("--P", type=int, default=6)
    s.add_argument("--h", type=float, default=None)
    s.set_defaults(func=cmd_example)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (spectral.ConvergenceError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
