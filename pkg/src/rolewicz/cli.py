"""Command-line entry point ``rolewicz``.

Subcommands::

    rolewicz operator    --w 2 --apply A --x "0,1"
    rolewicz hypercyclic --w 2 --space lp --p 1 --terms 5 --format csv
    rolewicz periodic    --w 2 --seed "1" --period 1 --verify-upto 50
    rolewicz eigen       --w 2 --lambda "1+1i" --entries 16
    rolewicz spectrum    --w 2 --grid-re -2..2 --grid-im -2..2 --step 1 --K 64

Exit codes: 0 every check passed, 1 usage or parse error, 2 a mathematical
check failed.  All numeric inputs are parsed as exact rationals.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .exactnum import ComplexRational, abs_enclosure, format_scalar, is_real, parse_scalar
from .hyperengine import (
    build_schedule,
    check_schedule,
    orbit_approach_error,
    partial_hypercyclic_vector,
    schedule_to_json,
)
from .periodic import PeriodicPoint, periodic_to_json, verify_periodicity
from .seqspace import FiniteSequence, parse_space, sequence_to_json
from .shiftop import (
    COMPLEX,
    REAL,
    FieldMismatchError,
    ShiftOperator,
    WeightError,
    apply_A_pow,
    apply_B_pow,
    right_inverse_check,
    unboundedness_witness,
)
from .spectral import (
    eigen_membership,
    eigen_residual_check,
    eigenspace_dimension_check,
    eigenvector,
    spectrum_csv_rows,
    spectrum_probe,
    spectrum_to_json,
)

SCHEMA_LINE = "# rolewicz-schema v1"
DEFAULT_DEPTH_LIMIT = 10_000
EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2

# flags whose values may legitimately start with '-'
_SIGNED_VALUE_FLAGS = {"--w", "--x", "--seed", "--lambda", "--grid-re", "--grid-im", "--step"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _depth_limit() -> int:
    raw = os.environ.get("ROLEWICZ_DEPTH_LIMIT")
    if raw is None:
        return DEFAULT_DEPTH_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"ROLEWICZ_DEPTH_LIMIT is not an integer: {raw!r}") from None


def _depth(value: int, name: str) -> int:
    if value < 0:
        raise UsageError(f"{name} must be nonnegative")
    if value > _depth_limit():
        raise UsageError(f"{name}={value} exceeds ROLEWICZ_DEPTH_LIMIT={_depth_limit()}")
    return value


def _scalar(token: str):
    try:
        return parse_scalar(token)
    except ValueError:
        raise UsageError(f"cannot parse scalar {token!r}") from None


def _scalar_list(text: str) -> list:
    if text.strip() == "":
        return []
    return [_scalar(t) for t in text.split(",")]


def _rational(token: str) -> Fraction:
    v = _scalar(token)
    if not is_real(v):
        raise UsageError(f"expected a real rational, got {token!r}")
    return Fraction(v)


def _range(text: str) -> tuple[Fraction, Fraction]:
    lo, sep, hi = text.partition("..")
    if not sep:
        v = _rational(text)
        return v, v
    return _rational(lo), _rational(hi)


def _operator(args, *scalars) -> ShiftOperator:
    w = _scalar(args.w)
    field = args.field
    if field is None:
        complex_inputs = [w, *scalars]
        field = REAL if all(is_real(s) for s in complex_inputs) else COMPLEX
    try:
        space = parse_space(args.space, _rational(args.p) if args.p is not None else None)
        return ShiftOperator(w, space, field)
    except (WeightError, FieldMismatchError) as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _approx(q) -> str:
    return repr(float(q))


def _abs_approx(v) -> str:
    return repr(float(abs_enclosure(v)[1]))


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    buf.write(SCHEMA_LINE + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for r in rows:
        writer.writerow(["" if v is None else v for v in r])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def cmd_operator(args) -> tuple[int, str]:
    x = FiniteSequence(_scalar_list(args.x)) if args.x is not None else None
    op = _operator(args, *(x.entries if x is not None else ()))
    n = _depth(args.n, "--n")
    if args.unbounded_above is not None:
        k, ratio_sq = unboundedness_witness(op, _rational(args.unbounded_above))
        out = {"operation": "unbounded", "bound": format_scalar(_rational(args.unbounded_above)), "k": k,
               "ratio_sq": format_scalar(ratio_sq)}
        if args.format == "json":
            return EXIT_OK, _json(out)
        if args.format == "csv":
            return EXIT_OK, _csv(["k", "ratio_sq"], [[k, format_scalar(ratio_sq)]])
        return EXIT_OK, f"k={k}\nratio_sq={format_scalar(ratio_sq)}\n"
    if x is None:
        raise UsageError("--x is required unless --unbounded-above is given")
    try:
        x = FiniteSequence(op.check_scalar(v) for v in x)
    except FieldMismatchError as exc:
        raise UsageError(str(exc)) from None
    if args.check is not None:
        ok = right_inverse_check(op, n, x)
        code = EXIT_OK if ok else EXIT_CHECK
        if args.format == "json":
            return code, _json({"operation": "check", "check": args.check, "n": n,
                                "input": sequence_to_json(x), "pass": ok})
        if args.format == "csv":
            return code, _csv(["check", "n", "pass"], [[args.check, n, ok]])
        return code, ("pass\n" if ok else "fail\n")
    fn = apply_A_pow if args.apply == "A" else apply_B_pow
    y = fn(op, n, x)
    if args.format == "json":
        return EXIT_OK, _json({"operation": "apply", "apply": args.apply, "n": n,
                               "input": sequence_to_json(x), "result": sequence_to_json(y)})
    if args.format == "csv":
        rows = [[k, format_scalar(v)] + ([_abs_approx(v)] if args.approx else [])
                for k, v in enumerate(y.entries, start=1)]
        return EXIT_OK, _csv(["k", "value"] + (["abs_approx"] if args.approx else []), rows)
    return EXIT_OK, ",".join(format_scalar(v) for v in y.entries) + "\n"


def cmd_hypercyclic(args) -> tuple[int, str]:
    op = _operator(args)
    M = _depth(args.terms, "--terms")
    s = build_schedule(op, M)
    hps = partial_hypercyclic_vector(op, s)
    rows = []
    ok = check_schedule(op, s)
    for k in range(1, M + 1):
        err, bound = orbit_approach_error(op, hps, k)
        good = err.hi <= bound
        ok = ok and good
        rows.append((k, s[k].n, err, bound, good))
    code = EXIT_OK if ok else EXIT_CHECK
    if args.format == "csv":
        header = ["k", "n_k", "err_lo", "err_hi", "paper_bound", "ok"]
        if args.approx:
            header += ["err_hi_approx", "paper_bound_approx"]
        out = []
        for k, n, err, bound, good in rows:
            r = [k, n, format_scalar(err.lo), format_scalar(err.hi), format_scalar(bound), good]
            if args.approx:
                r += [_approx(err.hi), _approx(bound)]
            out.append(r)
        return code, _csv(header, out)
    payload = {
        "w": format_scalar(op.w),
        "space": str(op.space),
        "field": op.field,
        "schedule": schedule_to_json(s),
        "schedule_valid": check_schedule(op, s),
        "partial_sum": sequence_to_json(hps.x_M),
        "tail_bound_hi": format_scalar(hps.tail_bound_hi),
        "orbit": [
            {"k": k, "n_k": n, "err": err.to_json(), "paper_bound": format_scalar(bound), "ok": good}
            for k, n, err, bound, good in rows
        ],
    }
    if args.format == "json":
        return code, _json(payload)
    lines = [f"schedule n = {list(s.n)}", f"tail bound = {format_scalar(hps.tail_bound_hi)}"]
    for k, n, err, bound, good in rows:
        lines.append(f"k={k} n_k={n} err_hi~{float(err.hi):.6g} bound~{float(bound):.6g} {'ok' if good else 'FAIL'}")
    return code, "\n".join(lines) + "\n"


def cmd_periodic(args) -> tuple[int, str]:
    seed = _scalar_list(args.seed)
    if not seed:
        raise UsageError("--seed must list at least one scalar")
    op = _operator(args, *seed)
    N = args.period if args.period is not None else len(seed)
    if N < len(seed):
        raise UsageError(f"--period {N} shorter than the seed ({len(seed)} entries)")
    K = _depth(args.verify_upto, "--verify-upto")
    if K < 1:
        raise UsageError("--verify-upto must be >= 1")
    seed = seed + [0] * (N - len(seed))
    try:
        overrides = {}
        p = PeriodicPoint(op, seed)
        if args.perturb is not None:
            overrides = {args.perturb: 2 * p.entry(args.perturb) + (1 if not p.entry(args.perturb) else 0)}
            p = PeriodicPoint(op, seed, overrides)
    except FieldMismatchError as exc:
        raise UsageError(str(exc)) from None
    ok = verify_periodicity(p, K)
    code = EXIT_OK if ok else EXIT_CHECK
    shown = min(K, args.entries) if args.entries is not None else K
    if args.format == "csv":
        rows = [[k, format_scalar(v)] + ([_abs_approx(v)] if args.approx else [])
                for k, v in enumerate(p.prefix(shown), start=1)]
        return code, _csv(["k", "entry"] + (["abs_approx"] if args.approx else []), rows)
    payload = periodic_to_json(p, shown, ok)
    payload["verified_upto"] = K if ok else None
    if args.format == "json":
        return code, _json(payload)
    return code, (f"A^{N} x = x verified for k <= {K}\n" if ok else f"A^{N} x = x FAILED within k <= {K}\n")


def cmd_eigen(args) -> tuple[int, str]:
    lam = _scalar(args.lam)
    op = _operator(args, lam)
    K = _depth(args.entries, "--entries")
    if K < 2:
        raise UsageError("--entries must be >= 2")
    try:
        ep = eigenvector(op, lam)
    except FieldMismatchError as exc:
        raise UsageError(str(exc)) from None
    residual = eigen_residual_check(ep, K)
    verdict, k0 = eigen_membership(ep, K=K)
    dim = eigenspace_dimension_check(op, lam, K)
    ok = residual and verdict.certified and dim
    code = EXIT_OK if ok else EXIT_CHECK
    if args.format == "csv":
        rows = [[k, format_scalar(v)] for k, v in enumerate(ep.vector.prefix(K), start=1)]
        return code, _csv(["k", "entry"], rows)
    payload = {
        "w": format_scalar(op.w),
        "space": str(op.space),
        "lambda": format_scalar(lam),
        "k0": k0,
        "residual_ok": residual,
        "membership": verdict.status,
        "dim_ok": dim,
        "vector": sequence_to_json(ep.vector, K),
    }
    if args.format == "json":
        return code, _json(payload)
    return code, (
        f"lambda={format_scalar(lam)} k0={k0} residual_ok={residual} "
        f"membership={verdict.status} dim_ok={dim}\n"
    )


def _grid(args) -> list:
    re_lo, re_hi = _range(args.grid_re)
    im_lo, im_hi = _range(args.grid_im)
    step = _rational(args.step)
    if step <= 0:
        raise UsageError("--step must be positive")
    count = ((re_hi - re_lo) / step + 1) * ((im_hi - im_lo) / step + 1)
    if count > _depth_limit():
        raise UsageError(f"grid of {int(count)} cells exceeds ROLEWICZ_DEPTH_LIMIT")
    grid = []
    a = re_lo
    while a <= re_hi:
        b = im_lo
        while b <= im_hi:
            grid.append(a if b == 0 else ComplexRational(a, b))
            b += step
        a += step
    return grid


def cmd_spectrum(args) -> tuple[int, str]:
    grid = _grid(args)
    op = _operator(args, *grid)
    K = _depth(args.K, "--K")
    if K < 2:
        raise UsageError("--K must be >= 2")
    cells = spectrum_probe(op, grid, K)
    ok = all(c.passed for c in cells)
    code = EXIT_OK if ok else EXIT_CHECK
    if args.format == "csv":
        return code, _csv(["lambda_re", "lambda_im", "k0", "pass"], spectrum_csv_rows(cells))
    if args.format == "json":
        return code, _json(spectrum_to_json(op, K, cells))
    passed = sum(c.passed for c in cells)
    return code, f"{passed}/{len(cells)} cells pass (grid evidence, K={K})\n"


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--w", required=True, help="weight, |w| > 1 (e.g. 2, 3/2, 1+1i)")
    p.add_argument("--field", choices=[REAL, COMPLEX], default=None,
                   help="scalar field (default: complex iff any input is complex)")
    p.add_argument("--space", default="lp", help="lp or c0")
    p.add_argument("--p", default=None, help="exponent for lp (default 2)")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--out", default=None, help="write output to FILE")
    p.add_argument("--approx", action="store_true", help="add float columns (csv only)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rolewicz", description="Exact experiments with Rolewicz-type unbounded shifts.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("operator", help="apply A^n / B^n, right-inverse check, unboundedness witness")
    _common(p)
    p.add_argument("--x", default=None, help="comma-separated finite sequence")
    p.add_argument("--apply", choices=["A", "B"], default="A")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--check", choices=["right-inverse"], default=None)
    p.add_argument("--unbounded-above", dest="unbounded_above", default=None)
    p.set_defaults(func=cmd_operator)

    p = sub.add_parser("hypercyclic", help="schedule, partial sum and orbit-approach errors")
    _common(p)
    p.add_argument("--terms", type=int, default=5)
    p.set_defaults(func=cmd_hypercyclic)

    p = sub.add_parser("periodic", help="build and verify a periodic point")
    _common(p)
    p.add_argument("--seed", required=True)
    p.add_argument("--period", type=int, default=None)
    p.add_argument("--verify-upto", dest="verify_upto", type=int, default=50)
    p.add_argument("--entries", type=int, default=None, help="entries shown (default: verify-upto)")
    p.add_argument("--perturb", type=int, default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_periodic)

    p = sub.add_parser("eigen", help="eigenvector for one lambda")
    _common(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--entries", type=int, default=16)
    p.set_defaults(func=cmd_eigen)

    p = sub.add_parser("spectrum", help="eigen checks over a rectangular lambda grid")
    _common(p)
    p.add_argument("--grid-re", dest="grid_re", default="0")
    p.add_argument("--grid-im", dest="grid_im", default="0")
    p.add_argument("--step", default="1")
    p.add_argument("--K", type=int, default=64)
    p.set_defaults(func=cmd_spectrum)
    return parser


def _join_signed_values(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _SIGNED_VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Run the CLI and return ``(exit_code, output_text)`` without printing."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_signed_values(argv))
        code, text = args.func(args)
    except UsageError as exc:
        return EXIT_USAGE, f"error: {exc}\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return code, ""
    return code, text


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    stream = sys.stderr if code == EXIT_USAGE else sys.stdout
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
