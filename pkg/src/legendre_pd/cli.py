"""Command line front end.

    $ legendre-pd eval --kind q --n 0 --m 0 --z 3
    $ legendre-pd check --max-n 4 --tol 1e-9
    $ legendre-pd table --kind q --n 0:5 --m 0:n --z-list points.txt --format csv
    $ legendre-pd sweep --kind dnu --n 8 --m 0 --z-grid 1.01:2:20 --rep auto

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 domain error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Any, Iterable, Sequence, TextIO

import mpmath

from .checks import CUT_POINTS, STANDARD_GRID, run_checks
from .deriv_mu import dmu_p
from .deriv_nu import dnu_p
from .kernel import (
    Big,
    DomainError,
    EvalPoint,
    EvalReport,
    GaussQ,
    LegendreError,
    OffCut,
    OnCut,
    PrecisionMode,
    RepId,
    as_index,
    parse_precision,
)
from .legendre_p import legendre_p
from .legendre_q import q

KINDS = ("p", "q", "dnu", "dmu")
CSV_HEADER = ["kind", "n", "m", "point_re", "point_im", "x", "rep", "value_re", "value_im", "cond", "precision"]


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# parsing


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a number: {text!r}") from exc


def parse_z(text: str, side: int = 1) -> OffCut:
    """``RE`` or ``RE,IM`` as an exact off-cut point."""
    parts = text.split(",")
    if len(parts) > 2 or " " in text:
        raise UsageError(f"expected RE or RE,IM without spaces, got {text!r}")
    re = _fraction(parts[0])
    im = _fraction(parts[1]) if len(parts) == 2 else Fraction(0)
    sign = side if im == 0 else (1 if im > 0 else -1)
    return OffCut(GaussQ(re, im), sign)


def parse_point_line(line: str, side: int = 1) -> EvalPoint | None:
    """One grid-file line: ``RE[,IM]`` or ``x=VALUE``; blank and ``#`` lines give None."""
    line = line.strip()
    if not line or line.startswith("#"):
        return None
    if line.lower().startswith("x="):
        return OnCut(_fraction(line[2:]))
    return parse_z(line, side)


def read_points(path: str, side: int = 1) -> list[EvalPoint]:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    points = [parse_point_line(line, side) for line in lines]
    return [p for p in points if p is not None]


def parse_range(text: str, n: int | None = None) -> list[int]:
    """``K``, ``A:B`` (inclusive) or ``A:n`` where ``n`` is the current degree."""
    def one(part: str) -> int:
        part = part.strip()
        if part == "n":
            if n is None:
                raise UsageError("'n' is only allowed in the order range")
            return n
        try:
            return int(part)
        except ValueError as exc:
            raise UsageError(f"not an integer: {part!r}") from exc

    if ":" in text:
        lo, hi = text.split(":", 1)
        return list(range(one(lo), one(hi) + 1))
    return [one(text)]


def parse_z_grid(text: str, side: int = 1) -> list[OffCut]:
    """``RE0:RE1:STEPS[,IM]`` with STEPS evenly spaced points, ends included."""
    head, _, im_text = text.partition(",")
    parts = head.split(":")
    if len(parts) != 3:
        raise UsageError(f"expected RE0:RE1:STEPS[,IM], got {text!r}")
    lo, hi = _fraction(parts[0]), _fraction(parts[1])
    try:
        steps = int(parts[2])
    except ValueError as exc:
        raise UsageError(f"STEPS must be an integer, got {parts[2]!r}") from exc
    if steps < 1:
        raise UsageError("STEPS must be at least 1")
    im = _fraction(im_text) if im_text else Fraction(0)
    out = []
    for k in range(steps):
        re = lo if steps == 1 else lo + (hi - lo) * Fraction(k, steps - 1)
        out.append(parse_z(f"{re},{im}", side) if im else OffCut(GaussQ(re), side))
    return out


# ---------------------------------------------------------------------------
# evaluation and output


def evaluate(kind: str, n: int, m: int, pt: EvalPoint, rep: Any = RepId.AUTO, mode: PrecisionMode | None = None) -> EvalReport:
    """Dispatch one evaluation by quantity name (``p``, ``q``, ``dnu``, ``dmu``)."""
    idx = as_index((n, m))
    if kind == "p":
        return legendre_p(idx, pt, mode)
    if kind == "dnu":
        return dnu_p(idx, pt, rep, mode)
    if kind == "dmu":
        return dmu_p(idx, pt, rep, mode)
    if kind == "q":
        return q(idx, pt, rep, mode)
    raise UsageError(f"unknown kind {kind!r}")


def _digits(precision: PrecisionMode) -> int:
    return int(precision.digits) if isinstance(precision, Big) else 17


def _num(x: Any, digits: int) -> str:
    if digits <= 17:
        return repr(float(x))
    return mpmath.nstr(x, digits, strip_zeros=False, min_fixed=-1, max_fixed=1)


def _parts(value: Any) -> tuple[Any, Any]:
    if isinstance(value, complex):
        return value.real, value.imag
    return mpmath.re(value), mpmath.im(value)


def _point_fields(pt: EvalPoint) -> dict[str, Any]:
    if isinstance(pt, OnCut):
        return {"x": float(pt.x)}
    zc = complex(pt.z)
    return {"re": zc.real, "im": zc.imag}


def report_record(kind: str, n: int, m: int, pt: EvalPoint, rep: EvalReport) -> dict[str, Any]:
    digits = _digits(rep.precision)
    re, im = _parts(rep.value)
    as_num = (lambda v: float(v)) if digits <= 17 else (lambda v: _num(v, digits))
    return {
        "kind": kind,
        "n": n,
        "m": m,
        "point": _point_fields(pt),
        "rep": str(rep.rep),
        "value": {"re": as_num(re), "im": as_num(im)},
        "cond": rep.cond,
        "precision": str(rep.precision),
    }


def format_text(rec: dict[str, Any], value: Any) -> str:
    digits = 17 if rec["precision"] == "double" else int(rec["precision"].split(":")[1])
    re, im = _parts(value)
    text = _num(re, digits)
    if im != 0:
        text += (" + " if im > 0 else " - ") + _num(abs(im), digits) + "i"
    return f"{text}\trep={rec['rep']}\tcond={rec['cond']:.3g}\tprecision={rec['precision']}"


def csv_row(rec: dict[str, Any]) -> list[Any]:
    pt = rec["point"]
    return [
        rec["kind"], rec["n"], rec["m"], pt.get("re", ""), pt.get("im", ""), pt.get("x", ""),
        rec["rep"], rec["value"]["re"], rec["value"]["im"], f"{rec['cond']:.6g}", rec["precision"],
    ]


def emit(records: Sequence[tuple[dict[str, Any], Any]], fmt: str, out: TextIO) -> None:
    if fmt == "json":
        for rec, _ in records:
            out.write(json.dumps(rec) + "\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec, _ in records:
            writer.writerow(csv_row(rec))
    else:
        for rec, value in records:
            if len(records) > 1:
                out.write(f"{rec['kind']} n={rec['n']} m={rec['m']} {rec['point']}\t")
            out.write(format_text(rec, value) + "\n")


def _run_many(kind: str, jobs: Iterable[tuple[int, int, EvalPoint]], rep: str, mode: PrecisionMode):
    out = []
    for n, m, pt in jobs:
        report = evaluate(kind, n, m, pt, rep, mode)
        out.append((report_record(kind, n, m, pt, report), report.value))
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_eval(args: argparse.Namespace, out: TextIO) -> int:
    if (args.z is None) == (args.x is None):
        raise UsageError("give exactly one of --z or --x")
    pt = parse_z(args.z, args.side) if args.z is not None else OnCut(_fraction(args.x))
    emit(_run_many(args.kind, [(args.n, args.m, pt)], args.rep, args.precision), args.format, out)
    return 0


def cmd_check(args: argparse.Namespace, out: TextIO) -> int:
    grid = [*STANDARD_GRID, *CUT_POINTS] if args.grid == "default" else read_points(args.grid)
    results = run_checks(args.max_n, grid, args.tol, args.oracle)
    if args.format == "json":
        for r in results:
            out.write(json.dumps({
                "check": r.name, "max_residual": r.residual, "tol": r.tol,
                "passed": r.passed, "count": r.count, "worst": r.worst,
            }) + "\n")
    else:
        out.write(f"{'check':<15} {'max residual':>13} {'tol':>9}  {'status':<6} {'count':>6}  worst\n")
        for r in results:
            status = "pass" if r.passed else "FAIL"
            out.write(f"{r.name:<15} {r.residual:>13.3e} {r.tol:>9.1e}  {status:<6} {r.count:>6}  {r.worst}\n")
            for note in r.notes[:3]:
                out.write(f"    note: {note}\n")
        passed = sum(r.passed for r in results)
        out.write(f"{passed}/{len(results)} check classes passed\n")
    return 0 if all(r.passed for r in results) else 1


def cmd_table(args: argparse.Namespace, out: TextIO) -> int:
    points = read_points(args.z_list, args.side)
    jobs = [
        (n, m, pt)
        for n in parse_range(args.n)
        for m in parse_range(args.m, n)
        if 0 <= m <= n
        for pt in points
    ]
    emit(_run_many(args.kind, jobs, args.rep, args.precision), args.format, out)
    return 0


def cmd_sweep(args: argparse.Namespace, out: TextIO) -> int:
    jobs = [(args.n, args.m, pt) for pt in parse_z_grid(args.z_grid, args.side)]
    emit(_run_many(args.kind, jobs, args.rep, args.precision), args.format, out)
    return 0


def _precision(text: str) -> PrecisionMode:
    try:
        return parse_precision(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="legendre-pd",
        description="Parameter derivatives of associated Legendre functions at integer degree and order.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, fmt_default: str) -> None:
        p.add_argument("--rep", default="auto", help="representation id such as E3.7 or Q4.5, or auto")
        p.add_argument("--precision", type=_precision, default="double", help="double or big:D (D >= 30)")
        p.add_argument("--format", choices=("text", "json", "csv"), default=fmt_default)
        p.add_argument("--side", choices=("upper", "lower"), default="upper",
                       help="half-plane a real z > 1 is approached from")

    p = sub.add_parser("eval", help="evaluate one quantity at one point")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--z", help="off-cut point RE or RE,IM")
    p.add_argument("--x", help="on-cut point, -1 < x < 1")
    common(p, "text")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", help="run the invariant matrix")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--grid", default="default", help="'default' or a grid file")
    p.add_argument("--tol", type=float, default=1e-9,
                   help="tolerance for the Double agreement and identity classes")
    p.add_argument("--oracle", action="store_true", help="add finite-difference and eps-limit checks")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("table", help="golden-value table over degrees, orders and points")
    p.add_argument("--kind", choices=KINDS, default="q")
    p.add_argument("--n", default="0:5", help="degree K or range A:B")
    p.add_argument("--m", default="0:n", help="order K or range A:B; 'n' means the degree")
    p.add_argument("--z-list", required=True, help="grid file with RE[,IM] or x=VALUE lines")
    common(p, "csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("sweep", help="evaluate along a line of points, with cond")
    p.add_argument("--kind", choices=KINDS, default="dnu")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--z-grid", required=True, help="RE0:RE1:STEPS[,IM]")
    common(p, "csv")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if hasattr(args, "side"):
        args.side = 1 if args.side == "upper" else -1
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except LegendreError as exc:
        # unknown or inapplicable representation
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run(argv: Sequence[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
