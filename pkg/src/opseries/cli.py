"""Command-line front end: ``opseries eval | table | check``.

Exit codes: 0 success, 1 an evaluation did not converge (or a check
failed), 2 invalid flags or arguments outside a function's domain.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import partial

from . import checks, oracle
from .airy import VARIANTS, airy4, airy_ai
from .numerics import DomainError, TruncationPolicy
from .opcalc import FresnelSymbol, fresnel_symbol
from .pearcey import pearcey_double_sum, pearcey_hermite

FUNCTIONS = ("ai", "ai4", "pearcey-halfline", "csym")
METHODS = ("series", "hermite", "double-sum", "quadrature")
_ALLOWED = {
    "ai": ("series", "quadrature"),
    "ai4": ("series", "quadrature"),
    "csym": ("series", "quadrature"),
    "pearcey-halfline": ("series", "double-sum", "hermite", "quadrature"),
}
DEFAULT_TOL = 1e-12
DEFAULT_MAX_TERMS = 500
MAX_TERMS_ENV = "OPSERIES_MAX_TERMS"
CSV_HEADER = "function,x,y,re,im,abs_err_est,terms,converged,method"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class OutputRecord:
    function: str
    x: float
    y: float
    re: float
    im: float
    abs_err_est: float
    terms: int
    converged: bool
    method: str

    def csv_row(self) -> str:
        nums = ",".join(f"{v:.16e}" for v in (self.x, self.y, self.re, self.im, self.abs_err_est))
        return f"{self.function},{nums},{self.terms},{'true' if self.converged else 'false'},{self.method}"

    @classmethod
    def from_csv_row(cls, line: str) -> OutputRecord:
        f, x, y, re, im, err, terms, conv, method = line.strip().split(",")
        return cls(f, float(x), float(y), float(re), float(im), float(err), int(terms), conv == "true", method)


@dataclass(frozen=True)
class Request:
    function: str
    method: str
    variant: str
    tol: float
    max_terms: int


def evaluate(req: Request, x: float, y: float = 0.0) -> OutputRecord:
    """One record for ``req`` at (x, y); for csym x is alpha and y is beta."""
    policy = TruncationPolicy(rel_tol=req.tol, max_terms=req.max_terms)
    f, method = req.function, req.method
    if f == "pearcey-halfline" and method == "series":
        method = "double-sum"
    if method == "quadrature":
        if f == "csym":
            q = oracle.fresnel_quad(x, y)
        else:
            q = oracle.oracle_value({"ai": "ai", "ai4": "ai4", "pearcey-halfline": "pearcey"}[f], x, y)
        value, err, terms, converged = q.value, q.error, q.panels, True
    elif f == "csym":
        value, err, terms, converged = fresnel_symbol(FresnelSymbol(x, y)), 0.0, 1, True
    else:
        if f == "ai":
            res = airy_ai(x, policy)
        elif f == "ai4":
            res = airy4(x, req.variant, policy)
        elif method == "hermite":
            res = pearcey_hermite(x, y, policy)
        else:
            res = pearcey_double_sum(x, y, policy)
        value, err, terms, converged = res.value, res.abs_err_est, res.terms_used, res.converged
    if f in ("ai", "ai4"):
        y = 0.0
    return OutputRecord(f, x, y, value.real, value.imag, err, terms, converged, method)


def _evaluate_point(req: Request, point: tuple[float, float]) -> OutputRecord:
    return evaluate(req, *point)


def grid(lo: float, hi: float, steps: int) -> list[float]:
    if steps < 1:
        raise UsageError("grid steps must be >= 1")
    if steps == 1:
        return [lo]
    return [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]


def write_records(records: list[OutputRecord], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        json.dump([asdict(r) for r in records], out, indent=2)
        out.write("\n")
        return
    out.write(CSV_HEADER + "\n")
    for r in records:
        out.write(r.csv_row() + "\n")


def _default_max_terms() -> int:
    raw = os.environ.get(MAX_TERMS_ENV)
    if raw is None:
        return DEFAULT_MAX_TERMS
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{MAX_TERMS_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{MAX_TERMS_ENV} must be >= 1, got {value}")
    return value


def _request(args) -> Request:
    if args.method not in _ALLOWED[args.function]:
        raise UsageError(f"method {args.method!r} is not available for {args.function!r}")
    max_terms = args.max_terms if args.max_terms is not None else _default_max_terms()
    if max_terms < 1:
        raise UsageError("--max-terms must be >= 1")
    if not args.tol > 0:
        raise UsageError("--tol must be > 0")
    return Request(args.function, args.method, args.variant, args.tol, max_terms)


def _emit(records: list[OutputRecord], fmt: str) -> int:
    write_records(records, fmt)
    return 0 if all(r.converged for r in records) else 1


def cmd_eval(args) -> int:
    req = _request(args)
    if args.function == "csym":
        if args.alpha is None:
            raise UsageError("csym needs --alpha (and optionally --beta)")
        point = (args.alpha, args.beta)
    else:
        if args.x is None:
            raise UsageError("--x is required")
        point = (args.x, args.y)
    return _emit([_evaluate_point(req, point)], args.format)


def cmd_table(args) -> int:
    req = _request(args)
    xs = grid(args.x_min, args.x_max, args.x_steps)
    if args.y_min is not None or args.y_max is not None or args.y_steps is not None:
        if args.function in ("ai", "ai4"):
            raise UsageError(f"{args.function} takes no y grid")
        if None in (args.y_min, args.y_max, args.y_steps):
            raise UsageError("--y-min, --y-max and --y-steps go together")
        ys = grid(args.y_min, args.y_max, args.y_steps)
    else:
        ys = [args.beta if args.function == "csym" else args.y]
    points = [(x, y) for x in xs for y in ys]
    work = partial(_evaluate_point, req)
    if args.workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            records = list(pool.map(work, points, chunksize=max(1, len(points) // (4 * args.workers))))
    else:
        records = [work(p) for p in points]
    return _emit(records, args.format)


def cmd_check(args) -> int:
    results = checks.run_suite(args.suite, args.tol, args.fixtures)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def _add_eval_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--function", required=True, choices=FUNCTIONS)
    p.add_argument("--method", default="series", choices=METHODS)
    p.add_argument("--variant", default="corrected", choices=VARIANTS)
    p.add_argument("--alpha", type=float, help="csym: phase exponent")
    p.add_argument("--beta", type=float, default=0.0, help="csym: monomial power")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="series relative tolerance")
    p.add_argument("--max-terms", type=int, default=None, help=f"term cap (default ${MAX_TERMS_ENV} or 500)")
    p.add_argument("--format", default="csv", choices=("csv", "json"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opseries", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one point")
    _add_eval_flags(p)
    p.add_argument("--x", type=float)
    p.add_argument("--y", type=float, default=0.0)
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("table", help="evaluate a uniform grid")
    _add_eval_flags(p)
    p.add_argument("--x-min", type=float, required=True)
    p.add_argument("--x-max", type=float, required=True)
    p.add_argument("--x-steps", type=int, required=True)
    p.add_argument("--y-min", type=float)
    p.add_argument("--y-max", type=float)
    p.add_argument("--y-steps", type=int)
    p.add_argument("--y", type=float, default=0.0, help="fixed y when no y grid is given")
    p.add_argument("--workers", type=int, default=1, help="worker processes; output order is fixed")
    p.set_defaults(run=cmd_table)

    p = sub.add_parser("check", help="run an invariant suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--tol", type=float, default=None, help="override every check threshold")
    p.add_argument("--fixtures", default=None, help="pinned oracle values file")
    p.set_defaults(run=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "check" and args.suite not in checks.SUITE_NAMES:
        print(f"opseries: unknown suite {args.suite!r}; choose from {', '.join(checks.SUITE_NAMES)}", file=sys.stderr)
        return 2
    try:
        return args.run(args)
    except (UsageError, DomainError) as exc:
        print(f"opseries: {exc}", file=sys.stderr)
        return 2
    except oracle.NonConvergenceError as exc:
        print(f"opseries: quadrature did not converge: {exc}", file=sys.stderr)
        return 1
    except OverflowError as exc:
        print(f"opseries: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
