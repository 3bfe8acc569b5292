"""Command line entry point: ``georecords [command] --p 1/2 --n 8 --r 2 ...``.

Exit codes: 0 success, 1 an analytic-vs-oracle residual exceeded its tail
bound, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .model import Mode, ModelParams
from .numeric import exact
from .report import PATHS, QueryConfig, emit, run_query

COMMANDS = {
    "exact": ("oracle",),
    "analytic": ("analytic",),
    "asym": ("asymptotic",),
    "simulate": ("mc",),
    "compare": ("oracle", "analytic", "asymptotic"),
    "table": ("analytic", "asymptotic"),
}


def parse_grid(spec: str) -> list[int]:
    """``lo:hi:x2`` (geometric) or ``lo:hi:+step`` (arithmetic), inclusive of hi."""
    try:
        lo_s, hi_s, step_s = spec.split(":")
        lo, hi = int(lo_s), int(hi_s)
        if step_s.startswith("x"):
            factor = int(step_s[1:])
            if factor < 2:
                raise ValueError
            nxt = lambda n: n * factor  # noqa: E731
        elif step_s.startswith("+"):
            step = int(step_s[1:])
            if step < 1:
                raise ValueError
            nxt = lambda n: n + step  # noqa: E731
        else:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {spec!r}; expected lo:hi:x2 or lo:hi:+step") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad grid bounds in {spec!r}")
    out = []
    n = lo
    while n <= hi:
        out.append(n)
        n = nxt(n)
    return out


def _rational(s: str):
    try:
        return exact(s)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="georecords",
        description="Left-to-right maxima of words of i.i.d. geometric letters.",
    )
    ap.add_argument("command", choices=sorted(COMMANDS), help="what to compute (default: compare)")
    ap.add_argument("--p", required=True, type=_rational, help="success probability as a/b or an exact decimal")
    ap.add_argument("--n", type=int, help="word length")
    ap.add_argument("--grid", type=parse_grid, help="n grid, lo:hi:x2 or lo:hi:+step")
    ap.add_argument("--r", type=int, default=1, help="record index")
    ap.add_argument("--mode", choices=["strict", "weak", "both"], default="strict")
    ap.add_argument("--paths", help=f"comma separated subset of {','.join(PATHS)}")
    ap.add_argument("--eps", type=_rational, default="1/1000000000000", help="oracle truncation bound")
    ap.add_argument("--trials", type=int, default=100_000, help="Monte Carlo trials")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--format", choices=["csv", "json"], default="csv")
    ap.add_argument("--out", default="-", help="output path (default: stdout)")
    ap.add_argument("--uncorrected-f2", action="store_true",
                    help="diagnostics: use the (k - r) position coefficient")
    ap.add_argument("--no-weak-shift", action="store_true",
                    help="diagnostics: report the weak value formula without the +1 shift")
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in COMMANDS and argv[0] not in ("-h", "--help"):
        argv.insert(0, "compare")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.grid is None and args.n is None:
        parser.print_usage(sys.stderr)
        print("georecords: error: one of --n or --grid is required", file=sys.stderr)
        return 2
    if args.command == "table" and args.grid is None:
        print("georecords: error: table needs --grid", file=sys.stderr)
        return 2
    ns = args.grid if args.grid is not None else [args.n]
    if args.n is not None and args.grid is not None:
        print("georecords: error: give either --n or --grid, not both", file=sys.stderr)
        return 2
    paths = COMMANDS[args.command]
    if args.paths:
        paths = tuple(s.strip() for s in args.paths.split(",") if s.strip())
    if args.command == "compare" and not args.paths and "--trials" in argv:
        paths = paths + ("mc",)
    modes = [Mode.STRICT, Mode.WEAK] if args.mode == "both" else [Mode.parse(args.mode)]

    try:
        cfg = QueryConfig(
            p=ModelParams(args.p), ns=ns, r=args.r, modes=modes, paths=frozenset(paths),
            eps=args.eps, trials=args.trials, seed=args.seed,
            weak_shift=not args.no_weak_shift, corrected_f2=not args.uncorrected_f2,
        )
        report = run_query(cfg)
    except ValueError as exc:
        print(f"georecords: error: {exc}", file=sys.stderr)
        return 2
    try:
        emit(report, args.format, args.out)
    except OSError as exc:
        print(f"georecords: error: cannot write output: {exc}", file=sys.stderr)
        return 2
    if report.failures:
        print(f"georecords: invariant failure: {report.failures[0]}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
