"""``cartankit`` command line: show, invert, verify, window and bench.

Exit status: 0 on success, 1 on a verification failure or a singular
matrix, 2 on invalid parameters.
"""
from __future__ import annotations

import argparse
import sys
import time
from collections import Counter
from dataclasses import dataclass

from . import catalog, grid, infinite
from .catalog import Family, FamilySpec, InvalidParams
from .closed_form import inverse_matrix
from .exact_linalg import SingularError, UpdateSingularError, invert_exact, parse_rational
from .proof_path import inverse_via_proof_path
from .render import FORMATS, render

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2
BENCH_RANK_CEILING = 2000
LITERAL_HELP = "use the literal block-display variants, which are known to be inconsistent"


@dataclass
class RunSummary:
    command: str
    specs: int
    failures: int
    wall_ms: int

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.failures == 0 else EXIT_FAIL

    def line(self) -> str:
        return f"{self.command}: {self.specs} specs, {self.failures} failures"


class _Invalid(Exception):
    pass


def _rational(text: str):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected an exact rational p/q, got {text!r}") from exc


def _spec_from_args(args) -> FamilySpec:
    family = Family.parse(args.family)
    spec = FamilySpec(family, n=args.rank if args.rank is not None else 0,
                      m=args.m if args.m is not None else 0, alpha=args.alpha)
    catalog.validate(spec)
    return spec


def _add_family_args(p: argparse.ArgumentParser, literal: bool, fmt: bool = True) -> None:
    p.add_argument("--family", required=True, help="family name, e.g. A, B, superA, E8, D21alpha")
    p.add_argument("-n", "--rank", type=int, help="rank n")
    p.add_argument("--m", type=int, help="first parameter m of the super families")
    p.add_argument("--alpha", type=_rational, help="alpha for D21alpha, as p/q")
    if literal:
        p.add_argument("--literal-blocks", action="store_true", help=LITERAL_HELP)
    if fmt:
        p.add_argument("--format", choices=FORMATS, default="pretty")


def cmd_show(args) -> int:
    spec = _spec_from_args(args)
    M = catalog.build(spec, literal_blocks=args.literal_blocks)
    sys.stdout.write(render(M, args.format, str(spec.family), spec.params()))
    return EXIT_OK


def cmd_invert(args) -> int:
    spec = _spec_from_args(args)
    if args.method == "formula":
        inv = inverse_matrix(spec)
    elif args.method == "oracle":
        try:
            inv = invert_exact(catalog.build(spec))
        except SingularError as exc:
            print(f"error: {spec.label()} is singular (rank {exc.rank})", file=sys.stderr)
            return EXIT_FAIL
    else:
        try:
            inv = inverse_via_proof_path(spec)
        except (SingularError, UpdateSingularError) as exc:
            print(f"error: update path broke down for {spec.label()}: {exc}", file=sys.stderr)
            return EXIT_FAIL
    sys.stdout.write(render(inv, args.format, str(spec.family), spec.params()))
    return EXIT_OK


def _verify_specs(args) -> list[FamilySpec]:
    if args.all or args.family is None:
        if args.family is not None:
            raise _Invalid("--all and --family are mutually exclusive")
        return grid.default_grid()
    family = Family.parse(args.family)
    specs = grid.family_grid(family, max_rank=args.max, m=args.m, n=args.rank, alpha=args.alpha)
    for s in specs:
        catalog.validate(s)
    if not specs:
        raise _Invalid("the requested grid is empty")
    return specs


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    specs = _verify_specs(args)
    jobs = grid.resolve_jobs(args.jobs)
    results = grid.run_grid(specs, literal_blocks=args.literal_blocks, jobs=jobs)
    passed: Counter = Counter()
    total: Counter = Counter()
    order: list[str] = []
    for r in results:
        key = str(r.spec.family)
        if key not in total:
            order.append(key)
        total[key] += 1
        passed[key] += r.ok
        if not r.ok:
            print(f"FAIL {r.spec.label()}: {r.message}")
    for key in order:
        print(f"{key}: {passed[key]}/{total[key]} passed")
    failures = sum(not r.ok for r in results)
    summary = RunSummary("verify", len(results), failures, int((time.perf_counter() - t0) * 1000))
    print(summary.line())
    # timing goes to stderr so stdout stays identical across runs
    print(f"wall time: {summary.wall_ms} ms", file=sys.stderr)
    return summary.exit_code


def _default_window(spec: infinite.InfFamilySpec) -> infinite.Window:
    lo, hi = spec.bounds()
    if lo is None and hi is None:
        return infinite.Window(-4, 4)
    if lo is None:
        return infinite.Window(hi - 7, hi)
    return infinite.Window(lo, lo + 7 + (spec.m if spec.family is infinite.InfFamily.SuperAmInf else 0))


def cmd_window(args) -> int:
    family = infinite.InfFamily.parse(args.family)
    m = args.m if args.m is not None else infinite.MIN_M.get(family, 0)
    spec = infinite.InfFamilySpec(family, m)
    if (args.lo is None) != (args.hi is None):
        raise infinite.InvalidLabel("give both --lo and --hi, or neither")
    window = _default_window(spec) if args.lo is None else infinite.Window(args.lo, args.hi)
    params = {"m": spec.m} if spec.family in infinite.MIN_M else {}
    for which in (("cartan", "inverse") if args.which == "both" else (args.which,)):
        M, labels = infinite.materialize(spec, window, which, literal_blocks=args.literal_blocks)
        if args.format == "pretty":
            print(f"{which} on labels {labels[0]}..{labels[-1]}:")
        p = dict(params, lo=labels[0], hi=labels[-1], which=which)
        sys.stdout.write(render(M, args.format, str(spec.family), p, labels=labels))
    if not args.check:
        return EXIT_OK
    report = infinite.verify_window(spec, window, literal_blocks=args.literal_blocks)
    out = sys.stdout if args.format == "pretty" else sys.stderr
    if report.passed:
        print(f"window check passed: {report.checked_pairs} pairs, both product orders", file=out)
        return EXIT_OK
    print(f"window check FAILED: {len(report.failures)} failures over {report.checked_pairs} pairs; "
          f"first at {report.first_failure.describe()}", file=out)
    return EXIT_FAIL


def _best_time(fn, repeat: int) -> tuple[int, object]:
    best, result = None, None
    for _ in range(repeat):
        t0 = time.perf_counter_ns()
        result = fn()
        dt = time.perf_counter_ns() - t0
        best = dt if best is None else min(best, dt)
    return best // 1000, result


def bench(spec: FamilySpec, repeat: int = 1) -> list[tuple[str, int]]:
    """Best-of-``repeat`` wall time in microseconds for each path, after asserting agreement."""
    M = catalog.build(spec)
    paths = [("formula", lambda: inverse_matrix(spec)),
             ("oracle", lambda: invert_exact(M)),
             ("proof", lambda: inverse_via_proof_path(spec))]
    timings, results = [], []
    for name, fn in paths:
        us, res = _best_time(fn, repeat)
        timings.append((name, us))
        results.append(res)
    if not (results[0] == results[1] == results[2]):
        raise AssertionError(f"paths disagree for {spec.label()}")
    return timings


def cmd_bench(args) -> int:
    spec = _spec_from_args(args)
    if catalog.size_of(spec) > BENCH_RANK_CEILING:
        raise InvalidParams(f"matrix size {catalog.size_of(spec)} exceeds the bench ceiling {BENCH_RANK_CEILING}")
    if args.repeat < 1:
        raise InvalidParams("--repeat must be >= 1")
    try:
        timings = bench(spec, args.repeat)
    except AssertionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print("spec,size,method,repeat,best_us")
    for name, us in timings:
        print(f"{spec.label()},{catalog.size_of(spec)},{name},{args.repeat},{us}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cartankit", description="Exact inverse Cartan matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("show", help="print a Cartan matrix")
    _add_family_args(p, literal=True)
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("invert", help="print an inverse Cartan matrix")
    _add_family_args(p, literal=False)
    p.add_argument("--method", choices=("formula", "oracle", "proof"), default="formula")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("verify", help="three-way equivalence over a grid of specs")
    p.add_argument("--family", help="restrict to one family (default: the whole grid)")
    p.add_argument("--all", action="store_true", help="run the full default grid")
    p.add_argument("--max", type=int, help="cap on the rank parameters")
    p.add_argument("--m", type=int, help="pin m")
    p.add_argument("-n", "--rank", type=int, help="pin n")
    p.add_argument("--alpha", type=_rational, help="pin alpha for D21alpha")
    p.add_argument("--literal-blocks", action="store_true", help=LITERAL_HELP)
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: $CARTANKIT_JOBS or 1)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("window", help="finite windows of the infinite families")
    p.add_argument("--family", required=True, help=", ".join(f.value for f in infinite.InfFamily))
    p.add_argument("--m", type=int)
    p.add_argument("--lo", type=int)
    p.add_argument("--hi", type=int)
    p.add_argument("--which", choices=("cartan", "inverse", "both"), default="both")
    p.add_argument("--check", action="store_true", help="verify both products against the identity")
    p.add_argument("--literal-blocks", action="store_true", help=LITERAL_HELP)
    p.add_argument("--format", choices=FORMATS, default="pretty")
    p.set_defaults(func=cmd_window)

    p = sub.add_parser("bench", help="CSV timings of formula, oracle and update path")
    _add_family_args(p, literal=False, fmt=False)
    p.add_argument("--repeat", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags and 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InvalidParams, infinite.InvalidLabel, _Invalid, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
