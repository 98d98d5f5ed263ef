"""Command line front end.

Every subcommand echoes its configuration to stderr (suppressible with
``--no-header``) and writes machine-stable output to stdout, so repeated
invocations are byte-identical.  Exit codes: 0 success, 2 usage error,
3 incomplete search, 4 domain error, 5 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .closed_forms import index_bounds
from .errors import HypsysError, InvalidSizeError, UnsupportedSizeError
from .families import (
    loop_polynomial_even,
    loop_polynomial_odd,
    minimal_path_polynomial,
    systole_polynomial,
)
from .inequalities import verify_inequalities
from .matrices import RauzyPath, charpoly_exact, is_primitive, path_matrix, rome_charpoly
from .paths import central_loop_start
from .permutations import build_diagram, parse_word
from .polynomials import IntPolynomial, perron_root
from .search import (
    SearchConfig,
    SearchOutcome,
    second_length,
    spectrum,
    systole,
    census_table,
)

EXIT_OK = 0
EXIT_INCOMPLETE = 3
EXIT_DOMAIN = 4
EXIT_INTERNAL = 5


def _parse_bound(text: str) -> Fraction:
    return Fraction(text)


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--precision",
        type=int,
        default=int(os.environ.get("HYPSYS_PRECISION", "100")),
        help="bits of output enclosure width (default 100, env HYPSYS_PRECISION)",
    )
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--max-depth", type=int, default=None)
    parser.add_argument("--time-budget", type=float, default=None, metavar="SECONDS")
    parser.add_argument("--no-header", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypsys",
        description="Exact dilatation spectra of hyperelliptic Rauzy diagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagram", help="build a Rauzy diagram and print statistics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stats", action="store_true")
    _add_common(p)

    p = sub.add_parser("systole", help="least dilatation, census-verified")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("spectrum", help="census of dilatations below a bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=_parse_bound, default=Fraction(2))
    p.add_argument("--format", choices=("json", "csv"), default="json")
    _add_common(p)

    p = sub.add_parser("second", help="second least dilatation (even n >= 18)")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("table", help="distinct-dilatation counts per genus")
    p.add_argument("--g-min", type=int, required=True)
    p.add_argument("--g-max", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_common(p)

    p = sub.add_parser("charpoly", help="characteristic polynomial of a path matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--start-k", type=int, required=True)
    p.add_argument("--word", type=str, required=True)
    _add_common(p)

    p = sub.add_parser("families", help="closed-form polynomial families")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--l", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument(
        "--suite", choices=("lemmas", "families", "zrl", "rome"), required=True
    )
    p.add_argument("--n-max", type=int, default=14)
    _add_common(p)

    p = sub.add_parser("zrl", help="renormalize a symmetric path")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--start-k", type=int, required=True)
    p.add_argument("--word", type=str, required=True)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--max-iterations", type=int, default=10_000)
    _add_common(p)

    return parser


def _header(args, argv):
    if getattr(args, "no_header", False):
        return
    stamp = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    print(
        f"# hypsys {__version__} {stamp} cmd: {' '.join(argv)}",
        file=sys.stderr,
    )


def _entry_json(entry) -> dict:
    root = entry.dilatation.refined(Fraction(1, 10**16))
    decimal = root.decimal(14)
    log_root = f"{math.log(float(Fraction(decimal))):0.12f}"
    return {
        "n": entry.n,
        "genus": entry.genus,
        "stratum": entry.stratum,
        "coefficients": list(entry.defining.coeffs),
        "root": decimal,
        "root_lo": str(root.lo),
        "root_hi": str(root.hi),
        "representative": {"k": entry.representative_k, "word": entry.representative_word},
        "matrix_digest": entry.matrix_digest,
        "realizations": entry.realizations,
        "log_root": log_root,
    }


def _print_spectrum(outcome: SearchOutcome, fmt: str):
    rows = [_entry_json(e) for e in outcome.entries]
    if fmt == "json":
        print(json.dumps(rows, indent=2, sort_keys=True))
        return
    columns = [
        "n",
        "genus",
        "stratum",
        "coefficients",
        "root",
        "root_lo",
        "root_hi",
        "representative_k",
        "representative_word",
        "matrix_digest",
        "realizations",
        "log_root",
    ]
    print(",".join(columns))
    for row in rows:
        print(
            ",".join(
                [
                    str(row["n"]),
                    str(row["genus"]),
                    row["stratum"],
                    " ".join(str(c) for c in row["coefficients"]),
                    row["root"],
                    row["root_lo"],
                    row["root_hi"],
                    str(row["representative"]["k"]),
                    row["representative"]["word"],
                    row["matrix_digest"],
                    str(row["realizations"]),
                    row["log_root"],
                ]
            )
        )


def _print_extreme(result, label: str):
    entry = result.entry if hasattr(result, "entry") else result
    closed = result.closed_form
    root = entry.dilatation.refined(Fraction(1, 10**16))
    decimal = root.decimal(14)
    print(f"polynomial {closed.to_text()}")
    print(f"display {closed.pretty()}")
    print(f"root {decimal}")
    print(f"log_root {math.log(float(Fraction(decimal))):0.12f}")
    print(
        f"representative k={entry.representative_k} "
        f"word={entry.representative_word}"
    )
    print(f"dedup_classes_at_extremum 1 realizations={entry.realizations}")
    print(f"{label} verified: census minimum matches the closed form")


def _run(args, argv) -> int:
    width = Fraction(1, 2 ** max(args.precision, 8))

    if args.command == "diagram":
        if args.n > 22:
            raise UnsupportedSizeError("diagram construction is capped at n = 22")
        diagram = build_diagram(args.n)
        print(f"n {args.n}")
        print(f"vertices {diagram.size}")
        print(f"edges {diagram.edge_count}")
        if args.stats:
            print(f"strongly_connected {'yes' if diagram.is_strongly_connected() else 'no'}")
            central_loop = 1 + sum(
                1
                for blocks, side in zip(diagram.blocks, diagram.sides)
                if len(blocks) == 1 and side == "t"
            )
            print(f"central_loop_vertices {central_loop}")
        return EXIT_OK

    if args.command == "systole":
        result = systole(args.n, threads=args.threads, time_budget=args.time_budget)
        _print_extreme(result, "systole")
        return EXIT_OK

    if args.command == "spectrum":
        cfg = SearchConfig(
            args.n,
            bound=args.bound,
            max_depth=args.max_depth,
            width=min(width, Fraction(1, 10**30)),
            threads=args.threads,
            time_budget=args.time_budget,
        )
        outcome = spectrum(cfg)
        for note in outcome.notes:
            print(f"# note: {note}", file=sys.stderr)
        _print_spectrum(outcome, args.format)
        return EXIT_INCOMPLETE if outcome.incomplete else EXIT_OK

    if args.command == "second":
        result = second_length(args.n, threads=args.threads, time_budget=args.time_budget)
        _print_extreme(result, "second minimum")
        return EXIT_OK

    if args.command == "table":
        table = census_table(
            args.g_min, args.g_max, threads=args.threads, time_budget=args.time_budget
        )
        if args.format == "json":
            rows = [
                {"genus": r.genus, "n": r.n, "count": r.count}
                for r in table.rows
            ]
            print(json.dumps(rows, indent=2, sort_keys=True))
        else:
            print("genus n count")
            for r in table.rows:
                count = "incomplete" if r.count is None else str(r.count)
                print(f"{r.genus} {r.n} {count}")
        return EXIT_INCOMPLETE if table.incomplete else EXIT_OK

    if args.command == "charpoly":
        kmax = args.n - 2
        if not 1 <= args.start_k <= kmax:
            raise InvalidSizeError(f"start k must be in 1..{kmax}")
        start = central_loop_start(args.n, args.start_k)
        path = RauzyPath(start, parse_word(args.word))
        matrix = path_matrix(path)
        poly = charpoly_exact(matrix)
        print(f"polynomial {poly.to_text()}")
        print(f"display {poly.pretty()}")
        shifted = poly * IntPolynomial((1, 1))
        print(f"times_x_plus_1 {shifted.pretty()}")
        print(f"determinant {matrix.determinant()}")
        print(f"primitive {'yes' if is_primitive(matrix) else 'no'}")
        return EXIT_OK

    if args.command == "families":
        kmax, lmax = index_bounds(args.n)
        if args.k is not None:
            poly = minimal_path_polynomial(args.n, args.k)
            print(f"polynomial {poly.to_text()}")
            print(f"display {poly.pretty()}")
        elif args.l is not None:
            if args.n % 2 == 0:
                poly = loop_polynomial_even(args.n, args.l)
            elif args.n % 4 == 3:
                poly = loop_polynomial_odd(args.n, args.l)
            else:
                raise InvalidSizeError(
                    "loop polynomials exist for even n or n = 3 mod 4"
                )
            print(f"polynomial {poly.to_text()}")
            print(f"display {poly.pretty()}")
        else:
            poly = systole_polynomial(args.n)
            print(f"k_max {kmax}")
            print(f"l_max {lmax}")
            print(f"systole_polynomial {poly.to_text()}")
            print(f"display {poly.pretty()}")
        root = perron_root(poly, width=min(width, Fraction(1, 10**30)))
        print(f"root {root.refined(Fraction(1, 10**16)).decimal(14)}")
        return EXIT_OK

    if args.command == "verify":
        return _run_verify(args)

    if args.command == "zrl":
        from .suspension import zrl_normalize

        kmax = args.n - 2
        if not 1 <= args.start_k <= kmax:
            raise InvalidSizeError(f"start k must be in 1..{kmax}")
        start = central_loop_start(args.n, args.start_k)
        path = RauzyPath(start, parse_word(args.word))
        run = zrl_normalize(path, max_iterations=args.max_iterations)
        if args.trace:
            for line in run.trace_lines():
                print(line)
        print(f"iterations {run.iterations}")
        print(f"start {run.path.start.to_text()}")
        print(f"word {run.path.word}")
        print(f"theta {run.theta.decimal(12)}")
        return EXIT_OK

    raise InvalidSizeError(f"unknown command {args.command!r}")


def _run_verify(args) -> int:
    if args.suite == "lemmas":
        report = verify_inequalities(max(args.n_max, 7))
        for line in report.lines():
            print(line)
        print(f"summary {'PASS' if report.all_passed else 'FAIL'} "
              f"({len(report.results)} checks)")
        return EXIT_OK if report.all_passed else EXIT_DOMAIN

    if args.suite == "families":
        from math import gcd

        from .paths import loop_path, minimal_path

        failures = 0
        total = 0
        shift = IntPolynomial((1, 1))
        n_max = min(args.n_max, 14)
        for n in range(4, n_max + 1):
            kmax, lmax = index_bounds(n)
            for k in range(1, kmax + 1):
                if gcd(n - 1, k) != 1:
                    continue
                total += 1
                lhs = charpoly_exact(path_matrix(minimal_path(n, k))) * shift
                ok = lhs == minimal_path_polynomial(n, k)
                failures += 0 if ok else 1
                print(f"{'PASS' if ok else 'FAIL'} base family n={n} k={k}")
            if n % 2 == 0:
                for l in range(1, lmax + 1):
                    total += 1
                    lhs = charpoly_exact(path_matrix(loop_path(n, kmax, l))) * shift
                    ok = lhs == loop_polynomial_even(n, l)
                    failures += 0 if ok else 1
                    print(f"{'PASS' if ok else 'FAIL'} even loop family n={n} l={l}")
            elif n % 4 == 3:
                for l in range(1, lmax + 1, 2):
                    total += 1
                    lhs = charpoly_exact(path_matrix(loop_path(n, kmax, l))) * shift
                    ok = lhs == loop_polynomial_odd(n, l)
                    failures += 0 if ok else 1
                    print(f"{'PASS' if ok else 'FAIL'} odd loop family n={n} l={l}")
        print(f"summary {'PASS' if failures == 0 else 'FAIL'} ({total} checks)")
        return EXIT_OK if failures == 0 else EXIT_DOMAIN

    if args.suite == "rome":
        from math import gcd

        from .closed_forms import base_matrix, loop_matrix_odd

        failures = 0
        total = 0
        for n in range(4, min(args.n_max, 12) + 1):
            kmax, _ = index_bounds(n)
            for k in range(1, kmax + 1):
                if gcd(n - 1, k) != 1:
                    continue
                total += 1
                m = base_matrix(n, k)
                ok = rome_charpoly(m, [1, n]) == charpoly_exact(m)
                failures += 0 if ok else 1
                print(f"{'PASS' if ok else 'FAIL'} rome {{1,n}} n={n} k={k}")
        for n in (7, 11):
            if n > args.n_max:
                continue
            _, lmax = index_bounds(n)
            mid = (n - 1) // 2
            for l in range(1, lmax + 1, 2):
                total += 1
                m = loop_matrix_odd(n, l)
                ok = rome_charpoly(m, [n, n - 1, mid]) == charpoly_exact(m)
                failures += 0 if ok else 1
                print(f"{'PASS' if ok else 'FAIL'} rome {{n,n-1,m}} n={n} l={l}")
        print(f"summary {'PASS' if failures == 0 else 'FAIL'} ({total} checks)")
        return EXIT_OK if failures == 0 else EXIT_DOMAIN

    if args.suite == "zrl":
        import random

        from .matrices import path_matrix as pm
        from .polynomials import Ordering, compare_roots
        from .suspension import (
            is_central_loop_start,
            sample_pure_admissible,
            zrl_coding_successors,
            zrl_normalize,
        )
        from .permutations import MoveKind

        n = min(args.n_max, 8)
        diagram = build_diagram(n)
        rng = random.Random(2024)
        failures = 0
        total = 20
        for trial in range(total):
            path = sample_pure_admissible(diagram, rng)
            theta0 = perron_root(charpoly_exact(pm(path, kind="symmetric")))
            run = zrl_normalize(path)
            theta1 = perron_root(charpoly_exact(pm(run.path, kind="symmetric")))
            ok = (
                compare_roots(theta0, theta1) is Ordering.EQUAL
                and is_central_loop_start(run.path.start)
                and run.path.moves[0] is MoveKind.RIGHT_B
            )
            cur = diagram.coordinates_of(path.start).parts
            for info in run.trace:
                if len(cur) >= 4 and info.start_coordinates not in zrl_coding_successors(cur):
                    ok = False
                cur = info.start_coordinates
            failures += 0 if ok else 1
            print(f"{'PASS' if ok else 'FAIL'} zrl trial {trial} ({len(path)} moves, "
                  f"{run.iterations} steps)")
        print(f"summary {'PASS' if failures == 0 else 'FAIL'} ({total} checks)")
        return EXIT_OK if failures == 0 else EXIT_DOMAIN

    raise InvalidSizeError(f"unknown suite {args.suite!r}")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    _header(args, argv)
    try:
        return _run(args, argv)
    except HypsysError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
