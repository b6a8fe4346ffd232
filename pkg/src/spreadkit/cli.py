"""Command-line front end: ``spreadkit bounds|construct|verify|analyze|search``."""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import bounds as bnd
from .constructions import lifted_mrd, multi_component, spread
from .errors import SpreadkitError
from .search import max_partial_spread
from .spreadfile import read_spread_file, write_spread_file
from .verification import (
    compute_holes,
    hyperplane_profiles,
    hyperplane_spectrum,
    partition_type,
    solve_standard_equations,
    verify_spread,
)

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_int_list(text: str) -> list[int]:
    """Parse ``"4"``, ``"8..13"`` or comma-separated mixtures like ``"2,3,5..7"``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                a, b = int(lo), int(hi)
                if b < a:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(a, b + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"cannot parse integer list {text!r}") from None
    return out


def worker_cap() -> int:
    """Worker cap from SPREADKIT_THREADS; all work currently runs on one worker."""
    raw = os.environ.get("SPREADKIT_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"SPREADKIT_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"SPREADKIT_THREADS must be a positive integer, got {raw!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spreadkit",
        description="Partial spreads and constant-dimension codes over finite fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="bounds table for A_q(n,2k;k)")
    p.add_argument("--q", required=True, help="field sizes, e.g. 2 or 2,3")
    p.add_argument("--k", required=True, help="subspace dimensions, e.g. 4 or 3..5")
    p.add_argument("--n", required=True, help="ambient dimensions, e.g. 8..13")
    p.add_argument("--format", choices=["text", "csv", "json", "jsonl"], default="text")

    p = sub.add_parser("construct", help="build a code, verify it and write a spread file")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=["multi-component", "lifted-mrd", "spread"], required=True)
    p.add_argument("--d", type=int, help="subspace distance for lifted-mrd (default 2k)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="check that a spread file holds a partial spread")
    p.add_argument("file")
    p.add_argument("--holes", action="store_true", help="list the holes")
    p.add_argument("--spectrum", action="store_true", help="print the hyperplane spectrum")
    p.add_argument("--strict", action="store_true", help="reject bases not stored in RREF")

    p = sub.add_parser("analyze", help="hyperplane analyses of a partial spread")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--standard-equations", action="store_true")
    g.add_argument("--partition-type", action="store_true")
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("search", help="exhaustive search for a maximum partial spread")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--time-limit", type=float, default=None, metavar="S")
    p.add_argument("--no-symmetry", action="store_true", help="do not fix the first subspace")
    p.add_argument("--out")
    return parser


def cmd_bounds(args, out) -> int:
    records = bnd.bounds_table(parse_int_list(args.q), parse_int_list(args.k), parse_int_list(args.n))
    out.write(bnd.render_records(records, args.format))
    return EXIT_OK


def cmd_construct(args, out) -> int:
    q, n, k = args.q, args.n, args.k
    if args.method == "multi-component":
        code = multi_component(q, n, k)
    elif args.method == "spread":
        code = spread(q, n, k)
    else:
        code = lifted_mrd(q, n, k, args.d if args.d is not None else 2 * k)
    report = verify_spread(code)
    write_spread_file(args.out, code)
    out.write(f"method: {args.method}\n")
    out.write(f"{report.summary()}\n")
    out.write(f"written: {args.out}\n")
    if args.method == "lifted-mrd" and args.d is not None and args.d < 2 * k:
        out.write(f"note: d={args.d} < 2k, so the code is not meant to be a partial spread\n")
        return EXIT_OK
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_verify(args, out) -> int:
    code = read_spread_file(args.file, strict=args.strict)
    report = verify_spread(code)
    out.write(f"q={code.q} n={code.n} k={code.k}\n")
    out.write(f"{report.summary()}\n")
    if not report.valid:
        return EXIT_INVALID
    if args.holes:
        holes = compute_holes(code)
        out.write(f"holes ({len(holes)}):\n")
        for h in holes:
            out.write("  " + " ".join(map(str, h)) + "\n")
    if args.spectrum:
        _write_spectrum(hyperplane_spectrum(code), out)
    return EXIT_OK


def _write_spectrum(spec, out) -> None:
    out.write("hyperplane spectrum (section type: hyperplanes):\n")
    for ptype, count in spec.counts.items():
        out.write(f"  {ptype}: {count}\n")
    out.write("incidence identities (observed = predicted):\n")
    for name, (a, b) in spec.identities().items():
        mark = "ok" if a == b else "MISMATCH"
        out.write(f"  {name}: {a} = {b} {mark}\n")


def cmd_analyze(args, out) -> int:
    code = read_spread_file(args.file, strict=args.strict)
    report = verify_spread(code)
    if not report.valid:
        out.write(f"{report.summary()}\n")
        return EXIT_INVALID
    if args.partition_type:
        out.write(f"type: {partition_type(code, True)}\n")
        out.write(f"type without holes: {partition_type(code, False)}\n")
        _write_spectrum(hyperplane_spectrum(code), out)
        return EXIT_OK

    q, n, k, m = code.q, code.n, code.k, len(code)
    profiles = hyperplane_profiles(n, k, q, m)
    out.write(f"standard equations for q={q} n={n} k={k} size={m}\n")
    out.write("profiles (i codewords, L holes): " + ", ".join(f"({p.i},{p.holes})" for p in profiles) + "\n")
    try:
        res = solve_standard_equations(n, k, q, m, profiles, span_constraint=True, max_enumeration=10**6)
    except SpreadkitError as exc:
        out.write(f"full enumeration skipped: {exc}\n")
        res = solve_standard_equations(n, k, q, m, profiles, enumerate_spectra=False)
    for (row, rhs) in res.equations:
        lhs = " + ".join(f"{c}*a_{p.i}" for c, p in zip(row, res.profiles) if c)
        out.write(f"  {lhs} = {rhs}\n")
    out.write("general solution:\n")
    for line in res.describe():
        out.write(f"  {line}\n")
    if res.spectra:
        out.write(f"nonnegative integer spectra: {len(res.spectra)}\n")
    if res.constrained_spectra is not None:
        note = "" if res.span_constraint_validated else " (span constraint unvalidated for q != 2)"
        out.write(f"spectra under the hole-span constraint{note}:\n")
        for s in res.constrained_spectra:
            out.write("  (" + ",".join(map(str, s)) + ")\n")
    observed = hyperplane_spectrum(code).i_counts()
    known = {p.i for p in res.profiles}
    vec = tuple(observed.get(p.i, 0) for p in res.profiles)
    stray = sorted(set(observed) - known)
    out.write("observed spectrum: (" + ",".join(map(str, vec)) + ")")
    out.write(f" {'solves' if not stray and res.satisfies(vec) else 'does not solve'} the equations\n")
    return EXIT_OK


def cmd_search(args, out) -> int:
    res = max_partial_spread(args.q, args.n, args.k, time_limit=args.time_limit, symmetry=not args.no_symmetry)
    status = "proved" if res.proved_optimal else "not proved"
    out.write(f"maximum = {res.best_size} ({status})\n")
    out.write(f"nodes = {res.nodes_explored}, elapsed = {res.elapsed:.2f}s\n")
    if args.out:
        write_spread_file(args.out, res.witness, {"proved_optimal": res.proved_optimal})
        out.write(f"written: {args.out}\n")
    return EXIT_OK


COMMANDS = {
    "bounds": cmd_bounds,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "analyze": cmd_analyze,
    "search": cmd_search,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        worker_cap()
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"spreadkit: error: {exc}\n")
        return EXIT_USAGE
    except (SpreadkitError, OSError) as exc:
        err.write(f"spreadkit: error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
