"""Command-line entry point: ``extpg build|count|table|verify|minor-search|normalize``."""

from __future__ import annotations

import argparse
import json
import sys

from .construct import build_epg, build_extension_rep, build_pg, epg_size_formula, square_field
from .field import FieldError, pick_omega
from .matroid import ISO_MAX_ELEMENTS, MatroidError, dumps, num_points, read_matroid, si, write_matroid
from .normalize import MINOR_MAX_ELEMENTS, find_pg_restriction, has_pg_minor, normalize_spanning_pg
from .verify import SUITES, VerifyConfig, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def d(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--seed", type=int, default=d(0), help="seed for stochastic suites (default 0)")
    parser.add_argument("--format", choices=("json", "table"), default=d("table"))
    parser.add_argument("--max-elements", type=int, default=d(None),
                        help="size cap for isomorphism and minor searches")
    parser.add_argument("--max-contract", type=int, default=d(1), help="contraction budget for minor search")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="extpg", description=__doc__)
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="write PG, EPG or extension matroids")
    b.add_argument("kind", choices=("pg", "epg", "extension"))
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--n", type=int, required=True, help="rank")
    b.add_argument("--k", type=int, default=0)
    b.add_argument("--omega", type=int, default=None, help="extension only; default is the least valid choice")
    b.add_argument("--out", default="-", help="output path, '-' for stdout")

    c = sub.add_parser("count", parents=[common], help="point count of a file or of PG^(k)(n-1,q)")
    c.add_argument("path", nargs="?")
    c.add_argument("--q", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int, default=0)

    t = sub.add_parser("table", parents=[common], help="growth-rate table for one q")
    t.add_argument("--q", type=int, required=True)
    t.add_argument("--k-max", type=int, default=2)
    t.add_argument("--n-max", type=int, default=6)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suite", choices=("all",) + tuple(sorted(SUITES)))
    v.add_argument("--trials", type=int, default=10)
    v.add_argument("--n-max", type=int, default=4)
    v.add_argument("--no-timing", action="store_true", help="drop timing fields from JSON")

    m = sub.add_parser("minor-search", parents=[common], help="search for a PG(n-1,q)-minor")
    m.add_argument("path")
    m.add_argument("--q", type=int, required=True)
    m.add_argument("--n", type=int, required=True)

    z = sub.add_parser("normalize", parents=[common], help="bring a spanning PG(n-1,q) restriction into GF(q)")
    z.add_argument("path")
    z.add_argument("--q", type=int, required=True)
    z.add_argument("--members", default=None, help="comma-separated labels of the PG; searched for if omitted")
    z.add_argument("--out", default="-")
    return parser


def _emit(args, payload: dict, table_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(table_lines))


def _write(M, path: str) -> None:
    if path == "-":
        sys.stdout.write(dumps(M))
    else:
        write_matroid(M, path)


def cmd_build(args) -> int:
    if args.kind == "pg":
        M = build_pg(args.n - 1, args.q)
    elif args.kind == "epg":
        M = build_epg(args.n - 1, args.q, args.k)
    else:
        F = square_field(args.q)
        omega = pick_omega(F, args.q) if args.omega is None else args.omega
        M = build_extension_rep(F, omega, args.n)
    _write(M, args.out)
    info = {"kind": args.kind, "q": args.q, "n": args.n, "k": args.k, "rank": M.rank,
            "points": num_points(M), "out": args.out}
    if args.out != "-":
        _emit(args, info, [f"rank {M.rank}", f"points {num_points(M)}"])
    else:
        print(f"# rank {M.rank} points {num_points(M)}", file=sys.stderr)
    return EXIT_OK


def cmd_count(args) -> int:
    if args.path:
        M = read_matroid(args.path)
        info = {"path": args.path, "rank": M.rank, "points": num_points(M), "elements": len(M)}
    else:
        if args.q is None or args.n is None:
            raise ValueError("count needs a file or --q and --n")
        info = {"q": args.q, "n": args.n, "k": args.k, "points": epg_size_formula(args.n, args.q, args.k)}
    _emit(args, info, [f"{k} {v}" for k, v in info.items()])
    return EXIT_OK


def growth_table(q: int, k_max: int, n_max: int) -> list[dict]:
    rows = []
    for n in range(1, n_max + 1):
        row = {"n": n}
        for k in range(k_max + 1):
            row[f"k={k}"] = epg_size_formula(n, q, k) if k <= n else None
        rows.append(row)
    return rows


def cmd_table(args) -> int:
    rows = growth_table(args.q, args.k_max, args.n_max)
    header = ["n"] + [f"k={k}" for k in range(args.k_max + 1)]
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join("" if row[h] is None else str(row[h]) for h in header))
    _emit(args, {"q": args.q, "rows": rows}, lines)
    return EXIT_OK


def cmd_verify(args, argv) -> int:
    cfg = VerifyConfig(seed=args.seed, max_elements=args.max_elements or ISO_MAX_ELEMENTS,
                       max_minor_elements=args.max_elements or MINOR_MAX_ELEMENTS,
                       max_contract=args.max_contract, trials=args.trials, n_max=args.n_max)
    report = run_suites([args.suite], cfg, command=list(argv))
    if args.format == "json":
        print(report.to_json(timing=not args.no_timing))
    else:
        print(report.to_table())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_minor_search(args) -> int:
    M = si(read_matroid(args.path))
    found, w = has_pg_minor(M, args.n, args.q, args.max_contract, args.max_elements or MINOR_MAX_ELEMENTS)
    info = {"path": args.path, "n": args.n, "q": args.q, "max_contract": args.max_contract, "found": found,
            "contracted": list(w.contracted) if w else None, "restriction": list(w.restriction) if w else None}
    lines = [f"found {found}"]
    if w:
        lines += [f"contract {' '.join(w.contracted) or '-'}", f"restrict {' '.join(w.restriction)}"]
    _emit(args, info, lines)
    return EXIT_OK if found else EXIT_FAIL


def cmd_normalize(args) -> int:
    M = read_matroid(args.path)
    if args.members:
        members = args.members.split(",")
    else:
        members = find_pg_restriction(M, M.rank, args.q, args.max_elements or MINOR_MAX_ELEMENTS)
        if members is None:
            print(f"no spanning PG({M.rank - 1},{args.q}) restriction", file=sys.stderr)
            return EXIT_FAIL
    out, _, _ = normalize_spanning_pg(M, members, args.q)
    _write(out, args.out)
    return EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "build":
            return cmd_build(args)
        if args.command == "count":
            return cmd_count(args)
        if args.command == "table":
            return cmd_table(args)
        if args.command == "verify":
            return cmd_verify(args, argv)
        if args.command == "minor-search":
            return cmd_minor_search(args)
        return cmd_normalize(args)
    except (ValueError, FieldError, MatroidError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
