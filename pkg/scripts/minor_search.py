"""Exhaustive PG(n-1,Q)-minor search on an extended projective geometry, with a positive control."""

import argparse
import time

from extpg.construct import build_epg, build_pg
from extpg.normalize import has_pg_minor, verify_minor_witness


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--rank", type=int, default=4, help="rank of the extended geometry")
    ap.add_argument("--minor-rank", type=int, default=3)
    ap.add_argument("--max-contract", type=int, default=1)
    args = ap.parse_args()
    Q = args.q**2
    for name, M in (("extended", build_epg(args.rank - 1, args.q, args.k)), ("control", build_pg(args.rank - 1, Q))):
        t0 = time.perf_counter()
        found, w = has_pg_minor(M, args.minor_rank, Q, args.max_contract)
        dt = time.perf_counter() - t0
        ok = "" if w is None else f" witness verified {verify_minor_witness(M, args.minor_rank, Q, w)}"
        print(f"{name}: {len(M)} elements, rank {M.rank}, PG({args.minor_rank - 1},{Q})-minor {found}{ok} [{dt:.2f}s]")


if __name__ == "__main__":
    main()
