"""Growth-rate table for extended projective geometries, checked against the built matroids."""

import argparse

from extpg.construct import build_epg, epg_size_formula
from extpg.matroid import num_points


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--k-max", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--build-limit", type=int, default=3000, help="skip building above this many points")
    args = ap.parse_args()
    for q in args.q:
        print(f"q={q}")
        print("n," + ",".join(f"k={k}" for k in range(args.k_max + 1)))
        for n in range(1, args.n_max + 1):
            cells = []
            for k in range(args.k_max + 1):
                if k > n:
                    cells.append("")
                    continue
                f = epg_size_formula(n, q, k)
                mark = ""
                if f <= args.build_limit:
                    mark = "" if num_points(build_epg(n - 1, q, k)) == f else "!"
                cells.append(f"{f}{mark}")
            print(f"{n}," + ",".join(cells))
        print()


if __name__ == "__main__":
    main()
