"""Contract random unstable sets and compare the result with the extended geometry of the same size."""

import argparse
import random
import time

from extpg.construct import build_epg, epg_size_formula
from extpg.geometry import contract_unstable
from extpg.instances import UNSTABLE_POOL, unstable_instance
from extpg.matroid import check_isomorphism, find_isomorphism, num_points


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=16)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print("q,k,n',points,formula,isomorphic,seconds")
    for t in range(args.trials):
        q, k, n_prime = UNSTABLE_POOL[t % len(UNSTABLE_POOL)]
        t0 = time.perf_counter()
        inst = unstable_instance(q, k, n_prime, rng)
        out = contract_unstable(inst.M, inst.R, inst.X, check_isomorphism=False)
        target = build_epg(n_prime - k - 1, q, k)
        m = find_isomorphism(out, target)
        iso = m is not None and check_isomorphism(out, target, m)
        dt = time.perf_counter() - t0
        print(f"{q},{k},{n_prime},{num_points(out)},{epg_size_formula(n_prime - k, q, k)},{iso},{dt:.2f}")


if __name__ == "__main__":
    main()
