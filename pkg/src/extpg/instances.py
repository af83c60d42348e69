"""Seeded random instance generators shared by the verify suites, tests and scripts."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .construct import build_pg, square_field
from .field import field_of_order
from .geometry import (
    UnstableSet,
    find_unstable_set,
    pg_plus_points,
    point_on_line,
    random_skew_lines,
)
from .linalg import rank as vec_rank
from .matroid import PGHandle, RepMatroid, certify_pg, lines_of, num_points, rank_of, restrict

# (q, k, n') triples whose unstable contraction finishes in well under a second
UNSTABLE_POOL = ((2, 1, 3), (2, 1, 4), (2, 1, 5), (2, 2, 4), (2, 2, 5), (3, 1, 3), (3, 1, 4), (3, 2, 4))


@dataclass(frozen=True)
class UnstableInstance:
    q: int
    k: int
    n_prime: int
    M: RepMatroid
    R: PGHandle
    X: UnstableSet


def unstable_instance(q: int, k: int, n_prime: int, rng: random.Random) -> UnstableInstance:
    """PG(n'-1,q) over GF(q^2) plus one new point on each of k random skew lines."""
    F = square_field(q)
    base = build_pg(n_prime - 1, q, host=F)
    lines = random_skew_lines(certify_pg(base, base.labels, q), k, rng)
    vecs = [point_on_line(base, L, q, rng) for L in lines]
    M = pg_plus_points(base, vecs)
    R = certify_pg(M, base.labels, q)
    X = find_unstable_set(M, R, k - 1)
    if not isinstance(X, UnstableSet):
        raise AssertionError("k enriched skew lines must yield an unstable set")
    return UnstableInstance(q, k, n_prime, M, R, X)


def hand_instance() -> UnstableInstance:
    """PG(2,2) over GF(4) with the extra point (1, w, 0)."""
    F = square_field(2)
    base = build_pg(2, 2, host=F)
    M = pg_plus_points(base, [(1, 2, 0)])
    R = certify_pg(M, base.labels, 2)
    X = UnstableSet(("e0",), {"e0": frozenset({"100", "010", "110"})})
    return UnstableInstance(2, 1, 3, M, R, X)


def random_invertible(F, n: int, rng: random.Random) -> list[list[int]]:
    while True:
        T = [[rng.randrange(F.order) for _ in range(n)] for _ in range(n)]
        if vec_rank(F, T) == n:
            return T


def scrambled_pg(n_minus_1: int, q: int, Q: int, rng: random.Random) -> RepMatroid:
    """PG(n-1,q) embedded in GF(Q), hit by a random row operation and column scaling."""
    F = field_of_order(Q)
    base = build_pg(n_minus_1, q, host=F)
    n = base.rows
    T = random_invertible(F, n, rng)
    cols = []
    for c in base.columns:
        s = rng.randrange(1, F.order)
        v = [0] * n
        for i in range(n):
            acc = 0
            for j in range(n):
                acc = F.add(acc, F.mul(T[i][j], c[j]))
            v[i] = F.mul(s, acc)
        cols.append(tuple(v))
    return RepMatroid(F, n, tuple(cols), base.labels)


def random_line_subset(n_minus_1: int, q: int, rng: random.Random):
    """A PG(n-1,q) handle and a random subset of its lines."""
    P = build_pg(n_minus_1, q)
    R = certify_pg(P, P.labels, q)
    lines = lines_of(P)
    density = rng.choice([0.02, 0.05, 0.1, 0.3, 0.6, 1.0])
    return R, [L for L in lines if rng.random() < density]


def random_restriction(M: RepMatroid, rng: random.Random, min_size: int = 1) -> RepMatroid:
    labels = list(M.labels)
    size = rng.randint(min_size, len(labels))
    return restrict(M, rng.sample(labels, size))


@dataclass(frozen=True)
class SkewInstance:
    M: RepMatroid
    A: frozenset[str]
    B: frozenset[str]
    lam: Fraction
    mu: Fraction
    ell: int
    k: int


MU_CHOICES = (Fraction(9, 8), Fraction(5, 4), Fraction(3, 2), Fraction(7, 4), Fraction(2), Fraction(5, 2), Fraction(3))


def skew_instance(M: RepMatroid, k_max: int, rng: random.Random, max_tries: int = 1000) -> SkewInstance:
    """Random (A, B, lambda, mu) in M meeting every precondition of the skew-subset search."""
    ell = M.F.order
    labels = list(M.labels)
    for _ in range(max_tries):
        k = rng.randint(0, k_max)
        B = frozenset(rng.sample(labels, k))
        rest = [x for x in labels if x not in B]
        A = frozenset(rng.sample(rest, rng.randint(1, len(rest))))
        mu = rng.choice([m for m in MU_CHOICES if m <= ell + 1])
        rA, rB = rank_of(M, A), rank_of(M, B)
        hi = Fraction(num_points(M, A)) / mu**rA
        lo = Fraction(0) if rB == 0 else 1 / (((mu - 1) / ell) ** (rB - 1) * mu)
        if lo >= hi:
            continue
        t = Fraction(rng.randint(0, 99), 100)
        lam = lo + (hi - lo) * t
        if lam <= 0:
            lam = hi / 2
        return SkewInstance(M, A, B, lam, mu, ell, max(k, rB))
    raise RuntimeError("no admissible skew instance found")
