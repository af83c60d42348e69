"""Brute-force reference computations, kept free of the echelon and table code.

These are slow on purpose: spans are enumerated element by element and
field products are done on coefficient lists. They exist so that checks
compare two unrelated routes to the same number.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

from .field import FieldSpec


# --- field arithmetic from polynomials --------------------------------------


def poly_digits(F: FieldSpec, a: int) -> list[int]:
    out = []
    for _ in range(F.e):
        a, d = divmod(a, F.p)
        out.append(d)
    return out


def poly_pack(F: FieldSpec, digits: Sequence[int]) -> int:
    return sum(d * F.p**i for i, d in enumerate(digits))


def poly_add(F: FieldSpec, a: int, b: int) -> int:
    return poly_pack(F, [(x + y) % F.p for x, y in zip(poly_digits(F, a), poly_digits(F, b))])


def poly_mul(F: FieldSpec, a: int, b: int) -> int:
    """Schoolbook product reduced by the modulus (coefficients low to high, monic)."""
    p, e = F.p, F.e
    x, y = poly_digits(F, a), poly_digits(F, b)
    prod = [0] * (2 * e - 1)
    for i, u in enumerate(x):
        for j, v in enumerate(y):
            prod[i + j] = (prod[i + j] + u * v) % p
    mod = list(F.modulus)
    for deg in range(len(prod) - 1, e - 1, -1):
        c = prod[deg]
        if c:
            for i, m in enumerate(mod):
                prod[deg - e + i] = (prod[deg - e + i] - c * m) % p
    return poly_pack(F, prod[:e])


# --- spans by enumeration ---------------------------------------------------


def _vec_add(F, u, v):
    return tuple(poly_add(F, a, b) for a, b in zip(u, v))


def _vec_scale(F, c, v):
    return tuple(poly_mul(F, c, a) for a in v)


def span_set(F: FieldSpec, vectors: Iterable[Sequence[int]], dim: int) -> frozenset[tuple[int, ...]]:
    """All linear combinations, grown one generator at a time."""
    span = {(0,) * dim}
    for v in vectors:
        v = tuple(v)
        if v in span:
            continue
        multiples = [_vec_scale(F, c, v) for c in range(F.order)]
        span = {_vec_add(F, s, m) for s in span for m in multiples}
    return frozenset(span)


def brute_rank(F: FieldSpec, vectors: Sequence[Sequence[int]], dim: int | None = None) -> int:
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return 0
    dim = len(vectors[0]) if dim is None else dim
    size = len(span_set(F, vectors, dim))
    return round(math.log(size, F.order))


def point_of(F: FieldSpec, v: Sequence[int]) -> frozenset[tuple[int, ...]] | None:
    """The set of nonzero scalar multiples of ``v``; ``None`` for zero."""
    v = tuple(v)
    if not any(v):
        return None
    return frozenset(_vec_scale(F, c, v) for c in range(1, F.order))


def brute_num_points(F: FieldSpec, vectors: Iterable[Sequence[int]]) -> int:
    pts = {point_of(F, v) for v in vectors}
    pts.discard(None)
    return len(pts)


# --- matroid-level oracles --------------------------------------------------


def rank_fn(M):
    """Memoized brute-force rank on label sets of a RepMatroid."""
    cache: dict[frozenset, int] = {}

    def r(S):
        S = frozenset(S)
        if S not in cache:
            cache[S] = brute_rank(M.F, [M.col(x) for x in sorted(S)], M.rows)
        return cache[S]

    return r


def brute_weakly_round(M) -> bool:
    """Try every bipartition (A, B) of the ground set."""
    labels = list(M.labels)
    r = rank_fn(M)
    full = r(labels)
    for bits in itertools.product((0, 1), repeat=len(labels)):
        A = [x for x, b in zip(labels, bits) if b == 0]
        B = [x for x, b in zip(labels, bits) if b == 1]
        if r(A) <= full - 1 and r(B) <= full - 2:
            return False
    return True


def brute_lines_containing(M, R_labels, e) -> list[frozenset[str]]:
    """Every set cl_R({x, y}) whose span in M holds the column of e."""
    F = M.F
    target = tuple(M.col(e))
    out = set()
    for x, y in itertools.combinations(sorted(R_labels), 2):
        sp = span_set(F, [M.col(x), M.col(y)], M.rows)
        if target in sp:
            out.add(frozenset(z for z in R_labels if tuple(M.col(z)) in sp))
    return sorted(out, key=sorted)


def brute_skew(M, X, Y) -> bool:
    r = rank_fn(M)
    return r(set(X) | set(Y)) == r(X) + r(Y)


def brute_is_pg(M, q: int) -> bool:
    """|E| = (q^n - 1)/(q - 1), simple, and every line has q + 1 points (rank <= 3) by enumeration."""
    r = rank_fn(M)
    n = r(M.labels)
    if len(M) != (q**n - 1) // (q - 1):
        return False
    if brute_num_points(M.F, M.columns) != len(M):
        return False
    for x, y in itertools.combinations(M.labels, 2):
        on_line = [z for z in M.labels if r({x, y, z}) == 2]
        if len(on_line) != q + 1:
            return False
    return True


def epg_points_by_enumeration(n: int, q: int, k: int, F: FieldSpec, sub: Iterable[int]) -> int:
    """Count points of Z(n-1,q,k) via scalar-multiple sets."""
    sub = sorted(sub)
    vecs = (x + y for x in itertools.product(range(F.order), repeat=k)
            for y in itertools.product(sub, repeat=n - k))
    return brute_num_points(F, vecs)
