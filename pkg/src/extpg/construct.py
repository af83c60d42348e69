"""Projective geometries, extended projective geometries and their point counts."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .field import (
    FieldError,
    FieldSpec,
    embed_subfield,
    field_of_order,
    make_field,
    prime_power,
    subfield_elements,
)
from .linalg import rank as vec_rank
from .matroid import RepMatroid, contract, from_columns, si, vector_label


def square_field(q: int) -> FieldSpec:
    """GF(q^2) for a prime power q."""
    p, e = prime_power(q)
    return make_field(p, 2 * e)


def _pg_vectors(elements: list[int], n: int):
    """Normalized representatives (first nonzero entry 1) in lexicographic order."""
    for lead in range(n):
        for tail in itertools.product(elements, repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail


def build_pg(n_minus_1: int, q: int, host: FieldSpec | None = None) -> RepMatroid:
    """PG(n-1, q), one column per point, optionally embedded in a larger field."""
    n = n_minus_1 + 1
    if n < 1:
        raise ValueError(f"PG({n_minus_1},{q}) needs n >= 1")
    Fq = field_of_order(q)
    if host is None or host is Fq:
        host, emb = Fq, None
    else:
        emb = embed_subfield(host, Fq)
    cols = []
    for v in _pg_vectors(list(Fq.elements()), n):
        cols.append(v if emb is None else tuple(emb[x] for x in v))
    return from_columns(host, cols)


def z_set(n_minus_1: int, q: int, k: int) -> list[tuple[int, ...]]:
    """Z(n-1,q,k): (x y) with x in GF(q^2)^k and y in GF(q)^(n-k), over GF(q^2)."""
    n = n_minus_1 + 1
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    F = square_field(q)
    sub = sorted(subfield_elements(F, q))
    big = list(F.elements())
    return [x + y for x in itertools.product(big, repeat=k) for y in itertools.product(sub, repeat=n - k)]


def build_epg(n_minus_1: int, q: int, k: int) -> RepMatroid:
    """PG^(k)(n-1, q): the simplification of the matroid of Z(n-1,q,k)."""
    n = n_minus_1 + 1
    F = square_field(q)
    M = from_columns(F, z_set(n_minus_1, q, k), rows=n)
    return si(M)


def build_extension_rep(spec_q2: FieldSpec, omega: int, n: int) -> RepMatroid:
    """Vectors with first entry in {a*omega + b : a, b in GF(q)}, rest in GF(q); simplified."""
    if spec_q2.e % 2:
        raise FieldError(f"{spec_q2!r} is not a square-order field")
    q = spec_q2.p ** (spec_q2.e // 2)
    sub = sorted(subfield_elements(spec_q2, q))
    if omega in sub:
        raise FieldError(f"omega={omega} lies in GF({q})")
    F = spec_q2
    firsts = sorted({F.add(F.mul(a, omega), b) for a in sub for b in sub})
    cols = [(f,) + y for f in firsts for y in itertools.product(sub, repeat=n - 1)]
    return si(from_columns(F, cols, rows=n))


# --- counting formulas ------------------------------------------------------


def _exact_div(a: int, b: int) -> int:
    quo, rem = divmod(a, b)
    if rem:
        raise ArithmeticError(f"{a} is not divisible by {b}")
    return quo


def epg_size_formula(n: int, q: int, k: int) -> int:
    """(q^(n+k) - 1)/(q - 1) - q (q^(2k) - 1)/(q^2 - 1), exactly."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return _exact_div(q ** (n + k) - 1, q - 1) - q * _exact_div(q ** (2 * k) - 1, q * q - 1)


def growth_rate_formula(n: int, q: int, k: int) -> int:
    return epg_size_formula(n, q, k)


def kung_bound(ell: int, r: int) -> int:
    """(ell^r - 1)/(ell - 1)."""
    if ell < 2:
        raise ValueError("ell must be at least 2")
    return _exact_div(ell**r - 1, ell - 1)


def pgmatching_bound(q: int, k: int) -> int:
    """(q^(2k) - 1)(q^(2k+3) - 1)/(q - 1)^2: cap on exceptional lines in a cover."""
    return _exact_div((q ** (2 * k) - 1) * (q ** (2 * k + 3) - 1), (q - 1) ** 2)


def matching_degree_threshold(q: int, k: int) -> int:
    return _exact_div(q ** (2 * k + 3) - 1, q - 1)


# --- random projections -----------------------------------------------------


@dataclass(frozen=True)
class ProjectionWitness:
    host: RepMatroid
    contracted: tuple[str, ...]


def random_projection_member(n_prime: int, q: int, k: int, seed, max_tries: int = 100):
    """si(M'/C) for M' = PG(n'-1,q) plus k random independent GF(q^2) columns C."""
    if not 0 <= k < n_prime:
        raise ValueError(f"need 0 <= k < n', got k={k}, n'={n_prime}")
    F = square_field(q)
    pg = build_pg(n_prime - 1, q, host=F)
    rng = random.Random(seed)
    for _ in range(max_tries):
        extra = [tuple(rng.randrange(F.order) for _ in range(n_prime)) for _ in range(k)]
        if vec_rank(F, extra) == k:
            break
    else:
        raise RuntimeError(f"no independent {k}-set found in {max_tries} tries")
    names = tuple(f"c{i}" for i in range(k))
    host = RepMatroid(F, n_prime, pg.columns + tuple(extra), pg.labels + names)
    return si(contract(host, names)), ProjectionWitness(host, names)


def label_for(F: FieldSpec, v) -> str:
    return vector_label(F, v)
