"""Subfield normalization of spanning projective geometries, and PG-minor search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .field import FieldError, prime_power, subfield_elements
from .linalg import left_inverse, mat_mul, mat_vec
from .matroid import (
    MatroidError,
    PGHandle,
    RepMatroid,
    SizeCapError,
    closure,
    contract,
    flats_of_rank,
    greedy_basis,
    is_projective_geometry,
    pg_size,
    rank_of,
    require_simple,
    restrict,
    si,
)

MINOR_MAX_ELEMENTS = 400


@dataclass(frozen=True)
class ProjectiveTransform:
    row_op_matrix: tuple[tuple[int, ...], ...]
    column_scalars: dict[str, int]

    def apply(self, M: RepMatroid) -> RepMatroid:
        F = M.F
        cols = []
        for lab, c in zip(M.labels, M.columns):
            v = mat_vec(F, self.row_op_matrix, c)
            s = self.column_scalars[lab]
            cols.append(tuple(F.mul(s, x) for x in v))
        return RepMatroid(F, M.rows, tuple(cols), M.labels)


class NormalizationError(MatroidError):
    pass


def normalize_spanning_pg(M: RepMatroid, R: Iterable[str], q: int):
    """Bring the columns of a spanning PG(n-1,q)-restriction into GF(q).

    Returns ``(M', transform, handle)`` with ``transform.apply(M) == M'``.
    The frame is the least-label basis of R plus the least R-point with no
    zero coordinate; after it is fixed the representation is rigid and the
    R-columns can only be GF(q)-valued.
    """
    R = frozenset(R)
    F = M.F
    require_simple(M, "normalize_spanning_pg")
    Rm = restrict(M, R)
    ok, n = is_projective_geometry(Rm, q)
    if not ok:
        raise NormalizationError(f"R is not a projective geometry over GF({q})")
    if n != M.rank:
        raise NormalizationError("R does not span M")
    if n < 3:
        raise NormalizationError("normalization needs rank at least 3")
    try:
        sub = subfield_elements(F, q)
    except FieldError as exc:
        raise NormalizationError(str(exc)) from None

    order = sorted(R)
    basis = greedy_basis(M, order)
    T = left_inverse(F, M.cols(basis), M.rows)
    staged = {lab: mat_vec(F, T, M.col(lab)) for lab in M.labels}
    unit = next((lab for lab in order if all(staged[lab][:n])), None)
    if unit is None:
        raise NormalizationError("no R-point off the coordinate hyperplanes")
    scale = [F.inv(x) for x in staged[unit][:n]] + [1] * (M.rows - n)
    D = [[scale[i] if i == j else 0 for j in range(M.rows)] for i in range(M.rows)]
    rowop = mat_mul(F, D, T)

    column_scalars = {}
    cols = []
    for lab in M.labels:
        v = mat_vec(F, rowop, M.col(lab))
        lead = next(x for x in v if x)
        s = F.inv(lead)
        column_scalars[lab] = s
        cols.append(tuple(F.mul(s, x) for x in v))
    out = RepMatroid(F, M.rows, tuple(cols), M.labels)
    for lab in R:
        if any(x not in sub for x in out.col(lab)):
            raise AssertionError(f"normalized column {lab} left GF({q})")
    transform = ProjectiveTransform(tuple(tuple(r) for r in rowop), column_scalars)
    return out, transform, PGHandle(out, R, q, n, True)


# --- PG restriction and minor search ----------------------------------------


def _coords(F, T, v, n):
    return mat_vec(F, T[:n], v)


def _subgeometry_in_flat(M: RepMatroid, flat: list[str], n: int, q: int) -> list[str] | None:
    """Search a rank-n flat for a PG(n-1,q) restriction by trying every frame."""
    t = pg_size(n, q)
    flat = sorted(flat)
    if len(flat) < t:
        return None
    if n == 1:
        return flat[:1]
    if n == 2:
        return flat[: q + 1]
    F = M.F
    try:
        sub = subfield_elements(F, q)
    except FieldError:
        # PG(n-1,q) with n >= 3 is representable only over fields containing GF(q)
        return None
    for basis in itertools.combinations(flat, n):
        if rank_of(M, basis) < n:
            continue
        T = left_inverse(F, M.cols(basis), M.rows)
        coords = {lab: _coords(F, T, M.col(lab), n) for lab in flat}
        for unit in flat:
            if unit <= basis[0] or unit in basis:
                continue
            u = coords[unit]
            if not all(u):
                continue
            inv_u = [F.inv(x) for x in u]
            found = []
            for lab in flat:
                c = [F.mul(a, b) for a, b in zip(coords[lab], inv_u)]
                lead = next(x for x in c if x)
                s = F.inv(lead)
                if all(F.mul(s, x) in sub for x in c):
                    found.append(lab)
            if len(found) == t and is_projective_geometry(restrict(M, found), q)[0]:
                return found
    return None


def find_pg_restriction(M: RepMatroid, n: int, q: int, max_elements: int = MINOR_MAX_ELEMENTS,
                        spanning_only: bool = False) -> list[str] | None:
    """Labels of a PG(n-1,q)-restriction of simple ``M``, or ``None``."""
    require_simple(M, "find_pg_restriction")
    prime_power(q)
    if len(M) > max_elements:
        raise SizeCapError(f"restriction search capped at {max_elements} elements")
    r = M.rank
    t = pg_size(n, q)
    if n > r or len(M) < t:
        return None
    if n == r:
        candidates = [frozenset(M.labels)]
    elif spanning_only:
        return None
    else:
        candidates = flats_of_rank(M, n)
    for flat in candidates:
        if len(flat) < t:
            continue
        found = _subgeometry_in_flat(M, list(flat), n, q)
        if found is not None:
            return found
    return None


@dataclass(frozen=True)
class MinorWitness:
    contracted: tuple[str, ...]
    restriction: tuple[str, ...]


def contraction_sets(M: RepMatroid, max_size: int):
    """Independent sets of size <= max_size, one per spanned flat, by size then labels."""
    seen: set[frozenset] = set()
    level = [((), closure(M, ()))]
    yield ()
    labels = sorted(M.labels)
    for _ in range(max_size):
        nxt = []
        for C, cl in level:
            covered = set(cl)
            for lab in labels:
                if lab in covered:
                    continue
                C2 = C + (lab,)
                cl2 = closure(M, C2)
                covered.update(cl2)
                if cl2 in seen:
                    continue
                seen.add(cl2)
                nxt.append((C2, cl2))
                yield C2
        level = nxt


def verify_minor_witness(M: RepMatroid, n: int, q: int, w: MinorWitness) -> bool:
    N = si(contract(M, w.contracted))
    if not set(w.restriction) <= set(N.labels):
        return False
    R = restrict(N, w.restriction)
    ok, rank = is_projective_geometry(R, q)
    return ok and rank == n


def has_pg_minor(M: RepMatroid, n: int, q: int, max_contract: int,
                 max_elements: int = MINOR_MAX_ELEMENTS) -> tuple[bool, MinorWitness | None]:
    """Search contractions by at most ``max_contract`` elements for a PG(n-1,q)-restriction.

    A restriction sitting in a non-spanning flat of ``M/C`` is also a spanning
    restriction of ``M/(C+x)`` for any x off that flat, so while budget
    remains only spanning restrictions are searched.
    """
    require_simple(M, "has_pg_minor")
    if len(M) > max_elements:
        raise SizeCapError(f"minor search capped at {max_elements} elements")
    r = M.rank
    t = pg_size(n, q)
    for C in contraction_sets(M, min(max_contract, max(r - n, 0))):
        N = si(contract(M, C))
        rN = r - len(C)
        if rN < n or len(N) < t:
            continue
        spanning_only = len(C) < max_contract
        found = find_pg_restriction(N, n, q, max_elements, spanning_only=spanning_only)
        if found is None:
            continue
        w = MinorWitness(tuple(C), tuple(sorted(found)))
        if not verify_minor_witness(M, n, q, w):
            raise AssertionError(f"minor witness failed re-verification: {w}")
        return True, w
    return False, None


def subfield_columns(M: RepMatroid, q: int) -> frozenset[str]:
    """Labels whose columns have every entry in GF(q)."""
    sub = subfield_elements(M.F, q)
    return frozenset(lab for lab, c in zip(M.labels, M.columns) if all(x in sub for x in c))
