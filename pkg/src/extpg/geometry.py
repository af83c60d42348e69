"""Lines of a spanning GF(q)-geometry inside a GF(q^2)-represented matroid.

Everything here works relative to a certified :class:`PGHandle` ``R`` whose
columns are GF(q)-valued in the host representation (see
:func:`extpg.normalize.normalize_spanning_pg`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .construct import build_epg, epg_size_formula, matching_degree_threshold, pgmatching_bound
from .field import decompose, pick_omega
from .linalg import Span, normalize
from .matroid import (
    MatroidError,
    PGHandle,
    RepMatroid,
    closure,
    contract,
    find_isomorphism,
    is_independent,
    lines_of,
    num_points,
    rank_of,
    require_simple,
    restrict,
    si,
)


class GeometryError(MatroidError):
    pass


def _require_certified(R: PGHandle) -> None:
    if not R.certified:
        raise GeometryError("PG handle is not certified")
    if not R.spanning:
        raise GeometryError("PG handle must span its host")


def _r_points_by_direction(R: PGHandle) -> dict[tuple, str]:
    host = R.host
    return {normalize(host.F, host.col(lab)): lab for lab in R.members}


def line_through(M: RepMatroid, R: PGHandle, e: str) -> frozenset[str]:
    """The unique line L of R with ``e`` in cl_M(L).

    The column of ``e`` is split as ``v + omega*w`` with GF(q)-vectors v, w;
    the answer is the R-line spanned by the points parallel to v and w.
    """
    _require_certified(R)
    if M is not R.host and M != R.host:
        raise GeometryError("R must be a restriction of M")
    F, q = M.F, R.q
    col = M.col(e)
    if not any(col):
        raise GeometryError(f"{e} is a loop")
    omega = pick_omega(F, q)
    parts = [decompose(F, omega, x, q) for x in col]
    v = tuple(a for a, _ in parts)
    w = tuple(b for _, b in parts)
    if Span(F, [v, w]).dim < 2:
        raise GeometryError(f"{e} is parallel to a point of R")
    dirs = _r_points_by_direction(R)
    if normalize(F, v) not in dirs or normalize(F, w) not in dirs:
        raise AssertionError("decomposition left the subgeometry")
    sp = Span(F, [v, w])
    line = frozenset(lab for lab in R.members if sp.contains(M.col(lab)))
    if len(line) != q + 1:
        raise AssertionError(f"carrier line has {len(line)} points")
    return line


def lines_through_closure(M: RepMatroid, R: PGHandle, e: str) -> list[frozenset[str]]:
    """Brute force: every line of R whose closure in M contains ``e``."""
    Rm = restrict(M, R.members)
    out = []
    for L in lines_of(Rm):
        if M.span(L).contains(M.col(e)):
            out.append(L)
    return out


# --- matchings --------------------------------------------------------------


@dataclass(frozen=True)
class MatchingOutcome:
    """Either ``matching`` (k+1 mutually skew lines) or a cover ``(flat, exceptional)``."""

    matching: tuple[frozenset[str], ...] | None = None
    flat: frozenset[str] | None = None
    exceptional: tuple[frozenset[str], ...] = ()
    centres: tuple[str, ...] = ()

    @property
    def is_matching(self) -> bool:
        return self.matching is not None


def is_matching(M: RepMatroid, lines: Sequence[frozenset[str]]) -> bool:
    union = frozenset().union(*lines) if lines else frozenset()
    return rank_of(M, union) == 2 * len(lines)


def _skew(M: RepMatroid, A, B) -> bool:
    return rank_of(M, list(A) + list(B)) == rank_of(M, A) + rank_of(M, B)


def find_line_matching(R: PGHandle, lines: Sequence[frozenset[str]], k: int) -> MatchingOutcome:
    """Find a (k+1)-matching in ``lines`` or a low-rank flat meeting almost all of them.

    Greedy version of the degree argument: C is a maximal independent set of
    points lying on more than (q^(2k+3)-1)/(q-1) of the lines, scanned in
    label order; matchings are grown one centre at a time by picking a line
    through the centre that leaves the span built so far.
    """
    Rm = R.matroid
    q = R.q
    lines = [frozenset(L) for L in lines]
    member_set = frozenset(Rm.labels)
    for L in lines:
        if not L <= member_set or len(L) != q + 1 or rank_of(Rm, L) != 2 or closure(Rm, L) != L:
            raise GeometryError(f"{sorted(L)} is not a line of R")
    threshold = matching_degree_threshold(q, k)
    degree = {lab: 0 for lab in Rm.labels}
    for L in lines:
        for lab in L:
            degree[lab] += 1

    C: list[str] = []
    sp = Span(Rm.F)
    for lab in sorted(Rm.labels):
        if degree[lab] > threshold and sp.add(Rm.col(lab)):
            C.append(lab)

    def grow(centres: Sequence[str], seed_line: frozenset[str] | None) -> list[frozenset[str]]:
        matching = [seed_line] if seed_line is not None else []
        for e in centres:
            span = Rm.span(list(centres) + [x for L in matching for x in L])
            pick = None
            for L in lines:
                if e in L and any(not span.contains(Rm.col(x)) for x in L):
                    pick = L
                    break
            if pick is None:
                raise AssertionError(f"no extending line through {e}")
            matching.append(pick)
        return matching

    if len(C) >= k + 1:
        return MatchingOutcome(matching=tuple(grow(C[: k + 1], None)), centres=tuple(C[: k + 1]))

    skew_to_c = [L for L in lines if _skew(Rm, L, C)]
    if skew_to_c and len(C) == k:
        return MatchingOutcome(matching=tuple(grow(C, skew_to_c[0])), centres=tuple(C))

    greedy: list[frozenset[str]] = []
    for L in skew_to_c:
        if is_matching(Rm, greedy + [L]):
            greedy.append(L)
            if len(greedy) == k + 1:
                return MatchingOutcome(matching=tuple(greedy))

    return MatchingOutcome(flat=closure(Rm, C), exceptional=tuple(skew_to_c), centres=tuple(C))


def check_matching_outcome(R: PGHandle, lines: Sequence[frozenset[str]], k: int, out: MatchingOutcome) -> list[str]:
    """Independent re-verification; returns a list of violated conditions."""
    Rm = R.matroid
    problems = []
    lines = [frozenset(L) for L in lines]
    if out.is_matching:
        if len(out.matching) != k + 1:
            problems.append("matching has wrong size")
        if not all(L in lines for L in out.matching):
            problems.append("matching uses a foreign line")
        union = frozenset().union(*out.matching)
        if rank_of(Rm, union) != 2 * len(out.matching):
            problems.append("lines are not mutually skew")
        return problems
    Fl = out.flat
    rF = rank_of(Rm, Fl)
    if closure(Rm, Fl) != Fl:
        problems.append("F is not a flat")
    if rF > k:
        problems.append("rank(F) exceeds k")
    exc = set(out.exceptional)
    if not exc <= set(lines):
        problems.append("exceptional set not drawn from the input")
    for L in lines:
        if L not in exc and not (L & Fl):
            problems.append(f"line {sorted(L)} misses F and is not exceptional")
            break
    if len(exc) > pgmatching_bound(R.q, k):
        problems.append("too many exceptional lines")
    if rF == k and exc:
        problems.append("rank(F) = k but exceptional lines remain")
    return problems


# --- unstable sets ----------------------------------------------------------


@dataclass(frozen=True)
class UnstableSet:
    elements: tuple[str, ...]
    line_map: dict[str, frozenset[str]]


@dataclass(frozen=True)
class SlackCertificate:
    contracted: frozenset[str]
    eps_contracted: int
    eps_r_contracted: int
    slack_bound: int


def enriched_lines(M: RepMatroid, R: PGHandle) -> list[frozenset[str]]:
    """Lines L of R whose closure in M holds more points than in R."""
    Rm = R.matroid
    out = []
    for L in lines_of(Rm):
        if len(closure(M, L)) > len(L):
            out.append(L)
    return out


def find_unstable_set(M: RepMatroid, R: PGHandle, k: int):
    """Either an R-unstable set of size k+1 or a rank-<=k set C with small excess.

    Returns ``UnstableSet`` or ``(C, SlackCertificate)``.
    """
    _require_certified(R)
    require_simple(M, "find_unstable_set")
    q = R.q
    L = enriched_lines(M, R)
    outcome = find_line_matching(R, L, k)
    if outcome.is_matching:
        elements, line_map = [], {}
        for line in outcome.matching:
            extra = sorted(closure(M, line) - line)
            e = extra[0]
            elements.append(e)
            line_map[e] = line
        X = UnstableSet(tuple(elements), line_map)
        if not is_unstable(M, R, X):
            raise AssertionError("constructed set is not R-unstable")
        return X
    C = outcome.flat
    bound = (q * q + 1) * pgmatching_bound(q, k)
    eps_m = num_points(contract(M, C))
    eps_r = num_points(contract(R.matroid, C))
    if eps_m > eps_r + bound:
        raise AssertionError("cover branch violates its excess bound")
    return C, SlackCertificate(C, eps_m, eps_r, bound)


def is_unstable(M: RepMatroid, R: PGHandle, X: UnstableSet) -> bool:
    dirs = _r_points_by_direction(R)
    for e in X.elements:
        if normalize(M.F, M.col(e)) in dirs:
            return False
        if e in R.members:
            return False
    if not is_independent(M, X.elements):
        return False
    lines = []
    for e in X.elements:
        L = X.line_map.get(e)
        if L is None or not M.span(L).contains(M.col(e)):
            return False
        lines.append(L)
    return is_matching(R.matroid, lines)


def contract_unstable(M: RepMatroid, R: PGHandle, X: UnstableSet, check_isomorphism: bool = True) -> RepMatroid:
    """si((M/X)|E(R)); asserted isomorphic to PG^(k)(n'-k-1, q) with k = |X|."""
    _require_certified(R)
    if not is_unstable(M, R, X):
        raise GeometryError("X is not R-unstable")
    k = len(X.elements)
    n_prime = M.rank
    if n_prime < 2 * k:
        raise GeometryError("need rank(M) >= 2|X|")
    out = si(restrict(contract(M, X.elements), R.members))
    expected = epg_size_formula(n_prime - k, R.q, k)
    if len(out) != expected:
        raise AssertionError(f"contraction has {len(out)} points, expected {expected}")
    if check_isomorphism and k > 0:
        if find_isomorphism(out, build_epg(n_prime - k - 1, R.q, k)) is None:
            raise AssertionError("contraction is not an extended projective geometry")
    return out


# --- distinct points --------------------------------------------------------


def distinct_points_excess(M: RepMatroid, R: PGHandle, long_lines: Sequence[frozenset[str]]) -> int:
    """epsilon(M) - epsilon(R) after checking every listed line is long."""
    for L in long_lines:
        if num_points(M, closure(M, L)) <= R.q + 1:
            raise GeometryError(f"line {sorted(L)} has at most q+1 points")
    return num_points(M) - num_points(R.matroid)


def excess_predicate_holds(excess: int, n_long_lines: int, d: int) -> bool:
    """If more than C(d+1, 2) long lines exist, the excess must exceed d."""
    return n_long_lines <= comb(d + 1, 2) or excess > d


# --- constellations ---------------------------------------------------------


@dataclass(frozen=True)
class ConstellationCert:
    centres: tuple[str, ...]
    stars: dict[str, tuple[str, ...]] = field(default_factory=dict)


def find_constellation(M: RepMatroid, s: int, ell: int, j: int) -> ConstellationCert | None:
    """An (s, ell, j)-constellation in simple ``M``, or ``None`` if there is none.

    For a centre e, the partners available are the points on lines through e
    with at least ell+2 points; e qualifies iff they have rank >= j. The
    centres need only be independent, so first-fit selection is exact on
    both levels and ``None`` is a proof of absence.
    """
    require_simple(M, "find_constellation")
    long_lines = [L for L in lines_of(M) if len(L) >= ell + 2]
    through: dict[str, set[str]] = {lab: set() for lab in M.labels}
    for L in long_lines:
        for lab in L:
            through[lab].update(L - {lab})
    centres: list[str] = []
    stars: dict[str, tuple[str, ...]] = {}
    sp = Span(M.F)
    for e in sorted(M.labels):
        if len(centres) == s:
            break
        partners = []
        psp = Span(M.F)
        for f in sorted(through[e]):
            if len(partners) == j:
                break
            if psp.add(M.col(f)):
                partners.append(f)
        if len(partners) < j:
            continue
        if sp.add(M.col(e)):
            centres.append(e)
            stars[e] = tuple(partners)
    if len(centres) < s:
        return None
    return ConstellationCert(tuple(centres), stars)


def check_constellation(M: RepMatroid, cert: ConstellationCert, s: int, ell: int, j: int) -> bool:
    if len(cert.centres) != s or not is_independent(M, cert.centres):
        return False
    support = set(cert.centres)
    for e in cert.centres:
        X = cert.stars.get(e, ())
        if len(X) != j or not is_independent(M, X):
            return False
        for f in X:
            if f == e or len(closure(M, [e, f])) < ell + 2:
                return False
        support.update(X)
    return rank_of(M, support) <= s * (j + 1)


# --- instance builders ------------------------------------------------------


def random_skew_lines(R: PGHandle, k: int, rng) -> list[frozenset[str]]:
    """k mutually skew lines of R chosen at random (k <= rank/2)."""
    Rm = R.matroid
    lines = lines_of(Rm)
    chosen: list[frozenset[str]] = []
    pool = list(lines)
    rng.shuffle(pool)
    for L in pool:
        if len(chosen) == k:
            break
        if is_matching(Rm, chosen + [L]):
            chosen.append(L)
    if len(chosen) < k:
        raise GeometryError(f"R has no {k}-matching")
    return chosen


def point_on_line(M: RepMatroid, line: frozenset[str], q: int, rng) -> tuple[int, ...]:
    """A random vector a*f + b*f' on the line, not parallel to a GF(q)-point."""
    F = M.F
    f, g = sorted(line)[:2]
    u, v = M.col(f), M.col(g)
    omega = pick_omega(F, q)
    while True:
        a = rng.randrange(1, F.order)
        b = rng.randrange(1, F.order)
        ratio = F.div(b, a)
        if decompose(F, omega, ratio, q)[1] != 0:
            return tuple(F.add(F.mul(a, x), F.mul(b, y)) for x, y in zip(u, v))


def pg_plus_points(R_host: RepMatroid, vectors: Sequence[Sequence[int]], prefix: str = "e") -> RepMatroid:
    names = tuple(f"{prefix}{i}" for i in range(len(vectors)))
    cols = R_host.columns + tuple(tuple(v) for v in vectors)
    return RepMatroid(R_host.F, R_host.rows, cols, R_host.labels + names)
