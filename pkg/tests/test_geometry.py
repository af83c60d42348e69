import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from extpg.construct import build_epg, build_pg, epg_size_formula, square_field
from extpg.geometry import (
    ConstellationCert,
    GeometryError,
    MatchingOutcome,
    SlackCertificate,
    UnstableSet,
    check_constellation,
    check_matching_outcome,
    contract_unstable,
    distinct_points_excess,
    enriched_lines,
    excess_predicate_holds,
    find_constellation,
    find_line_matching,
    find_unstable_set,
    line_through,
    pg_plus_points,
    point_on_line,
)
from extpg.instances import UNSTABLE_POOL, hand_instance, random_line_subset, unstable_instance
from extpg.matroid import (
    PGHandle,
    certify_pg,
    check_isomorphism,
    closure,
    find_isomorphism,
    lines_of,
    num_points,
    rank_of,
    restrict,
)
from extpg.normalize import normalize_spanning_pg, subfield_columns
from extpg import oracles


def pg_handle(n_minus_1, q):
    P = build_pg(n_minus_1, q)
    return certify_pg(P, P.labels, q)


def normalized_epg(n_minus_1, q, k):
    E = build_epg(n_minus_1, q, k)
    out, _, h = normalize_spanning_pg(E, subfield_columns(E, q), q)
    return out, h


def test_line_through_hand():
    I = hand_instance()
    assert line_through(I.M, I.R, "e0") == {"100", "010", "110"}


def test_line_through_errors():
    F = square_field(2)
    base = build_pg(2, 2, host=F)
    M = pg_plus_points(base, [(2, 2, 2)])
    R = certify_pg(M, base.labels, 2)
    with pytest.raises(GeometryError):
        line_through(M, R, "e0")
    M2 = pg_plus_points(base, [(0, 0, 0)])
    with pytest.raises(GeometryError):
        line_through(M2, certify_pg(M2, base.labels, 2), "e0")


@pytest.mark.parametrize("n_minus_1,q,k", [(2, 2, 1), (3, 2, 1), (2, 3, 1), (3, 2, 2)])
def test_line_through_is_unique(n_minus_1, q, k):
    M, R = normalized_epg(n_minus_1, q, k)
    rng = random.Random(n_minus_1 * 100 + q * 10 + k)
    extra = sorted(set(M.labels) - R.members)
    for e in rng.sample(extra, min(12, len(extra))):
        brute = oracles.brute_lines_containing(M, R.members, e)
        assert brute == [line_through(M, R, e)]


def test_matching_two_skew_lines():
    R = pg_handle(3, 2)
    lines = lines_of(R.matroid)
    L1 = next(L for L in lines if L == {"1000", "0100", "1100"})
    L2 = next(L for L in lines if L == {"0010", "0001", "0011"})
    out = find_line_matching(R, [L1, L2], 1)
    assert out.is_matching and len(out.matching) == 2
    assert rank_of(R.matroid, L1 | L2) == 4


def test_matching_concurrent_lines_gives_cover():
    R = pg_handle(3, 2)
    through = [L for L in lines_of(R.matroid) if "1000" in L][:3]
    out = find_line_matching(R, through, 1)
    assert not out.is_matching
    assert check_matching_outcome(R, through, 1, out) == []
    assert len(out.exceptional) <= 93


def test_matching_empty():
    R = pg_handle(3, 2)
    for k in range(3):
        out = find_line_matching(R, [], k)
        assert not out.is_matching and out.flat == frozenset() and out.exceptional == ()


def test_matching_rejects_non_lines():
    R = pg_handle(3, 2)
    with pytest.raises(GeometryError):
        find_line_matching(R, [frozenset({"1000", "0100"})], 1)


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 4]), st.integers(0, 2))
def test_matching_outcome_always_valid(seed, n_minus_1, k):
    rng = random.Random(seed)
    R, lines = random_line_subset(n_minus_1, 2, rng)
    out = find_line_matching(R, lines, k)
    assert check_matching_outcome(R, lines, k, out) == []


def test_matching_high_degree_branch():
    # every line of PG(4,2) passes the degree threshold for k = 0 at several points
    R = pg_handle(4, 2)
    lines = lines_of(R.matroid)
    out = find_line_matching(R, lines, 0)
    assert out.is_matching and len(out.matching) == 1
    assert check_matching_outcome(R, lines, 0, out) == []


def test_check_matching_outcome_detects_bad_cover():
    R = pg_handle(3, 2)
    lines = lines_of(R.matroid)[:4]
    bad = MatchingOutcome(flat=frozenset(), exceptional=())
    assert check_matching_outcome(R, lines, 1, bad)


def test_unstable_hand():
    I = hand_instance()
    X = find_unstable_set(I.M, I.R, 0)
    assert isinstance(X, UnstableSet)
    assert X.elements == ("e0",) and X.line_map["e0"] == {"100", "010", "110"}


def test_unstable_cover_when_m_is_r():
    R = pg_handle(2, 2)
    C, cert = find_unstable_set(R.host, R, 1)
    assert C == frozenset()
    assert isinstance(cert, SlackCertificate)
    assert cert.eps_contracted == cert.eps_r_contracted == 7


def test_unstable_in_epg():
    M, R = normalized_epg(3, 2, 1)
    X = find_unstable_set(M, R, 0)
    assert isinstance(X, UnstableSet) and len(X.elements) == 1
    assert num_points(M, enriched_lines(M, R)[0]) == 3


def test_unstable_cover_branch_inequality():
    # extra points all on one line: no 2-matching among enriched lines
    F = square_field(2)
    base = build_pg(3, 2, host=F)
    M = pg_plus_points(base, [(1, 2, 0, 0), (1, 3, 0, 0)])
    R = certify_pg(M, base.labels, 2)
    out = find_unstable_set(M, R, 1)
    C, cert = out
    assert cert.eps_contracted <= cert.eps_r_contracted + cert.slack_bound


def test_contract_unstable_hand():
    I = hand_instance()
    out = contract_unstable(I.M, I.R, I.X)
    assert (len(out), out.rank) == (5, 2)
    # 100, 010, 110 merge into one point; the others stay apart
    assert {"001", "011", "101", "111"} <= set(out.labels)
    assert len({"100", "010", "110"} & set(out.labels)) == 1
    assert find_isomorphism(out, build_epg(1, 2, 1)) is not None


def test_contract_unstable_empty():
    R = pg_handle(2, 2)
    out = contract_unstable(R.host, R, UnstableSet((), {}))
    assert out == R.host


def test_contract_unstable_rejects_invalid():
    I = hand_instance()
    bad = UnstableSet(("e0",), {"e0": frozenset({"100", "001", "101"})})
    with pytest.raises(GeometryError):
        contract_unstable(I.M, I.R, bad)


@pytest.mark.parametrize("idx", range(len(UNSTABLE_POOL)))
def test_contract_unstable_random(idx):
    q, k, n_prime = UNSTABLE_POOL[idx]
    rng = random.Random(1000 + idx)
    I = unstable_instance(q, k, n_prime, rng)
    out = contract_unstable(I.M, I.R, I.X, check_isomorphism=False)
    assert len(out) == epg_size_formula(n_prime - k, q, k)
    target = build_epg(n_prime - k - 1, q, k)
    m = find_isomorphism(out, target)
    assert m is not None and check_isomorphism(out, target, m)


def test_constellation_examples():
    I = hand_instance()
    cert = find_constellation(I.M, 1, 2, 1)
    assert cert is not None and check_constellation(I.M, cert, 1, 2, 1)
    assert len(I.M.span([cert.centres[0], cert.stars[cert.centres[0]][0]]).basis) == 2
    assert find_constellation(build_pg(2, 2), 1, 2, 1) is None


@pytest.mark.parametrize("s,ell,j", [(1, 2, 1), (2, 2, 1), (1, 2, 2), (2, 3, 1), (3, 2, 1)])
def test_constellation_in_epg(s, ell, j):
    M = build_epg(3, 2, 1)
    cert = find_constellation(M, s, ell, j)
    if cert is not None:
        assert check_constellation(M, cert, s, ell, j)
    else:
        # absence is exact: too few independent centres with enough long-line partners
        long_lines = [L for L in lines_of(M) if len(L) >= ell + 2]
        good = [e for e in M.labels
                if rank_of(M, set().union(*[L - {e} for L in long_lines if e in L])) >= j]
        assert rank_of(M, good) < s


def test_check_constellation_rejects():
    I = hand_instance()
    assert not check_constellation(I.M, ConstellationCert(("001",), {"001": ("011",)}), 1, 2, 1)


def test_distinct_points_examples():
    I = hand_instance()
    assert distinct_points_excess(I.M, I.R, []) == 1
    L = frozenset({"100", "010", "110"})
    d = distinct_points_excess(I.M, I.R, [L])
    assert d == 1 and excess_predicate_holds(d, 1, 0)
    with pytest.raises(GeometryError):
        distinct_points_excess(I.M, I.R, [frozenset({"001", "010", "011"})])
    P = pg_handle(2, 2)
    assert distinct_points_excess(P.host, P, []) == 0


@settings(max_examples=100)
@given(st.integers(0, 10**6))
def test_distinct_points_predicate(seed):
    rng = random.Random(seed)
    q = 2
    E, R = normalized_epg(3, q, rng.choice([1, 2]))
    extra = sorted(set(E.labels) - R.members)
    keep = rng.sample(extra, rng.randint(0, len(extra)))
    M = restrict(E, sorted(R.members) + keep)
    Rh = PGHandle(M, R.members, q, R.rank, True)
    long_lines = [L for L in lines_of(restrict(M, R.members)) if num_points(M, closure(M, L)) > q + 1]
    excess = distinct_points_excess(M, Rh, long_lines)
    assert excess == len(keep)
    for d in range(0, 6):
        if len(long_lines) > comb(d + 1, 2):
            assert excess > d
