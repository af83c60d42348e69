import itertools
from math import prod

import pytest
from hypothesis import assume, given, strategies as st

from extpg.construct import build_epg, build_pg, square_field, z_set
from extpg.field import field_of_order
from extpg.matroid import (
    MatroidError,
    NotSimpleError,
    SizeCapError,
    check_isomorphism,
    closure,
    contract,
    delete,
    dumps,
    find_isomorphism,
    flats_of_rank,
    from_columns,
    hyperplanes,
    is_projective_geometry,
    is_simple,
    lines_of,
    loads,
    loops,
    matroid_isomorphic,
    num_points,
    rank_of,
    read_matroid,
    restrict,
    si,
    simplify,
    write_matroid,
)
from extpg import oracles
from strategies import rep_matroids


def gaussian_binomial(n, k, q):
    num = prod(q ** (n - i) - 1 for i in range(k))
    den = prod(q ** (i + 1) - 1 for i in range(k))
    return num // den


PG22 = build_pg(2, 2)


def test_rank_examples():
    assert rank_of(PG22, []) == 0
    for a, b in itertools.combinations(PG22.labels, 2):
        assert rank_of(PG22, [a, b]) == 2
    assert rank_of(PG22, ["100", "010", "110"]) == 2


def test_unknown_label():
    with pytest.raises(MatroidError):
        rank_of(PG22, ["zzz"])


def test_contract_examples():
    assert contract(PG22, []) == PG22
    N = si(contract(PG22, ["001"]))
    assert (len(N), N.rank) == (3, 2)


def test_simplify_examples():
    N, smap = simplify(PG22)
    assert N == PG22
    assert all(smap.representative[x] == x for x in PG22.labels)
    F3 = field_of_order(3)
    M = from_columns(F3, [(1, 2), (2, 1)], labels=["a", "b"])
    assert len(si(M)) == 1
    F = square_field(2)
    Z = from_columns(F, z_set(2, 2, 1), rows=3)
    assert len(Z) == 16
    assert num_points(Z) == 13 == oracles.brute_num_points(F, Z.columns)


def test_closure_examples():
    F = field_of_order(2)
    M = from_columns(F, [(0, 0), (1, 0), (0, 1)], labels=["z", "a", "b"])
    assert closure(M, []) == {"z"} == loops(M)
    assert closure(PG22, ["100", "010", "001"]) == set(PG22.labels)
    assert closure(PG22, ["100", "010"]) == {"100", "010", "110"}


def test_lines_examples():
    L = lines_of(PG22)
    assert len(L) == 7 and all(len(x) == 3 for x in L)
    assert len(lines_of(build_pg(1, 5))) == 1
    assert len(lines_of(build_pg(3, 2))) == gaussian_binomial(4, 2, 2) == 35
    M = from_columns(field_of_order(3), [(1, 0), (2, 0)], labels=["a", "b"])
    with pytest.raises(NotSimpleError):
        lines_of(M)


@pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 4), (3, 4), (2, 5)])
def test_pg_structure(n, q):
    P = build_pg(n - 1, q)
    assert len(P) == (q**n - 1) // (q - 1) == oracles.brute_num_points(P.F, P.columns)
    assert P.rank == n
    lines = lines_of(P)
    assert all(len(L) == q + 1 for L in lines)
    assert len(lines) == gaussian_binomial(n, 2, q)
    for a, b in itertools.combinations(P.labels, 2):
        assert sum(1 for L in lines if a in L and b in L) == 1
    assert len(hyperplanes(P)) == gaussian_binomial(n, n - 1, q)


@pytest.mark.parametrize("n,q,k", [(3, 2, 1), (3, 2, 2), (3, 3, 1)])
def test_flats_count_in_pg(n, q, k):
    P = build_pg(n - 1, q)
    assert len(flats_of_rank(P, k)) == gaussian_binomial(n, k, q)


def test_is_projective_geometry_examples():
    assert is_projective_geometry(PG22, 2) == (True, 3)
    assert not is_projective_geometry(delete(PG22, ["111"]), 2)[0]
    assert not is_projective_geometry(build_epg(2, 2, 1), 2)[0]
    assert is_projective_geometry(build_pg(3, 3), 3) == (True, 4)


def test_isomorphism_examples():
    assert matroid_isomorphic(PG22, PG22)
    assert matroid_isomorphic(build_epg(1, 2, 1), build_pg(1, 4))
    assert not matroid_isomorphic(PG22, delete(PG22, ["111"]))
    E = build_epg(2, 2, 1)
    assert not matroid_isomorphic(E, build_pg(2, 3))  # 13 points both, different lines


def test_isomorphism_mapping_is_checked():
    P = build_pg(3, 2)
    perm = sorted(P.labels, reverse=True)
    Q = restrict(P, perm)
    m = find_isomorphism(P, Q)
    assert m is not None and check_isomorphism(P, Q, m)
    bad = dict(zip(P.labels, P.labels[1:] + P.labels[:1]))
    assert not check_isomorphism(P, P, bad)


@given(rep_matroids(orders=(2, 3, 4), max_rows=4, max_cols=9, min_cols=3), st.randoms(use_true_random=False))
def test_isomorphism_found_after_scrambling(M, rng):
    M = si(M)
    assume(len(M) >= 1)
    perm = list(M.labels)
    rng.shuffle(perm)
    F = M.F
    scale = {x: rng.randrange(1, F.order) for x in perm}
    cols = [tuple(F.mul(scale[x], a) for a in reversed(M.col(x))) for x in perm]
    N = from_columns(F, cols, labels=[f"y{i}" for i in range(len(perm))])
    m = find_isomorphism(M, N)
    assert m is not None and check_isomorphism(M, N, m)


def _brute_isomorphic(M, N):
    r1, r2 = oracles.rank_fn(M), oracles.rank_fn(N)
    subsets = [S for k in range(len(M) + 1) for S in itertools.combinations(M.labels, k)]
    for image in itertools.permutations(N.labels):
        f = dict(zip(M.labels, image))
        if all(r1(S) == r2(f[x] for x in S) for S in subsets):
            return True
    return False


@given(rep_matroids(orders=(2, 3), max_rows=3, max_cols=6, min_cols=2), st.data())
def test_isomorphism_matches_permutation_search(M, data):
    M = si(M)
    assume(len(M) >= 2)
    i = data.draw(st.integers(0, len(M) - 1))
    v = tuple(data.draw(st.lists(st.integers(0, M.F.order - 1), min_size=M.rows, max_size=M.rows)))
    cols = list(M.columns)
    cols[i] = v
    N = from_columns(M.F, cols, labels=[f"y{j}" for j in range(len(cols))])
    assume(is_simple(N) and len(N) == len(M))
    assert matroid_isomorphic(M, N) == _brute_isomorphic(M, N)


def test_isomorphism_cap():
    with pytest.raises(SizeCapError):
        find_isomorphism(build_pg(2, 13), build_pg(2, 13))


def test_text_format_round_trip(tmp_path):
    E = build_epg(2, 3, 1)
    assert loads(dumps(E)) == E
    path = tmp_path / "e.txt"
    write_matroid(E, path)
    assert read_matroid(path) == E
    text = dumps(PG22, with_labels=False)
    M = loads(text)
    assert M.labels == tuple(str(i) for i in range(7))
    assert dumps(M, with_labels=False) == text


@pytest.mark.parametrize("text", ["", "2 1 2 3\n1 0 1\n", "2 1 1 2\n1 0 1\n", "x y\n", "2 1 1 2\n1 0\na\n",
                                  "2 1 1 1\n5\n"])
def test_text_format_errors(text):
    with pytest.raises(MatroidError):
        loads(text)


@given(rep_matroids(), st.data())
def test_rank_matches_span_enumeration(M, data):
    S = data.draw(st.sets(st.sampled_from(M.labels)))
    assert rank_of(M, S) == oracles.brute_rank(M.F, M.cols(sorted(S)), M.rows)


@given(rep_matroids(), st.data())
def test_rank_submodular_and_monotone(M, data):
    X = data.draw(st.sets(st.sampled_from(M.labels)))
    Y = data.draw(st.sets(st.sampled_from(M.labels)))
    assert rank_of(M, X) + rank_of(M, Y) >= rank_of(M, X | Y) + rank_of(M, X & Y)
    assert rank_of(M, X & Y) <= rank_of(M, X) <= rank_of(M, X | Y) <= len(X | Y)


@given(rep_matroids())
def test_simplify_idempotent_and_counts(M):
    N = si(M)
    assert is_simple(N)
    assert si(N) == N
    assert len(N) == num_points(M) == oracles.brute_num_points(M.F, M.columns)
    assert N.rank == M.rank


@given(rep_matroids(), st.data())
def test_contraction_properties(M, data):
    e = data.draw(st.sampled_from(M.labels))
    assume(e not in loops(M))
    Me = contract(M, [e])
    assert num_points(Me) <= num_points(M)
    assert Me.rank == M.rank - 1
    S = data.draw(st.sets(st.sampled_from(M.labels))) - {e}
    assert rank_of(Me, S) == rank_of(M, S | {e}) - 1


@given(rep_matroids(max_cols=7), st.data())
def test_contraction_and_simplification_commute(M, data):
    e = data.draw(st.sampled_from(M.labels))
    assume(e not in loops(M))
    A = si(contract(M, [e]))
    N = si(M)
    rep = simplify(M)[1].representative[e]
    B = si(contract(N, [rep]))
    assert matroid_isomorphic(A, B)
