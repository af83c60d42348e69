import itertools

import pytest
from hypothesis import given, strategies as st

from extpg.field import (
    FieldError,
    decompose,
    embed_subfield,
    field_of_order,
    frobenius,
    is_irreducible,
    make_field,
    pick_omega,
    prime_power,
    subfield_elements,
)
from extpg.oracles import poly_add, poly_mul

ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81, 121, 125, 243, 256, 343, 625, 729, 1024]


def brute_irreducible_quadratics(p):
    """Monic x^2 + b x + c with no root in GF(p)."""
    out = []
    for b in range(p):
        for c in range(p):
            if all((x * x + b * x + c) % p for x in range(p)):
                out.append((c, b, 1))
    return out


def test_prime_field_gf2():
    F = make_field(2, 1)
    assert F.order == 2
    assert F.add(1, 1) == 0


def test_gf4_modulus_and_omega_product():
    F = make_field(2, 2)
    assert F.modulus == (1, 1, 1)
    w = 2
    assert F.mul(w, F.add(w, 1)) == 1


def test_gf9_least_irreducible_quadratic():
    F = make_field(3, 2)
    # least by (c1, c0)
    candidates = sorted(brute_irreducible_quadratics(3), key=lambda m: (m[1], m[0]))
    assert F.modulus == candidates[0]


@pytest.mark.parametrize("p,e", [(2, 3), (2, 4), (3, 3), (5, 2), (7, 2), (2, 8)])
def test_modulus_is_irreducible_and_least(p, e):
    F = make_field(p, e)
    assert is_irreducible(list(F.modulus), p)
    for high_first in itertools.product(range(p), repeat=e):
        poly = list(reversed(high_first)) + [1]
        if tuple(poly) == F.modulus:
            break
        assert not is_irreducible(poly, p)


def test_gf9_inverses():
    F = make_field(3, 2)
    for g in range(1, 9):
        assert F.mul(F.inv(g), g) == 1


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        make_field(2, 2).inv(0)


@pytest.mark.parametrize("p,e", [(4, 1), (1, 1), (2, 0), (2, 17)])
def test_bad_fields(p, e):
    with pytest.raises(FieldError):
        make_field(p, e)


def test_prime_power():
    assert prime_power(81) == (3, 4)
    with pytest.raises(FieldError):
        prime_power(12)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9, 16])
def test_axioms_exhaustive(q):
    F = field_of_order(q)
    els = list(F.elements())
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        for b in els:
            assert F.mul(a, b) == F.mul(b, a)
            assert F.add(a, b) == F.add(b, a)
            for c in els:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


@given(st.sampled_from(ORDERS), st.data())
def test_tables_match_polynomial_arithmetic(q, data):
    F = field_of_order(q)
    a = data.draw(st.integers(0, q - 1))
    b = data.draw(st.integers(0, q - 1))
    c = data.draw(st.integers(0, q - 1))
    assert F.mul(a, b) == poly_mul(F, a, b)
    assert F.add(a, b) == poly_add(F, a, b)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    if a:
        assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("q", ORDERS)
def test_generator_is_primitive(q):
    F = field_of_order(q)
    seen = {F.pow(F.generator, i) for i in range(q - 1)}
    assert seen == set(range(1, q))


def test_frobenius_gf4():
    F = make_field(2, 2)
    assert frobenius(F, 2, 2) == 3  # w^2 = w + 1
    assert frobenius(F, 1, 2) == 1
    with pytest.raises(FieldError):
        frobenius(F, 1, 3)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_frobenius_is_automorphism(q):
    F = field_of_order(q * q)
    for a in F.elements():
        for b in F.elements():
            assert frobenius(F, F.add(a, b), q) == F.add(frobenius(F, a, q), frobenius(F, b, q))
            assert frobenius(F, F.mul(a, b), q) == F.mul(frobenius(F, a, q), frobenius(F, b, q))


def test_subfield_examples():
    assert subfield_elements(make_field(2, 2), 2) == {0, 1}
    assert subfield_elements(make_field(3, 2), 3) == {0, 1, 2}
    F16 = make_field(2, 4)
    S = subfield_elements(F16, 4)
    assert len(S) == 4
    with pytest.raises(FieldError):
        subfield_elements(F16, 8)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16])
def test_subfield_closed(q):
    F = field_of_order(q * q)
    S = subfield_elements(F, q)
    assert len(S) == q
    for a in S:
        for b in S:
            assert F.add(a, b) in S and F.mul(a, b) in S
        if a:
            assert F.inv(a) in S


@pytest.mark.parametrize("Q,q", [(4, 2), (9, 3), (16, 4), (16, 2), (64, 8), (81, 9), (25, 5)])
def test_embedding_is_homomorphism(Q, q):
    big, small = field_of_order(Q), field_of_order(q)
    emb = embed_subfield(big, small)
    assert set(emb) == subfield_elements(big, q)
    for a in small.elements():
        for b in small.elements():
            assert emb[small.add(a, b)] == big.add(emb[a], emb[b])
            assert emb[small.mul(a, b)] == big.mul(emb[a], emb[b])


def test_pick_omega_examples():
    assert pick_omega(make_field(2, 2)) == 2
    F9 = make_field(3, 2)
    w = pick_omega(F9)
    scan = min(x for x in F9.elements() if F9.pow(x, 3) != x)
    assert w == scan


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_decompose_bijection(q):
    F = field_of_order(q * q)
    w = pick_omega(F, q)
    S = subfield_elements(F, q)
    images = set()
    for x in F.elements():
        v, v2 = decompose(F, w, x, q)
        assert v in S and v2 in S
        assert F.add(v, F.mul(w, v2)) == x
        images.add((v, v2))
    assert len(images) == q * q
    assert decompose(F, w, w, q) == (0, 1)
    for s in S:
        assert decompose(F, w, s, q) == (s, 0)
