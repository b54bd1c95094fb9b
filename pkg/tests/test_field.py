from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

import oracles
from mdslab.errors import (
    BadInput,
    CompositeCharacteristic,
    DivisionByZero,
    FieldMismatch,
    ReducibleModulus,
)
from mdslab.field import (
    FieldElement,
    Poly,
    fe_inv,
    field_from_q,
    field_new,
    parse_field_token,
    poly_eval,
    vk_member,
)

FIELDS = [
    field_new(2),
    field_new(7),
    field_new(11),
    field_new(13),
    field_new(2, 3, (1, 1, 0, 1)),
    field_new(3, 2),
    field_new(2, 4),
]


def test_prime_field_construction():
    F = field_new(11)
    assert F.q == 11 and F.is_prime and F.token == "GF(11)"


def test_gf8_from_modulus():
    F = field_new(2, 3, [1, 1, 0, 1])
    assert F.q == 8
    assert F.token == "GF(2^3; modulus=1,1,0,1)"


def test_composite_characteristic():
    with pytest.raises(CompositeCharacteristic):
        field_new(4, 1)
    with pytest.raises(CompositeCharacteristic):
        field_from_q(12)


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        field_new(2, 2, [1, 0, 1])  # (x+1)^2


def test_default_modulus_is_smallest_irreducible():
    assert field_from_q(8).modulus == (1, 1, 0, 1)
    assert field_from_q(4).modulus == (1, 1, 1)
    assert field_from_q(9).modulus == (1, 0, 1)


def test_token_round_trip():
    for F in FIELDS:
        assert parse_field_token(F.token) == F
    with pytest.raises(BadInput):
        parse_field_token("GF 11")


def test_inverse_examples():
    F = field_new(11)
    assert fe_inv(F(8)) == 7
    for G in FIELDS:
        assert fe_inv(G(1)) == 1
    with pytest.raises(DivisionByZero):
        fe_inv(F(0))


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.token)
def test_tables_match_schoolbook_arithmetic(F):
    ref = oracles.Gf(F.p, F.modulus if F.m > 1 else ())
    for a in F.elements():
        for b in F.elements():
            assert F.add(a, b) == ref.add(a, b)
            assert F.mul(a, b) == ref.mul(a, b)
        if a:
            assert F.inv(a) == ref.inv(a)


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.token)
def test_multiplicative_group_is_cyclic(F):
    orders = []
    for a in F.nonzero():
        x, e = a, 1
        while x != 1:
            x, e = F.mul(x, a), e + 1
        orders.append(e)
    assert max(orders) == F.q - 1


@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(F, data):
    el = st.integers(0, F.q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(a, b) == F.add(a, F.neg(b))
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.q - 1) == 1


def test_element_wrapper_and_mismatch():
    F, G = field_new(11), field_new(13)
    x = F(3) * 4 + 1
    assert x == 2 and int(x) == 2
    assert F(3) / F(4) == F.mul(3, F.inv(4))
    with pytest.raises(FieldMismatch):
        _ = F(1) + G(1)
    assert isinstance(F(5) ** 2, FieldElement)


def test_poly_eval_examples():
    F = field_new(11)
    assert poly_eval(Poly(F, (7, 10, 3, 4)), 3) == 7
    assert poly_eval(Poly(F, (2, 5, 8, 3, 2)), 3) == 2
    assert poly_eval(Poly(F, ()), 5) == 0


def test_poly_arithmetic():
    F = field_new(7)
    f, g = Poly(F, (1, 1)), Poly(F, (6, 1))
    assert (f * g).coeffs == (6, 0, 1)
    assert (f + g).coeffs == (0, 2)
    assert (f - f).is_zero()
    assert Poly.from_terms(F, {3: 2, 0: 1}).coeffs == (1, 0, 0, 2)


def test_vk_member():
    F = field_new(11)
    assert vk_member(Poly(F, (7, 10, 0, 4)), 3)
    assert not vk_member(Poly.from_terms(F, {2: 1}), 3)
    assert vk_member(Poly(F, (2, 5, 0, 3)), 3)
    assert not vk_member(Poly.from_terms(F, {4: 1}), 3)


def test_vector_ops_match_scalar_ops():
    F = field_from_q(9)
    import numpy as np

    a = np.arange(9)
    b = (a * 5 + 2) % 9
    assert F.vmul(a, b).tolist() == [F.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert F.vadd(a, b).tolist() == [F.add(int(x), int(y)) for x, y in zip(a, b)]
    M = np.array([[1, 2], [3, 4]])
    N = np.array([[5, 6], [7, 8]])
    expect = [[F.add(F.mul(int(M[i, 0]), int(N[0, j])), F.mul(int(M[i, 1]), int(N[1, j]))) for j in range(2)] for i in range(2)]
    assert F.matmul(M, N).tolist() == expect
