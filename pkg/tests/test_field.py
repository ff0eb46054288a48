import pytest
from hypothesis import given, strategies as st

from drinfeld_gl2.algebra import gf
from drinfeld_gl2.algebra.field import MODULUS_TABLE, field_spec

from oracles import NaiveGF
from strategies import FIELD_SIZES


@pytest.mark.parametrize("q", FIELD_SIZES)
def test_multiplication_matches_polynomial_model(q):
    F = gf(q)
    N = NaiveGF(F.p, F.spec.modulus)
    for a in range(q):
        for b in range(q):
            assert F.mul(a, b) == N.mul(a, b)
            assert F.add(a, b) == N.add(a, b)


@pytest.mark.parametrize("q", FIELD_SIZES)
def test_inverse_and_order(q):
    F = gf(q)
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == 1
        k = F.order(a)
        assert (q - 1) % k == 0 and F.pow(a, k) == 1
        assert all(F.pow(a, j) != 1 for j in range(1, k))


@given(st.sampled_from(FIELD_SIZES), st.data())
def test_field_axioms(q, data):
    F = gf(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(a, b) == F.add(a, F.neg(b))


@pytest.mark.parametrize("q", (2, 4, 8, 16))
def test_char2_square_root(q):
    F = gf(q)
    for a in range(q):
        s = F.sqrt_char2(a)
        assert F.mul(s, s) == a


def test_modulus_table_is_irreducible():
    for q, mod in MODULUS_TABLE.items():
        spec = field_spec(q, mod)
        assert spec.q == q


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        field_spec(4, (1, 0, 1))      # g^2 + 1 = (g + 1)^2 over F_2


def test_non_prime_power_rejected():
    with pytest.raises(ValueError):
        gf(6)


def test_integers_land_in_prime_field():
    F = gf(9)
    assert F.from_int(4) == 1 and F.from_int(-1) == 2
