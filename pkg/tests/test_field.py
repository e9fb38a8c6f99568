import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fqlab.errors import DegreeZero, DivByZero, NonPrime
from fqlab.field import field_of_order, is_prime, make_field, parse_field, smallest_irreducible

ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 49, 1024]


def test_prime_field_modulus_is_x():
    F = make_field(3, 1)
    assert F.q == 3
    assert F.modulus == (0, 1)


def test_f9_modulus_is_x2_plus_1():
    F = make_field(3, 2)
    assert F.modulus == (1, 0, 1)


def test_non_prime_characteristic():
    with pytest.raises(NonPrime):
        make_field(4, 1)


def test_degree_zero():
    with pytest.raises(DegreeZero):
        make_field(3, 0)


def test_f9_product_example():
    F = make_field(3, 2)
    x_plus_1 = F.from_coeffs([1, 1])
    x_plus_2 = F.from_coeffs([2, 1])
    assert F.mul(x_plus_1, x_plus_2) == 1


def test_f5_inverse():
    F = make_field(5)
    assert F.inv(2) == 3
    with pytest.raises(DivByZero):
        F.inv(0)


def test_trace_examples():
    F5 = make_field(5)
    assert [F5.trace(a) for a in range(5)] == list(range(5))
    F9 = make_field(3, 2)
    root = F9.from_coeffs([0, 1])
    assert F9.mul(root, root) == F9.neg(1)
    assert F9.trace(root) == 0
    assert F9.trace(1) == 2


def test_character_examples():
    F5 = make_field(5)
    assert F5.chi(0) == pytest.approx(1)
    assert F5.chi(1) == pytest.approx(cmath.exp(2j * math.pi / 5))
    for q in ORDERS[:-1]:
        F = field_of_order(q)
        assert abs(F.chi_table.sum()) < 1e-10


def test_smallest_irreducible_is_irreducible():
    for p, n in [(2, 2), (2, 3), (2, 4), (3, 3), (5, 2), (7, 2)]:
        mod = smallest_irreducible(p, n)
        assert len(mod) == n + 1 and mod[-1] == 1
        F = make_field(p, n)
        assert F.modulus == mod


def test_parse_field_literals():
    assert parse_field("q=5").q == 5
    assert parse_field("q=3^2").q == 9
    assert parse_field("3^2") is make_field(3, 2)
    assert parse_field("9") is make_field(3, 2)
    with pytest.raises(ValueError):
        parse_field("6")


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_vectorized_matches_scalar():
    F = make_field(2, 10)  # beyond the full-table limit
    rng = np.random.default_rng(0)
    a = rng.integers(0, F.q, 200)
    b = rng.integers(0, F.q, 200)
    prod = F.mul(a, b)
    for i in range(0, 200, 17):
        assert prod[i] == F.mul(int(a[i]), int(b[i]))


def test_multiplicative_group_is_cyclic():
    for q in ORDERS:
        F = field_of_order(q)
        seen = {F.pow(F.primitive, k) for k in range(q - 1)}
        assert len(seen) == q - 1 and 0 not in seen


@pytest.mark.parametrize("q", ORDERS)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_field_axioms(q, data):
    F = field_of_order(q)
    el = st.integers(0, q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(a, b) == F.add(a, F.neg(b))
    assert F.mul(a, 1) == a and F.add(a, 0) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.mul(F.div(b, a), a) == b


@pytest.mark.parametrize("q", [3, 4, 8, 9, 25])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_trace_is_additive_and_character_is_homomorphism(q, data):
    F = field_of_order(q)
    a = data.draw(st.integers(0, q - 1))
    b = data.draw(st.integers(0, q - 1))
    assert F.trace(F.add(a, b)) == (F.trace(a) + F.trace(b)) % F.p
    assert F.chi(F.add(a, b)) == pytest.approx(F.chi(a) * F.chi(b))


@pytest.mark.parametrize("q", [3, 4, 5, 8, 9])
def test_character_orthogonality(q):
    F = field_of_order(q)
    t = F.elements
    table = F.chi_table[F.mul(t[:, None], t[None, :])]
    gram = table @ np.conj(table).T
    assert np.allclose(gram, q * np.eye(q), atol=1e-9)


def test_subfield_membership():
    F = make_field(3, 2)
    members = [a for a in range(9) if F.is_subfield_element(a, 1)]
    assert members == [0, 1, 2]


def test_coefficient_roundtrip():
    F = make_field(3, 3)
    for a in range(F.q):
        assert F.from_coeffs(F.to_coeffs(a)) == a
