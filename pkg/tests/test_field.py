from __future__ import annotations

import random

import pytest

from CoLoc.core.exceptions import DivisionByZeroError, FieldError, FieldTooSmallError, UsageError
from CoLoc.field import PrimeField, add, enumerate_elements, inv, is_prime, mul, neg, power, sub


def test_is_prime_small_and_large_values() -> None:
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert is_prime(65537)
    assert is_prime(2**61 - 1)
    assert not is_prime(561)
    assert not is_prime(2**61 + 1)


@pytest.mark.parametrize("modulus", [0, 1, 4, 100, 2**62 + 1])
def test_prime_field_rejects_invalid_modulus(modulus: int) -> None:
    with pytest.raises(FieldError):
        PrimeField(modulus)


def test_field_operations_over_gf7() -> None:
    F = PrimeField(7)
    assert add(F(3), F(5)) == F(1)
    assert sub(F(2), F(5)) == F(4)
    assert mul(F(3), F(5)) == F(1)
    assert neg(F(3)) == F(4)
    assert inv(F(3)) == F(5)
    assert power(F(3), 6) == F.one
    assert power(F(0), 0) == F.one


def test_inverse_of_zero_raises() -> None:
    F = PrimeField(97)
    with pytest.raises(DivisionByZeroError):
        inv(F.zero)
    with pytest.raises(DivisionByZeroError):
        F.one / 0


def test_mixed_fields_are_rejected() -> None:
    with pytest.raises(UsageError, match="mismatched fields"):
        add(PrimeField(5)(1), PrimeField(7)(1))


def test_operators_coerce_ints_and_reduce() -> None:
    F = PrimeField(13)
    x = F(10)
    assert x + 5 == F(2)
    assert 5 - x == F(8)
    assert (x * x) / x == x
    assert x**-1 * x == 1
    assert F(-1) == F(12)
    assert int(F(27)) == 1


@pytest.mark.parametrize("modulus", [7, 97])
def test_field_axioms_hold_on_seeded_triples(modulus: int) -> None:
    F = PrimeField(modulus)
    rng = random.Random(modulus)
    for _ in range(10_000):
        a, b, c = (F.random_element(rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + F.zero == a
        assert a * F.one == a
        assert a + neg(a) == F.zero
        assert sub(a, b) + b == a
        if a:
            assert a * inv(a) == F.one


def test_inverse_matches_fermat_power_on_gf7() -> None:
    F = PrimeField(7)
    for value in range(1, 7):
        a = F(value)
        assert inv(a) == power(a, 5)
        assert mul(a, inv(a)) == F.one


def test_enumerate_returns_canonical_anchors() -> None:
    F = PrimeField(5)
    assert [int(z) for z in enumerate_elements(F, 3)] == [0, 1, 2]
    assert enumerate_elements(F, 0) == []


def test_enumerate_beyond_field_size_names_the_bound() -> None:
    F = PrimeField(5)
    with pytest.raises(FieldTooSmallError, match="needs at least 6") as excinfo:
        F.enumerate(6)
    assert excinfo.value.required == 6
    assert excinfo.value.available == 5


def test_anchors_skip_excluded_values() -> None:
    F = PrimeField(7)
    assert [int(z) for z in F.anchors(exclude=[F(0), F(2)])] == [1, 3, 4, 5, 6]


def test_random_vector_nonzero_is_never_all_zero() -> None:
    F = PrimeField(2)
    rng = random.Random(0)
    for _ in range(50):
        assert any(F.random_vector(rng, 2, nonzero=True))
