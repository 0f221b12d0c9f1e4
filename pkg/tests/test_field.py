import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flowering.field import (
    CompositeModulus,
    DivisionByZero,
    FieldError,
    PrimeField,
    TooLarge,
    TooSmall,
    canonical_bytes,
    create_prime_field,
    field_arithmetic,
    is_probable_prime,
    sample_uniform,
)

F101 = PrimeField(101)
MERSENNE31 = 2**31 - 1


def test_create_small_prime():
    assert create_prime_field(101).byte_len == 1


def test_composite_rejected():
    with pytest.raises(CompositeModulus):
        create_prime_field(91)


def test_mersenne_byte_len():
    assert create_prime_field(MERSENNE31).byte_len == 4


@pytest.mark.parametrize("bad, exc", [(2, TooSmall), (1, TooSmall), (2**62 + 135, TooLarge)])
def test_modulus_range(bad, exc):
    with pytest.raises(exc):
        PrimeField(bad)


def test_primality_against_trial_division():
    def slow(n):
        return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))

    assert all(is_probable_prime(n) == slow(n) for n in range(2000))
    # strong pseudoprimes to several small bases
    assert not is_probable_prime(3215031751)
    assert not is_probable_prime(3825123056546413051)


def test_arithmetic_examples():
    assert field_arithmetic(F101(100), F101(2), "add").value == 1
    assert field_arithmetic(F101(7), F101(3), "div").value == 36
    assert all(field_arithmetic(F101(x), F101(1), "mul").value == x for x in range(101))
    with pytest.raises(ValueError):
        field_arithmetic(F101(1), F101(2), "pow")


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        F101(3) / F101(0)


def test_mixed_fields_rejected():
    with pytest.raises(FieldError):
        F101(3) + PrimeField(103)(3)


def test_canonical_bytes_examples():
    assert canonical_bytes(F101(0)) == b"\x00"
    assert canonical_bytes(F101(100)) == b"\x64"
    assert canonical_bytes(PrimeField(521)(258)) == b"\x02\x01"


def test_non_canonical_decoding_rejected():
    with pytest.raises(FieldError):
        F101.from_bytes(b"\x65")
    with pytest.raises(FieldError):
        F101.from_bytes(b"\x00\x00")


def test_sampling_in_range_and_deterministic():
    a = sample_uniform(F101, random.Random(5))
    b = sample_uniform(F101, random.Random(5))
    assert a == b and 0 <= a.value < 101


def test_sampling_uniform_chi_square():
    f7 = PrimeField(7)
    src = random.Random(1)
    draws = 100_000
    counts = Counter(f7.sample(src) for _ in range(draws))
    expected = draws / 7
    sigma = (draws * (1 / 7) * (6 / 7)) ** 0.5
    assert all(abs(counts[r] - expected) <= 5 * sigma for r in range(7))


elements = st.integers(min_value=0, max_value=MERSENNE31 - 1)


@settings(max_examples=300)
@given(elements, elements, elements)
def test_ring_axioms(a, b, c):
    F = PrimeField(MERSENNE31)
    x, y, z = F(a), F(b), F(c)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)


@given(elements, elements.filter(lambda v: v != 0))
def test_div_mul_round_trip(a, b):
    F = PrimeField(MERSENNE31)
    assert (F(a) / F(b)) * F(b) == F(a)


@given(st.integers(min_value=0, max_value=520))
def test_bytes_round_trip(v):
    F = PrimeField(521)
    assert F.from_bytes(canonical_bytes(F(v))) == v


def test_large_modulus_arithmetic():
    p = 2**61 - 1
    F = PrimeField(p)
    x = F(p - 1)
    assert (x * x).value == 1
    assert x.inverse() == x
