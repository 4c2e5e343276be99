"""Factorization stack: primality, rho splitting, cyclotomic pieces."""

import pytest
from hypothesis import given, settings, strategies as st

from repwords.factoring import (
    FactorBudgetError,
    Factorization,
    cyclotomic,
    cyclotomic_split,
    divisors,
    factor,
    factor_quotient,
    is_probable_prime,
    primes_upto,
    radical,
)

# frozen oracle: small factorizations checked by hand multiplication
KNOWN = [
    (1, ()),
    (2, ((2, 1),)),
    (12, ((2, 2), (3, 1))),
    (97, ((97, 1),)),
    (2**10, ((2, 10),)),
    (507, ((3, 1), (13, 2))),
    (1000003, ((1000003, 1),)),
    (10**9 + 7, ((10**9 + 7, 1),)),
    # 2^64+1 splits as 274177 * 67280421310721 (classic)
    (2**64 + 1, ((274177, 1), (67280421310721, 1))),
]


@pytest.mark.parametrize("n,expect", KNOWN)
def test_factor_known(n, expect):
    assert factor(n).factors == expect


def test_factorization_value_and_merge():
    f = factor(360)
    assert f.value == 360
    g = factor(77)
    assert (f * g).value == 360 * 77
    assert radical(f) == 2 * 3 * 5
    with pytest.raises(ValueError):
        Factorization(((3, 1), (2, 1)))  # must be sorted
    with pytest.raises(ValueError):
        Factorization(((2, 0),))  # exponents start at 1


def test_primes_upto():
    assert primes_upto(1) == []
    assert primes_upto(2) == [2]
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes_upto(10_000)) == 1229
    # growing the sieve keeps earlier answers stable
    assert primes_upto(100_000)[-1] == 99991
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_is_probable_prime_edges():
    assert not is_probable_prime(0)
    assert not is_probable_prime(1)
    assert is_probable_prime(2)
    assert is_probable_prime(3)
    assert not is_probable_prime(4)
    # strong pseudoprime to base 2, composite: 2047 = 23 * 89
    assert not is_probable_prime(2047)
    # Carmichael numbers
    for n in (561, 1105, 1729, 41041, 825265):
        assert not is_probable_prime(n)
    assert is_probable_prime(2**89 - 1)  # Mersenne prime
    assert not is_probable_prime(2**67 - 1)  # 193707721 * 761838257287


def test_perfect_power_factoring():
    p = 1000003
    assert factor(p**4).factors == ((p, 4),)
    assert factor((2**31 - 1) ** 2).factors == ((2**31 - 1, 2),)


def test_factor_budget():
    # two tough 40-digit-ish cofactors with no small prime: must time out
    hard = (2**101 - 1) * (2**103 - 1)
    with pytest.raises(FactorBudgetError):
        factor(hard, budget_ms=1)


def test_factor_residue_hint():
    # prime divisors of b^4+1 are 2 or == 1 mod 8; the hint must not change results
    n = 1699**4 + 1
    assert factor(n, residue_modulus=8) == factor(n)


def test_cyclotomic_polynomials():
    assert cyclotomic(1).coeffs == (-1, 1)
    assert cyclotomic(2).coeffs == (1, 1)
    assert cyclotomic(6).coeffs == (1, -1, 1)
    assert cyclotomic(8).coeffs == (1, 0, 0, 0, 1)
    # degree = Euler phi
    assert len(cyclotomic(105).coeffs) - 1 == 48
    # 105 is the first index with a coefficient of magnitude 2
    assert min(cyclotomic(105).coeffs) == -2


def test_cyclotomic_product_identity():
    for m in (1, 2, 6, 12, 30):
        prod = 1
        for d in divisors(m):
            prod_poly = cyclotomic(d)
            prod *= prod_poly(7)
        assert prod == 7**m - 1


def test_divisors():
    assert divisors(1) == [1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


def test_cyclotomic_split_covers_quotient():
    # product of the pieces at X=b equals (b^(n*l)-1)/(b^l-1)
    for n, l, b in [(3, 1, 22), (3, 2, 68), (2, 2, 239), (2, 3, 19), (4, 1, 7), (6, 2, 5)]:
        pieces = cyclotomic_split(n, l)
        prod = 1
        for poly in pieces:
            prod *= poly(b)
        assert prod == (b ** (n * l) - 1) // (b**l - 1)


@pytest.mark.parametrize(
    "b,n,l,expect",
    [
        (22, 3, 1, ((3, 1), (13, 2))),  # 507 = 3 * 13^2
        (18, 3, 1, ((7, 3),)),  # 343
        (7, 2, 2, ((2, 1), (5, 2))),  # 50
        (10, 2, 1, ((11, 1),)),
    ],
)
def test_factor_quotient_known(b, n, l, expect):
    assert factor_quotient(b, n, l).factors == expect


def test_factor_quotient_matches_direct():
    for b in (2, 3, 10, 97, 1000):
        direct = factor((b**8 - 1) // (b**2 - 1))
        assert factor_quotient(b, 4, 2) == direct


@settings(max_examples=60)
@given(st.integers(min_value=2, max_value=200_000))
def test_factor_roundtrip(n):
    f = factor(n)
    assert f.value == n
    for p, e in f.factors:
        assert e >= 1 and is_probable_prime(p)
        assert n % p**e == 0 and n % p ** (e + 1) != 0


@settings(max_examples=30)
@given(st.integers(min_value=2, max_value=10**12))
def test_factor_roundtrip_large(n):
    f = factor(n)
    assert f.value == n
    assert all(is_probable_prime(p) for p, _ in f.factors)
