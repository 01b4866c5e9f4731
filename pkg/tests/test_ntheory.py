import pytest

from cyclosum.errors import NotCoprime
from cyclosum.ntheory import (
    divisors,
    euler_phi,
    factorize,
    is_prime,
    multiplicative_order,
    primes_up_to,
)


def test_primes_up_to():
    assert primes_up_to(23) == [2, 3, 5, 7, 11, 13, 17, 19, 23]
    assert primes_up_to(1) == []


@pytest.mark.parametrize("n,expected", [
    (1, {}),
    (18, {2: 1, 3: 2}),
    (511, {7: 1, 73: 1}),
    (2**20 - 1, {3: 1, 5: 2, 11: 1, 31: 1, 41: 1}),
])
def test_factorize(n, expected):
    assert factorize(n) == expected


def test_divisors_and_phi():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert euler_phi(73) == 72
    assert euler_phi(9) == 6


@pytest.mark.parametrize("a,n,order", [
    (2, 73, 9),
    (3, 11, 5),
    (1, 17, 1),
    (2, 7, 3),
    (7, 19, 3),
])
def test_multiplicative_order(a, n, order):
    assert multiplicative_order(a, n) == order
    # brute-force cross-check
    e, v = 1, a % n
    while v != 1:
        v = (v * a) % n
        e += 1
    assert e == order


def test_multiplicative_order_rejects_common_factor():
    with pytest.raises(NotCoprime):
        multiplicative_order(6, 9)


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
