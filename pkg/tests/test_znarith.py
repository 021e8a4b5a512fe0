import math

import pytest
from hypothesis import given, strategies as st

from qucwalk.errors import DomainError
from qucwalk.znarith import (
    Factorization,
    ResidueSet,
    connection_set,
    crt_components,
    crt_reconstruct,
    factorize,
    is_prime,
    legendre,
    minus_one_in_Q,
    quadratic_units,
    unit_group,
)

PRIMES_TO_97 = [p for p in range(3, 98) if all(p % d for d in range(2, p))]


@pytest.mark.parametrize(
    "n, expected",
    [(20, [(2, 2), (5, 1)]), (2, [(2, 1)]), (24, [(2, 3), (3, 1)]), (97, [(97, 1)]), (1000, [(2, 3), (5, 3)])],
)
def test_factorize_examples(n, expected):
    assert list(factorize(n)) == expected


@pytest.mark.parametrize("n", [1, 0, -4])
def test_factorize_rejects_small(n):
    with pytest.raises(DomainError):
        factorize(n)


@given(st.integers(2, 10**5))
def test_factorize_multiplies_back(n):
    f = factorize(n)
    assert math.prod(p**t for p, t in f) == n
    assert all(is_prime(p) for p in f.primes)
    assert list(f.primes) == sorted(f.primes)


def test_factorization_validates():
    with pytest.raises(DomainError):
        Factorization(12, ((2, 2), (3, 2)))
    with pytest.raises(DomainError):
        Factorization(4, ((4, 1),))


def test_residue_set_rejects_out_of_range():
    with pytest.raises(DomainError):
        ResidueSet(5, (1, 5))


@pytest.mark.parametrize("n, expected", [(8, {1, 3, 5, 7}), (10, {1, 3, 7, 9}), (2, {1})])
def test_unit_group(n, expected):
    assert set(unit_group(n)) == expected


@pytest.mark.parametrize("n, expected", [(8, {1}), (5, {1, 4}), (20, {1, 9})])
def test_quadratic_units(n, expected):
    assert set(quadratic_units(n)) == expected


@pytest.mark.parametrize("n, expected", [(10, {1, 9}), (20, {1, 9, 11, 19}), (4, {1, 3})])
def test_connection_set(n, expected):
    assert set(connection_set(n)) == expected


def _q_size_prime_power(p, t):
    if p == 2:
        return 1 if t <= 2 else 2 ** (t - 3)
    return p ** (t - 1) * (p - 1) // 2


def test_q_sizes_multiplicative_up_to_500():
    for n in range(2, 501):
        f = factorize(n)
        for p, t in f:
            assert len(quadratic_units(p**t)) == _q_size_prime_power(p, t)
        assert len(quadratic_units(n)) == math.prod(_q_size_prime_power(p, t) for p, t in f)


def test_connection_set_shape_up_to_500():
    for n in range(2, 501):
        v = connection_set(n)
        assert 0 not in v and 1 in v
        assert v.is_symmetric()
        all_split = all(minus_one_in_Q(p, t) for p, t in factorize(n))
        assert len(v) == len(quadratic_units(n)) * (1 if all_split else 2)


def test_legendre_examples():
    assert all(legendre(1, p) == 1 for p in PRIMES_TO_97)
    assert legendre(-1, 5) == 1
    assert legendre(2, 5) == -1
    assert legendre(10, 5) == 0


@pytest.mark.parametrize("p", [2, 9, 15, 1, -3])
def test_legendre_rejects(p):
    with pytest.raises(DomainError):
        legendre(3, p)


def test_legendre_matches_enumeration():
    for p in PRIMES_TO_97:
        squares = {(x * x) % p for x in range(1, p)}
        for a in range(-p, 2 * p):
            r = a % p
            expected = 0 if r == 0 else (1 if r in squares else -1)
            assert legendre(a, p) == expected


@given(st.sampled_from(PRIMES_TO_97), st.integers(1, 500), st.integers(1, 500))
def test_legendre_multiplicative(p, a, b):
    assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


@pytest.mark.parametrize("p, t, expected", [(5, 2, True), (3, 1, False), (2, 3, False), (2, 1, True), (2, 2, False)])
def test_minus_one_in_Q_examples(p, t, expected):
    assert minus_one_in_Q(p, t) is expected


def test_minus_one_in_Q_closed_rule():
    for p in [2] + PRIMES_TO_97[:12]:
        for t in range(1, 5 if p < 20 else 3):
            assert minus_one_in_Q(p, t) == (p % 4 == 1 or (p, t) == (2, 1))


@pytest.mark.parametrize("n, a, expected", [(20, 13, (1, 3)), (20, 0, (0, 0)), (12, 7, (3, 1))])
def test_crt_components(n, a, expected):
    assert crt_components(factorize(n), a) == expected


@given(st.integers(2, 5000), st.data())
def test_crt_round_trip(n, data):
    a = data.draw(st.integers(0, n - 1))
    f = factorize(n)
    assert crt_reconstruct(f, crt_components(f, a)) == a


def test_crt_components_range():
    with pytest.raises(DomainError):
        crt_components(factorize(20), 20)
