import cmath
import csv
import io
import math
from fractions import Fraction

import pytest

from qucwalk.cyclotomic import AngleRational
from qucwalk.errors import DomainError
from qucwalk.spectra import (
    SPECTRUM_CSV_HEADER,
    brute_chi_prime_power,
    chi_prime_power,
    gauss_sum_scaled,
    graph_spec,
    lambda_charsum,
    lambda_closed,
    spectrum_of,
)

A = AngleRational


def angles(*pairs):
    return {A(p, q) for p, q in pairs}


def prime_powers(limit):
    out = []
    for p in range(2, limit + 1):
        if all(p % d for d in range(2, p)):
            q = p
            while q <= limit:
                out.append((p, round(math.log(q, p))))
                q *= p
    return out


@pytest.mark.parametrize("p, expected", [(5, math.sqrt(5)), (3, -1j * math.sqrt(3)), (7, -1j * math.sqrt(7))])
def test_gauss_sum(p, expected):
    assert abs(complex(gauss_sum_scaled(p)) - expected) < 1e-12


@pytest.mark.parametrize("p", [2, 9, 1])
def test_gauss_sum_needs_odd_prime(p):
    with pytest.raises(DomainError):
        gauss_sum_scaled(p)


@pytest.mark.parametrize(
    "p, t, a, expected",
    [(2, 2, 1, -1j), (3, 1, 1, cmath.exp(-2j * math.pi / 3)), (2, 3, 2, -1j)],
)
def test_chi_examples(p, t, a, expected):
    assert abs(complex(chi_prime_power(p, t, a)) - expected) < 1e-12


def test_chi_three_branch_value():
    # (sqrt3 * (-i) - 1) / 2
    assert abs(complex(chi_prime_power(3, 1, 1)) - (math.sqrt(3) * -1j - 1) / 2) < 1e-12


def test_chi_matches_brute_force_up_to_128():
    for p, t in prime_powers(128):
        for a in range(p**t):
            assert chi_prime_power(p, t, a) == brute_chi_prime_power(p, t, a), (p, t, a)


def test_chi_range_checks():
    with pytest.raises(DomainError):
        chi_prime_power(5, 1, 5)
    with pytest.raises(DomainError):
        chi_prime_power(6, 1, 0)


@pytest.mark.parametrize(
    "n, a, expected",
    [(4, 1, 0), (4, 0, 2), (8, 1, math.sqrt(2)), (20, 0, 4), (8, 2, 0), (9, 3, -3)],
)
def test_lambda_examples(n, a, expected):
    spec = graph_spec(n)
    for f in (lambda_charsum, lambda_closed):
        assert abs(complex(f(spec, a)) - expected) < 1e-12


def test_lambda_range_checks():
    spec = graph_spec(10)
    for f in (lambda_charsum, lambda_closed):
        with pytest.raises(DomainError):
            f(spec, 10)
        with pytest.raises(DomainError):
            f(spec, -1)


def test_lambda_closed_matches_charsum_on_mixed_factorizations():
    # a spread of split/non-split prime powers; the full n <= 200 sweep lives in the acceptance suite
    for n in (15, 21, 39, 40, 45, 52, 65, 84, 91, 120):
        spec = graph_spec(n)
        for a in range(n):
            assert lambda_closed(spec, a) == lambda_charsum(spec, a)


@pytest.mark.parametrize("n", list(range(2, 61)))
def test_spectrum_row_invariants(n):
    table = spectrum_of(n)
    assert table[0].mu == 1 and table.degree == len(graph_spec(n).connection_set)
    for row in table:
        assert row.lam.is_real() and row.mu.is_real()
        assert abs(row.mu_float) <= 1 + 1e-12
        if row.angle is not None:
            assert math.cos(row.angle.radians) == pytest.approx(row.mu_float, abs=1e-9)


def test_n4_multiset():
    assert [r.mu for r in spectrum_of(4)] == [1, 0, -1, 0]


@pytest.mark.parametrize(
    "ns, expected",
    [
        ((8, 16, 32, 64, 128), angles((0, 1), (1, 1), (1, 4), (3, 4), (1, 2))),
        ((9, 27, 81), angles((0, 1), (1, 2), (2, 3))),
        ((25, 125), angles((0, 1), (2, 5), (4, 5), (1, 2))),
        ((12, 36, 108), angles((0, 1), (1, 1), (1, 6), (5, 6), (1, 3), (2, 3), (1, 2))),
        ((18, 54, 162), angles((0, 1), (1, 1), (1, 3), (2, 3), (1, 2))),
    ],
)
def test_named_families(ns, expected):
    for n in ns:
        assert spectrum_of(n).distinct_angles() == expected, n


def test_three_excludes_zero():
    # Q_3 = {1}, so the graph is a triangle: mu in {1, -1/2}
    assert spectrum_of(3).distinct_angles() == angles((0, 1), (2, 3))


def test_five_cycle():
    assert spectrum_of(5).distinct_angles() == angles((0, 1), (2, 5), (4, 5))


def test_six_cycle_has_no_zero():
    # 2*3^t family: 0 only shows up once t >= 2
    assert spectrum_of(6).distinct_angles() == angles((0, 1), (1, 1), (1, 3), (2, 3))


def test_twenty():
    got = {a for a in spectrum_of(20).distinct_angles()}
    assert got == {A.reduced(j, 10) for j in (0, 2, 4, 5, 6, 8, 10)}


def test_aperiodic_example_has_unrecognized_mu():
    # K_7: mu = -1/6 is not a cosine of a rational angle
    table = spectrum_of(7)
    bad = [r for r in table.distinct() if r.angle is None]
    assert [r.mu.to_fraction() for r in bad] == [Fraction(-1, 6)]


def test_csv():
    text = spectrum_of(12).to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == SPECTRUM_CSV_HEADER
    assert len(rows) == 13
    # G_{Z_12} is the 12-cycle
    assert rows[1] == ["0", "2", "1", "0", "1"]


def test_distinct_sorted_descending():
    mus = [r.mu_float for r in spectrum_of(20).distinct()]
    assert mus == sorted(mus, reverse=True)
