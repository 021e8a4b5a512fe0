"""Adjacency and discriminant spectra of quadratic unitary Cayley graphs.

Eigenvalues of ``Cay(Z_n, V_n)`` are computed two independent ways:

* `lambda_charsum` evaluates the character sum ``sum_{r in V_n} zeta_n^{-a r}``
  directly;
* `lambda_closed` splits ``a`` over the prime powers of ``n`` and multiplies
  closed-form character sums over ``Q_{p^t}``, which are built from Legendre
  symbols and the quadratic Gauss sum.

`discriminant_spectrum` insists the two agree exactly before it reports
anything.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from .cyclotomic import AngleRational, CycNumber, _reduce, recognize_cos_angle
from .errors import ConsistencyError, DomainError
from .znarith import (
    Factorization,
    ResidueSet,
    connection_set,
    factorize,
    is_prime,
    legendre,
    minus_one_in_Q,
)

__all__ = [
    "GraphSpec",
    "SpectrumRow",
    "SpectrumTable",
    "graph_spec",
    "gauss_sum_scaled",
    "chi_prime_power",
    "brute_chi_prime_power",
    "lambda_charsum",
    "lambda_charsum_all",
    "lambda_closed",
    "discriminant_spectrum",
    "spectrum_of",
    "SPECTRUM_CSV_HEADER",
]

SPECTRUM_CSV_HEADER = ("a", "lambda_float_re", "mu_float", "angle_p", "angle_q")


@dataclass(frozen=True)
class GraphSpec:
    """The quadratic unitary Cayley graph on Z_n, described by its connection set."""

    n: int
    factorization: Factorization
    connection_set: ResidueSet
    split: tuple[bool, ...]  # per prime power: is -1 a square of a unit there?

    @property
    def degree(self) -> int:
        return len(self.connection_set)

    @property
    def r_split(self) -> int:
        return sum(self.split)

    def neighbors(self, u: int) -> list[int]:
        return sorted((u + s) % self.n for s in self.connection_set)

    def adjacency_lists(self) -> list[list[int]]:
        return [self.neighbors(u) for u in range(self.n)]


@lru_cache(maxsize=1024)
def graph_spec(n: int) -> GraphSpec:
    fact = factorize(n)
    split = tuple(minus_one_in_Q(p, t) for p, t in fact)
    return GraphSpec(n, fact, connection_set(n), split)


@lru_cache(maxsize=None)
def gauss_sum_scaled(p: int) -> CycNumber:
    """``sum_{k in Z_p} zeta_p^{-k^2}``, i.e. ``sqrt(p) * G_p(1)`` kept exact."""
    if p < 3 or not is_prime(p):
        raise DomainError(f"Gauss sum needs an odd prime, got {p}")
    terms: dict[int, int] = {}
    for k in range(p):
        j = (-k * k) % p
        terms[j] = terms.get(j, 0) + 1
    return CycNumber.from_exponents(p, terms)


@lru_cache(maxsize=None)
def chi_prime_power(p: int, t: int, a: int) -> CycNumber:
    """Closed form of ``chi_a(Q_{p^t}) = sum_{j in Q_{p^t}} zeta_{p^t}^{-a j}``.

    The result lives in Q(zeta_{p^t}).
    """
    if not is_prime(p) or t < 1:
        raise DomainError(f"need a prime power, got p={p}, t={t}")
    q = p**t
    if not 0 <= a < q:
        raise DomainError(f"residue {a} out of range for modulus {q}")

    if p == 2:
        if t == 1:
            return CycNumber.rational(-1 if a % 2 else 1, 2)
        if t == 2:
            return CycNumber.zeta(4, -a)
        m = 2 ** (t - 3)
        if a % m == 0 and (a // m) % 2 == 1:
            return CycNumber.from_exponents(q, {-a: m})
        if a % (2 * m) == 0:
            # m * (-i)^(a / 2^(t-2))
            return CycNumber.from_exponents(4, {-(a // (2 * m)): m}).lift(q)
        return CycNumber.rational(0, q)

    base = p ** (t - 1)
    if a == 0:
        return CycNumber.rational(base * (p - 1) // 2, q)
    if a % base == 0:
        g = gauss_sum_scaled(p) * legendre(a // base, p)
        return ((g - 1) * Fraction(base, 2)).lift(q)
    return CycNumber.rational(0, q)


def brute_chi_prime_power(p: int, t: int, a: int) -> CycNumber:
    """Direct sum over the squares of units mod ``p^t``; the oracle for `chi_prime_power`."""
    q = p**t
    squares = {(r * r) % q for r in range(q) if r % p}
    terms: dict[int, int] = {}
    for j in squares:
        e = (-a * j) % q
        terms[e] = terms.get(e, 0) + 1
    return CycNumber.from_exponents(q, terms)


def _check_residue(spec: GraphSpec, a: int) -> None:
    if not 0 <= a < spec.n:
        raise DomainError(f"residue {a} out of range for n={spec.n}")


def lambda_charsum(spec: GraphSpec, a: int) -> CycNumber:
    """``lambda_a = sum_{r in V_n} zeta_n^{-a r}``, summed exactly."""
    _check_residue(spec, a)
    n = spec.n
    vec = [0] * n
    for r in spec.connection_set:
        vec[(-a * r) % n] += 1
    return CycNumber(n, _reduce(n, vec))


def lambda_charsum_all(spec: GraphSpec) -> list[CycNumber]:
    """`lambda_charsum` for every ``a``, reduced with one integer matrix product."""
    from .cyclotomic import _reduction_table

    n = spec.n
    counts = np.zeros((n, n), dtype=np.int64)
    rs = np.array(spec.connection_set.elements, dtype=np.int64)
    for a in range(n):
        np.add.at(counts[a], (-a * rs) % n, 1)
    t64, tobj, bound = _reduction_table(n)
    if t64 is not None and spec.degree * bound * n < 2**62:
        reduced = counts @ t64
    else:
        reduced = counts.astype(object) @ tobj
    return [CycNumber(n, [int(v) for v in row]) for row in reduced]


def _twists(fact: Factorization) -> tuple[int, ...]:
    # 1/n = sum_i c_i / q_i (mod 1) with c_i = (n/q_i)^{-1} mod q_i, so the
    # character x -> zeta_n^{-a x} factors as prod_i zeta_{q_i}^{-(c_i a) x_i}
    n = fact.n
    return tuple(pow(n // q, -1, q) for q in fact.prime_powers)


def lambda_closed(spec: GraphSpec, a: int) -> CycNumber:
    """``lambda_a`` from the prime-power closed forms.

    With the split prime powers first (those where ``-1`` is a square of a
    unit) the eigenvalue is ``prod chi_split * [prod chi_rest + conj(prod chi_rest)]``,
    or just ``prod chi`` when every prime power splits.
    """
    _check_residue(spec, a)
    n = spec.n
    split_part = CycNumber.rational(1, n)
    rest_part = CycNumber.rational(1, n)
    any_rest = False
    for (p, t), c, is_split in zip(spec.factorization, _twists(spec.factorization), spec.split):
        q = p**t
        chi = chi_prime_power(p, t, (a * c) % q)
        if chi.is_zero():
            return CycNumber.rational(0, n)
        chi = chi.lift(n)
        if is_split:
            split_part = split_part * chi
        else:
            rest_part = rest_part * chi
            any_rest = True
    if not any_rest:
        return split_part
    return split_part * (rest_part + rest_part.conj())


@dataclass(frozen=True)
class SpectrumRow:
    a: int
    lam: CycNumber
    mu: CycNumber
    mu_float: float
    angle: AngleRational | None

    @property
    def lambda_float(self) -> float:
        return complex(self.lam).real


@dataclass(frozen=True)
class SpectrumTable:
    """Per-index adjacency and discriminant eigenvalues of one graph."""

    n: int
    degree: int
    rows: tuple[SpectrumRow, ...]

    def __iter__(self) -> Iterator[SpectrumRow]:
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, a: int) -> SpectrumRow:
        return self.rows[a]

    def distinct(self) -> list[SpectrumRow]:
        """One representative row per distinct mu, largest mu first."""
        seen: dict = {}
        for row in self.rows:
            seen.setdefault(row.mu.key, row)
        return sorted(seen.values(), key=lambda r: -r.mu_float)

    def distinct_angles(self) -> set[AngleRational | None]:
        return {row.angle for row in self.distinct()}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SPECTRUM_CSV_HEADER)
        for row in self.rows:
            ang = row.angle
            w.writerow(
                [
                    row.a,
                    f"{row.lambda_float:.12g}",
                    f"{row.mu_float:.12g}",
                    "" if ang is None else ang.p,
                    "" if ang is None else ang.q,
                ]
            )
        return buf.getvalue()


def discriminant_spectrum(spec: GraphSpec) -> SpectrumTable:
    """``mu_a = lambda_a / k`` for every ``a``, with recognized rational angles.

    Raises ConsistencyError if the character sum and the closed form differ
    for any ``a``.
    """
    n, k = spec.n, spec.degree
    sums = lambda_charsum_all(spec)
    angle_cache: dict = {}
    rows = []
    for a in range(n):
        lam = sums[a]
        closed = lambda_closed(spec, a)
        if lam != closed:
            raise ConsistencyError(f"n={n}, a={a}: character sum {lam!r} != closed form {closed!r}")
        mu = lam / k
        mu_float = complex(mu).real
        if mu.key not in angle_cache:
            angle_cache[mu.key] = recognize_cos_angle(mu, mu_float, n)
        rows.append(SpectrumRow(a, lam, mu, mu_float, angle_cache[mu.key]))
    if rows[0].mu != 1:
        raise ConsistencyError(f"n={n}: mu_0 = {rows[0].mu!r}, expected 1")
    return SpectrumTable(n, k, tuple(rows))


@lru_cache(maxsize=256)
def spectrum_of(n: int) -> SpectrumTable:
    """Cached `discriminant_spectrum` of the graph on Z_n."""
    return discriminant_spectrum(graph_spec(n))
