"""Modular arithmetic over Z_n.

Units, squares of units, the symmetric connection set ``V_n = Q_n u (-Q_n)``,
Legendre symbols and CRT coordinates. Everything here is exact integer
arithmetic; primality and factorization use trial division, which is plenty
for moduli up to ~10^4.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Iterator

from .errors import DomainError

__all__ = [
    "Factorization",
    "ResidueSet",
    "is_prime",
    "factorize",
    "unit_group",
    "quadratic_units",
    "connection_set",
    "legendre",
    "minus_one_in_Q",
    "crt_components",
    "crt_reconstruct",
]


@dataclass(frozen=True)
class Factorization:
    """Prime factorization ``n = prod(p**t for p, t in factors)``."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"factorization needs n >= 2, got {self.n}")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise DomainError("primes must be strictly increasing")
        if any(t < 1 or not is_prime(p) for p, t in self.factors):
            raise DomainError(f"invalid factor list {self.factors}")
        if prod(p**t for p, t in self.factors) != self.n:
            raise DomainError(f"factors {self.factors} do not multiply to {self.n}")

    @property
    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**t for p, t in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        for q, t in self.factors:
            if q == p:
                return t
        return 0

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class ResidueSet:
    """Sorted set of residues modulo ``modulus``."""

    modulus: int
    elements: tuple[int, ...]

    def __post_init__(self):
        els = self.elements
        if any(not 0 <= x < self.modulus for x in els):
            raise DomainError(f"residues out of range for modulus {self.modulus}")
        if list(els) != sorted(set(els)):
            raise DomainError("residues must be sorted and distinct")

    @classmethod
    def from_iterable(cls, modulus: int, values: Iterable[int]) -> "ResidueSet":
        return cls(modulus, tuple(sorted({v % modulus for v in values})))

    def negate(self) -> "ResidueSet":
        return ResidueSet.from_iterable(self.modulus, (-x for x in self.elements))

    def union(self, other: "ResidueSet") -> "ResidueSet":
        if other.modulus != self.modulus:
            raise DomainError("moduli differ")
        return ResidueSet.from_iterable(self.modulus, self.elements + other.elements)

    def is_symmetric(self) -> bool:
        s = set(self.elements)
        return all((-x) % self.modulus in s for x in s)

    def __contains__(self, x) -> bool:
        return (x % self.modulus) in set(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def _check_modulus(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"modulus must be an integer >= 2, got {n!r}")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> Factorization:
    """Factor ``n >= 2`` by trial division.

    >>> factorize(20).factors
    ((2, 2), (5, 1))
    """
    _check_modulus(n)
    factors = []
    m, d = n, 2
    while d * d <= m:
        if m % d == 0:
            t = 0
            while m % d == 0:
                m //= d
                t += 1
            factors.append((d, t))
        d += 1 if d == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def unit_group(n: int) -> ResidueSet:
    _check_modulus(n)
    return ResidueSet(n, tuple(a for a in range(n) if gcd(a, n) == 1))


def quadratic_units(n: int) -> ResidueSet:
    """Squares of the units of Z_n, i.e. ``Q_n``."""
    _check_modulus(n)
    return ResidueSet.from_iterable(n, (r * r for r in unit_group(n)))


def connection_set(n: int) -> ResidueSet:
    """``V_n = Q_n u (-Q_n)``, the connection set of the quadratic unitary Cayley graph."""
    q = quadratic_units(n)
    return q.union(q.negate())


def legendre(a: int, p: int) -> int:
    """Legendre symbol ``(a / p)`` for an odd prime ``p``, via Euler's criterion."""
    if p < 3 or not is_prime(p):
        raise DomainError(f"Legendre symbol needs an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def minus_one_in_Q(p: int, t: int) -> bool:
    """Whether ``-1`` is the square of a unit modulo ``p**t`` (checked by enumeration)."""
    if not is_prime(p) or t < 1:
        raise DomainError(f"need a prime and t >= 1, got p={p}, t={t}")
    q = p**t
    return (q - 1) in quadratic_units(q)


def crt_components(fact: Factorization, a: int) -> tuple[int, ...]:
    """Residues of ``a`` modulo each prime power of ``fact``, in factor order."""
    if not 0 <= a < fact.n:
        raise DomainError(f"residue {a} out of range for n={fact.n}")
    return tuple(a % q for q in fact.prime_powers)


def crt_reconstruct(fact: Factorization, comps: Iterable[int]) -> int:
    n = fact.n
    total = 0
    for q, c in zip(fact.prime_powers, comps, strict=True):
        m = n // q
        total += c * m * pow(m, -1, q)
    return total % n
