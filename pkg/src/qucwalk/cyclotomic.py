"""Exact arithmetic in Q[x] and in cyclotomic fields Q(zeta_n).

`RationalPoly` is a small immutable polynomial type over the rationals,
enough for building cyclotomic polynomials, the substitution
``g(x) = (2x)^d f((x + 1/x)/2)`` and a greedy factorization into cyclotomic
factors.

`CycNumber` is an element of Q(zeta_n), stored as an integer coefficient
vector over the power basis ``1, zeta, ..., zeta^(phi(n)-1)`` together with a
positive common denominator. Every vector is reduced modulo ``Phi_n``, so two
numbers in the same field are equal iff their stored data agree. Numbers from
different fields are compared after lifting both into Q(zeta_lcm).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import DomainError

__all__ = [
    "RationalPoly",
    "CycNumber",
    "AngleRational",
    "euler_phi",
    "cyclotomic_poly",
    "real_part_transform",
    "kronecker_cyclotomic_test",
    "chebyshev_T",
    "recognize_cos_angle",
    "unit_order",
]

# int64 products are only trusted below this magnitude
_INT64_SAFE = 2**62
FLOAT_TOL = 1e-9


# ---------------------------------------------------------------------------
# polynomials over Q


class RationalPoly:
    """Polynomial with exact rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "RationalPoly":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_monic(self) -> bool:
        return self.leading == 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        m = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (m - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (m - len(other.coeffs))
        return RationalPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = RationalPoly([1])
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other):
        other = _as_poly(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lead
            if c:
                quot[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return RationalPoly(quot), RationalPoly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        try:
            other = _as_poly(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}" + (f"*{mono}" if mono else "")
            terms.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _as_poly(x) -> RationalPoly:
    if isinstance(x, RationalPoly):
        return x
    if isinstance(x, (int, Rational)):
        return RationalPoly([x])
    raise TypeError(f"cannot interpret {x!r} as a polynomial")


X = RationalPoly([0, 1])


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"totient needs n >= 1, got {n}")
    result, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def _int_exact_div(num: list[int], den: Sequence[int]) -> list[int]:
    """Quotient of integer polynomials by a monic divisor; raises if inexact."""
    rem = list(num)
    dq = len(den) - 1
    quot = [0] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i]
        if c:
            quot[i - dq] = c
            for j, b in enumerate(den):
                rem[i - dq + j] -= c * b
    if any(rem[:dq]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def _cyclo_ints(n: int) -> tuple[int, ...]:
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _int_exact_div(num, _cyclo_ints(d))
    return tuple(num)


def cyclotomic_poly(m: int) -> RationalPoly:
    """``Phi_m``, obtained by dividing ``x^m - 1`` by ``Phi_d`` for the proper divisors d of m."""
    if m < 1:
        raise DomainError(f"cyclotomic index must be >= 1, got {m}")
    return RationalPoly(_cyclo_ints(m))


def real_part_transform(f: RationalPoly) -> RationalPoly:
    """Return ``(2x)^d * f((x + 1/x) / 2)`` for monic ``f`` of degree ``d``.

    The roots of the result are ``e^{+-i theta}`` for each root ``cos(theta)``
    of ``f``, so ``f`` has only real parts of roots of unity as roots iff the
    result is a product of cyclotomic polynomials.
    """
    if not f.is_monic():
        raise DomainError("real_part_transform needs a monic polynomial")
    d = f.degree
    x2p1 = RationalPoly([1, 0, 1])
    g = RationalPoly()
    for i, c in enumerate(f.coeffs):
        if c:
            g = g + RationalPoly.monomial(d - i, c * 2 ** (d - i)) * x2p1**i
    return g


def kronecker_cyclotomic_test(g: RationalPoly) -> list[int] | None:
    """Greedy split of ``g`` into cyclotomic factors.

    Returns the sorted multiset of indices ``m`` with ``g = prod Phi_m``, or
    ``None`` when ``g`` has a non-integer coefficient or some factor is left
    over.
    """
    if not g.is_integral():
        return None
    rest = g
    found: list[int] = []
    # phi(m) >= sqrt(m/2), so no m beyond 2*d^2 can divide
    m = 1
    while rest.degree > 0 and m <= 2 * rest.degree**2 + 2:
        if euler_phi(m) <= rest.degree:
            phi_m = cyclotomic_poly(m)
            while rest.degree >= phi_m.degree:
                q, r = divmod(rest, phi_m)
                if r.coeffs:
                    break
                rest = q
                found.append(m)
        m += 1
    if rest == RationalPoly([1]):
        return found
    return None


# ---------------------------------------------------------------------------
# cyclotomic fields


@lru_cache(maxsize=512)
def _reduction_table(n: int):
    """Rows ``x^j mod Phi_n`` for ``j < n``, as (int64-or-None, object) arrays and max |entry|."""
    phi = _cyclo_ints(n)
    d = len(phi) - 1
    cur = [0] * d
    cur[0] = 1
    rows = []
    for _ in range(n):
        rows.append(cur)
        top = cur[-1]
        nxt = [0] + cur[:-1]
        if top:
            nxt = [a - top * b for a, b in zip(nxt, phi[:-1])]
        cur = nxt
    bound = max(abs(v) for row in rows for v in row)
    table_obj = np.array(rows, dtype=object).reshape(n, d)
    table_i64 = np.array(rows, dtype=np.int64) if bound < _INT64_SAFE else None
    return table_i64, table_obj, bound


def _reduce(n: int, vec: Sequence[int]) -> tuple[int, ...]:
    """Reduce an exponent-indexed integer vector (length n) modulo Phi_n."""
    t64, tobj, bound = _reduction_table(n)
    arr = _small_ints(vec)
    if arr is not None and t64 is not None:
        m = int(np.abs(arr).max(initial=0))
        if m * bound * n < _INT64_SAFE:
            return tuple((arr @ t64).tolist())
    out = np.asarray([int(v) for v in vec], dtype=object) @ tobj
    return tuple(int(v) for v in out)


def _small_ints(vec) -> np.ndarray | None:
    """``vec`` as int64, or None if some entry needs more than 62 bits."""
    try:
        arr = np.asarray(vec, dtype=np.int64)
    except OverflowError:
        return None
    if arr.size and int(np.abs(arr).max()) >= _INT64_SAFE:
        return None
    return arr


def _convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    aa, bb = _small_ints(a), _small_ints(b)
    if aa is not None and bb is not None:
        ma = int(np.abs(aa).max(initial=0))
        mb = int(np.abs(bb).max(initial=0))
        if ma * mb * max(len(a), len(b)) < _INT64_SAFE:
            return np.convolve(aa, bb).tolist()
    return list(np.convolve(np.asarray(a, dtype=object), np.asarray(b, dtype=object)))


Scalar = Union[int, Fraction]


class CycNumber:
    """An exact element of the cyclotomic field Q(zeta_n), ``zeta_n = e^{2 pi i / n}``.

    Instances are immutable. Use `from_exponents`, `zeta` or `rational` to
    build them; arithmetic with ints, Fractions and CycNumbers of any modulus
    is supported (the result lives in the lcm field).
    """

    __slots__ = ("n", "num", "den")

    def __init__(self, n: int, num: Sequence[int], den: int = 1):
        if n < 1:
            raise DomainError(f"modulus must be >= 1, got {n}")
        d = euler_phi(n)
        if len(num) != d:
            raise DomainError(f"expected {d} reduced coefficients for n={n}, got {len(num)}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        num = [int(v) for v in num]
        if den < 0:
            den, num = -den, [-v for v in num]
        g = math.gcd(den, *num)
        if g > 1:
            den //= g
            num = [v // g for v in num]
        self.n = n
        self.num: tuple[int, ...] = tuple(num)
        self.den: int = den

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_exponents(cls, n: int, coeffs) -> "CycNumber":
        """Build ``sum c_j zeta_n^j`` from a mapping ``j -> c_j`` or a length-n sequence."""
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        fr = [(j % n, Fraction(c)) for j, c in items if c]
        den = math.lcm(1, *(c.denominator for _, c in fr))
        vec = [0] * n
        for j, c in fr:
            vec[j] += c.numerator * (den // c.denominator)
        return cls(n, _reduce(n, vec), den)

    @classmethod
    def zeta(cls, n: int, j: int = 1) -> "CycNumber":
        return cls.from_exponents(n, {j: 1})

    @classmethod
    def rational(cls, value: Scalar, n: int = 1) -> "CycNumber":
        q = Fraction(value)
        num = [0] * euler_phi(n)
        num[0] = q.numerator
        return cls(n, num, q.denominator)

    # -- structure -----------------------------------------------------------

    @property
    def key(self) -> tuple:
        """Hashable canonical data; equal keys iff equal values within one field."""
        return (self.n, self.num, self.den)

    def lift(self, m: int) -> "CycNumber":
        """Embed into Q(zeta_m); ``m`` must be a multiple of ``n``."""
        if m == self.n:
            return self
        if m % self.n:
            raise DomainError(f"cannot lift from Q(zeta_{self.n}) to Q(zeta_{m})")
        step = m // self.n
        vec = [0] * m
        for j, c in enumerate(self.num):
            vec[j * step] = c
        return CycNumber(m, _reduce(m, vec), self.den)

    def _coerce(self, other) -> "CycNumber | None":
        if isinstance(other, CycNumber):
            return other
        if isinstance(other, (int, Rational)):
            return CycNumber.rational(other, self.n)
        return None

    def _align(self, other):
        o = self._coerce(other)
        if o is None:
            return None, None
        if o.n == self.n:
            return self, o
        m = math.lcm(self.n, o.n)
        return self.lift(m), o.lift(m)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("not a rational number")
        return Fraction(self.num[0], self.den)

    def is_integral(self) -> bool:
        """Algebraic-integer test: the power basis of Z[zeta_n] is an integral basis."""
        return self.den == 1

    def conj(self) -> "CycNumber":
        vec = [0] * self.n
        for j, c in enumerate(self.num):
            vec[(-j) % self.n] += c
        return CycNumber(self.n, _reduce(self.n, vec), self.den)

    def is_real(self) -> bool:
        return self == self.conj()

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return CycNumber(a.n, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.n, [-v for v in self.num], self.den)

    def __sub__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            q = Fraction(other)
            return CycNumber(self.n, [v * q.numerator for v in self.num], self.den * q.denominator)
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        n = a.n
        if a.is_rational() or b.is_rational():
            s, r = (b, a) if a.is_rational() else (a, b)
            return CycNumber(n, [v * r.num[0] for v in s.num], s.den * r.den)
        prod_ = _convolve(a.num, b.num)
        vec = [0] * n
        for j, c in enumerate(prod_):
            if c:
                vec[j % n] += c
        return CycNumber(n, _reduce(n, vec), a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / q)
        if isinstance(other, CycNumber):
            return self * other.inverse()
        return NotImplemented

    def galois(self, k: int) -> "CycNumber":
        """Image under ``zeta_n -> zeta_n^k`` for k coprime to n."""
        if math.gcd(k, self.n) != 1:
            raise DomainError(f"{k} is not a unit mod {self.n}")
        vec = [0] * self.n
        for j, c in enumerate(self.num):
            vec[(j * k) % self.n] += c
        return CycNumber(self.n, _reduce(self.n, vec), self.den)

    def inverse(self) -> "CycNumber":
        """``1 / self``: the product of the other Galois conjugates over the field norm."""
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        if self.is_rational():
            return CycNumber.rational(1 / self.to_fraction(), self.n)
        rest = CycNumber.rational(1, self.n)
        for k in range(2, self.n):
            if math.gcd(k, self.n) == 1:
                rest = rest * self.galois(k)
        norm = (self * rest).to_fraction()
        return rest / norm

    def __eq__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return a.num == b.num and a.den == b.den

    __hash__ = None  # equality spans fields; use .key within one field

    def __complex__(self) -> complex:
        ang = 2 * np.pi * np.arange(len(self.num)) / self.n
        w = np.cos(ang) + 1j * np.sin(ang)
        arr = _small_ints(self.num)
        if arr is not None and int(np.abs(arr).max(initial=0)) < 2**53 and self.den < 2**53:
            cs = arr.astype(float) / self.den
        else:
            cs = np.array([float(Fraction(c, self.den)) for c in self.num])
        return complex(np.dot(cs, w))

    def __float__(self) -> float:
        return complex(self).real

    def __repr__(self):
        body = ", ".join(str(v) for v in self.num)
        tail = f"/{self.den}" if self.den != 1 else ""
        return f"CycNumber(n={self.n}, [{body}]{tail})"


# ---------------------------------------------------------------------------
# Chebyshev polynomials and angle recognition


def chebyshev_T(k: int, mu):
    """Exact ``T_k(mu)`` via ``T_k = 2 mu T_{k-1} - T_{k-2}``.

    ``mu`` may be an int, a Fraction or a CycNumber; the result has the same
    type (ints are promoted to Fraction).
    """
    if k < 0:
        raise DomainError(f"Chebyshev index must be >= 0, got {k}")
    if isinstance(mu, CycNumber):
        if mu.is_rational():
            return CycNumber.rational(chebyshev_T(k, mu.to_fraction()), mu.n)
        one = CycNumber.rational(1, mu.n)
    else:
        mu = Fraction(mu)
        one = Fraction(1)
    if k == 0:
        return one
    prev, cur = one, mu
    two_mu = mu * 2
    for _ in range(k - 1):
        prev, cur = cur, two_mu * cur - prev
    return cur


@dataclass(frozen=True, order=True)
class AngleRational:
    """The angle ``p*pi/q`` with ``0 <= p <= q`` and ``gcd(p, q) == 1``."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 1 or not 0 <= self.p <= self.q or math.gcd(self.p, self.q) != 1:
            raise DomainError(f"({self.p}, {self.q}) is not a reduced angle in [0, pi]")

    @classmethod
    def reduced(cls, p: int, q: int) -> "AngleRational":
        g = math.gcd(p, q)
        return cls(p // g, q // g)

    @property
    def radians(self) -> float:
        return math.pi * self.p / self.q

    def cos(self) -> float:
        return math.cos(self.radians)

    def as_cyc(self) -> CycNumber:
        """``cos(p pi / q)`` as the exact number ``(zeta_2q^p + zeta_2q^-p) / 2``."""
        m = 2 * self.q
        half = Fraction(1, 2)
        if self.p % self.q == 0:  # zeta^p == zeta^-p
            return CycNumber.from_exponents(m, {self.p: 1})
        return CycNumber.from_exponents(m, {self.p: half, m - self.p: half})

    def __str__(self):
        return f"{self.p}pi/{self.q}"


def _sign_power(p: int) -> int:
    return -1 if p % 2 else 1


def _verifies(mu, mu_float: float, p: int, q: int) -> bool:
    if not 0 <= p <= q:
        return False
    if abs(math.cos(math.pi * p / q) - mu_float) > FLOAT_TOL:
        return False
    return chebyshev_T(q, mu) == _sign_power(p)


def recognize_cos_angle(mu_exact, mu_float: float | None = None, n: int | None = None) -> AngleRational | None:
    """Find reduced ``(p, q)`` with ``mu_exact == cos(p pi / q)``, or None.

    Every answer is certified exactly: ``T_q(mu) = (-1)^p`` makes ``mu`` a
    root of ``T_q -+ 1``, and the float pins down which root. The search runs
    over ``q <= 4n`` (``n`` defaults to the modulus of ``mu_exact``): first the
    continued-fraction candidate for ``arccos(mu)/pi``, then an ascending
    sweep. ``2*mu`` must be an algebraic integer for any cosine of a rational
    angle, which rejects most non-members without a sweep.
    """
    if isinstance(mu_exact, CycNumber):
        if not mu_exact.is_real():
            raise DomainError("cosine recognition needs a real number")
        mu = mu_exact.to_fraction() if mu_exact.is_rational() else mu_exact
        if n is None:
            n = mu_exact.n
    else:
        mu = Fraction(mu_exact)
    if n is None:
        n = 1
    if mu_float is None:
        mu_float = float(mu)
    if abs(mu_float) > 1 + FLOAT_TOL:
        return None

    two_mu = mu * 2
    integral = two_mu.is_integral() if isinstance(two_mu, CycNumber) else two_mu.denominator == 1
    if not integral:
        return None

    bound = 4 * n
    x = math.acos(max(-1.0, min(1.0, mu_float))) / math.pi
    cand = Fraction(x).limit_denominator(bound)
    if _verifies(mu, mu_float, cand.numerator, cand.denominator):
        return AngleRational.reduced(cand.numerator, cand.denominator)

    for q in range(1, bound + 1):
        p = round(q * x)
        # T_q(mu) = +-1 forces q*x to be an integer; the float test only skips hopeless q
        if abs(q * x - p) > 1e-6:
            continue
        if _verifies(mu, mu_float, p, q):
            return AngleRational.reduced(p, q)
    return None


def unit_order(angle: AngleRational) -> int:
    """Multiplicative order of ``e^{i p pi / q}`` (same for its conjugate)."""
    return angle.q if angle.p % 2 == 0 else 2 * angle.q
