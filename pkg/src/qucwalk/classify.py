"""Periodicity, period and perfect state transfer for quadratic unitary Cayley graphs.

Computed answers come from the exact spectrum. The published classification
(which n are periodic, the period table, the PST set) is transcribed
separately in the ``paper_*`` functions and only ever compared against.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .cyclotomic import AngleRational, CycNumber, chebyshev_T, unit_order
from .errors import DomainError
from .grover import (
    build_operators,
    identity_deviation,
    mapped_u_spectrum,
    pst_numeric,
)
from .spectra import GraphSpec, SpectrumTable, graph_spec, spectrum_of
from .znarith import factorize

__all__ = [
    "PeriodicityVerdict",
    "PSTResult",
    "ClassificationReport",
    "cayley_topology",
    "is_periodic",
    "compute_period",
    "paper_period",
    "paper_periodic",
    "pst_decide",
    "paper_pst",
    "classify_report",
    "SIM_CUTOFF",
    "SIM_TOL",
]

SIM_CUTOFF = 300
SIM_TOL = 1e-8
# U^d must be visibly far from I at proper divisors d of the period
MINIMALITY_GAP = 1e-3
PAPER_PST_SET = frozenset({2, 4, 8, 6, 12, 24, 10, 20})


@dataclass(frozen=True)
class PeriodicityVerdict:
    periodic: bool
    witness: tuple[tuple[float, AngleRational | None], ...]

    def __bool__(self) -> bool:
        return self.periodic

    @property
    def failing(self) -> list[float]:
        return [mu for mu, ang in self.witness if ang is None]


@dataclass(frozen=True)
class PSTResult:
    tau: int
    partner: int
    gamma: complex | None = None


@dataclass
class ClassificationReport:
    n: int
    degree: int
    connection_set: tuple[int, ...]
    bipartite: bool
    b1: int
    mu: list[tuple[float, AngleRational | None]]
    periodic: bool
    period: int | None
    paper_periodic: bool
    paper_period: int | None
    pst: PSTResult | None
    paper_pst: bool
    flags: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        pst = None
        if self.pst is not None:
            pst = {"tau": self.pst.tau, "partner": self.pst.partner}
            if self.pst.gamma is not None:
                pst["gamma"] = [_g12(self.pst.gamma.real), _g12(self.pst.gamma.imag)]
        return {
            "n": self.n,
            "degree": self.degree,
            "connection_set": list(self.connection_set),
            "bipartite": self.bipartite,
            "b1": self.b1,
            "mu": [
                {"mu": _g12(m), "p": None if a is None else a.p, "q": None if a is None else a.q}
                for m, a in self.mu
            ],
            "periodic": self.periodic,
            "period": self.period,
            "paper_periodic": self.paper_periodic,
            "paper_period": self.paper_period,
            "pst": pst,
            "paper_pst": self.paper_pst,
            "flags": dict(self.flags),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def _g12(x: float) -> float:
    v = float(f"{x:.12g}")
    return 0.0 if v == 0 else v


def cayley_topology(spec: GraphSpec) -> tuple[int, bool]:
    """``(b1, bipartite)`` without building the arc space.

    A connected circulant is bipartite iff n is even and every step is odd.
    """
    n, k = spec.n, spec.degree
    b1 = n * k // 2 - n + 1
    bipartite = n % 2 == 0 and all(s % 2 for s in spec.connection_set)
    return b1, bipartite


def is_periodic(table: SpectrumTable) -> PeriodicityVerdict:
    """Periodic iff every distinct discriminant eigenvalue is the real part of a root of unity."""
    witness = tuple((r.mu_float, r.angle) for r in table.distinct())
    return PeriodicityVerdict(all(a is not None for _, a in witness), witness)


def compute_period(table: SpectrumTable, b1: int, bipartite: bool) -> int:
    """lcm of the orders of the distinct eigenvalues of U."""
    if not is_periodic(table):
        raise DomainError(f"n={table.n}: graph is not periodic")
    eigs = mapped_u_spectrum(table, b1, bipartite)
    return math.lcm(*(unit_order(e.angle) for e in eigs))


def paper_periodic(n: int) -> bool:
    """Literal periodicity predicate: n = 2^a 3^b (a+b > 0) or 2^d 5^g (g >= 1, d <= 2)."""
    f = factorize(n)
    primes = set(f.primes)
    if primes <= {2, 3}:
        return True
    return primes <= {2, 5} and 5 in primes and f.exponent(2) <= 2


def paper_period(n: int) -> int | None:
    """The published period table; None stands for an infinite period."""
    f = factorize(n)
    a, b, g = f.exponent(2), f.exponent(3), f.exponent(5)
    primes = set(f.primes)
    if n == 2:
        return 2
    if n == 4:
        return 4
    if primes == {2}:
        return 8
    if primes <= {2, 3} and b >= 1 and a <= 2:
        return 12
    if primes <= {2, 5} and g >= 1 and a <= 2:
        return 20
    if primes == {2, 3} and a >= 3:
        return 24
    return None


def paper_pst(n: int) -> bool:
    return n in PAPER_PST_SET


def _chebyshev_sequence(mu: CycNumber, upto: int) -> list:
    """Exact ``T_0(mu), ..., T_upto(mu)``."""
    if mu.is_rational():
        x = mu.to_fraction()
        seq = [1, x]
    else:
        seq = [CycNumber.rational(1, mu.n), mu]
    two_mu = seq[1] * 2
    while len(seq) <= upto:
        seq.append(two_mu * seq[-1] - seq[-2])
    return seq[: upto + 1]


def _pm_one(value) -> int | None:
    if value == 1:
        return 1
    if value == -1:
        return -1
    return None


def pst_decide(table: SpectrumTable, period: int | None, n: int) -> tuple[int, int] | None:
    """Smallest PST time from vertex 0 using the circulant Chebyshev criterion.

    Needs n even, ``T_tau(mu_j) = +-1`` for all j and ``T_tau(mu_j) != T_tau(mu_{j+1})``
    for consecutive j. Returns ``(tau, n // 2)`` or None.
    """
    if n % 2 or period is None:
        return None
    seqs = {}
    for row in table.distinct():
        seqs[row.mu.key] = _chebyshev_sequence(row.mu, period)
    keys = [row.mu.key for row in table]
    for tau in range(1, period + 1):
        signs = {}
        for key, seq in seqs.items():
            s = _pm_one(seq[tau])
            if s is None:
                break
            signs[key] = s
        else:
            vals = [signs[k] for k in keys]
            if all(x != y for x, y in zip(vals, vals[1:])):
                return tau, n // 2
    return None


def _symmetry_columns(ops, spec: GraphSpec) -> list[int]:
    # Translations x -> x + c and dilations x -> q x (q in Q_n) are graph
    # automorphisms commuting with U; together they carry the arcs (0, 1) and
    # (0, -1) onto every arc, so these two columns of U^tau - I carry all of
    # its entries.
    idx = ops.arcs.index
    return sorted({idx[(0, 1)], idx[(0, spec.n - 1)]})


def classify_report(n: int, simulate: bool = True, sim_cutoff: int = SIM_CUTOFF) -> ClassificationReport:
    """Run the exact pipeline for one n and, for small periodic graphs, confirm it by simulation."""
    spec = graph_spec(n)
    table = spectrum_of(n)
    b1, bipartite = cayley_topology(spec)
    verdict = is_periodic(table)
    period = compute_period(table, b1, bipartite) if verdict else None
    decided = pst_decide(table, period, n)

    pst = None
    sim_ok = None
    if decided is not None:
        pst = PSTResult(*decided)
    if simulate and n <= sim_cutoff and verdict:
        ops = build_operators(spec.adjacency_lists())
        cols = _symmetry_columns(ops, spec)
        sim_ok = identity_deviation(ops, period, cols) <= SIM_TOL
        for p in factorize(period).primes if period > 1 else ():
            sim_ok = sim_ok and identity_deviation(ops, period // p, cols) > MINIMALITY_GAP
        numeric = pst_numeric(ops, 0, n // 2, period) if n % 2 == 0 else None
        numeric_tau = None if numeric is None else numeric[0]
        decided_tau = None if decided is None else decided[0]
        sim_ok = sim_ok and numeric_tau == decided_tau
        if numeric is not None and decided is not None:
            pst = PSTResult(decided[0], decided[1], numeric[1])

    p_periodic = paper_periodic(n)
    p_period = paper_period(n)
    p_pst = paper_pst(n)
    flags = {
        "periodic_matches_paper": verdict.periodic == p_periodic,
        "period_matches_paper": period == p_period,
        "pst_matches_paper": (pst is not None) == p_pst,
        "simulation_confirms": sim_ok,
    }
    return ClassificationReport(
        n=n,
        degree=spec.degree,
        connection_set=spec.connection_set.elements,
        bipartite=bipartite,
        b1=b1,
        mu=list(verdict.witness),
        periodic=verdict.periodic,
        period=period,
        paper_periodic=p_periodic,
        paper_period=p_period,
        pst=pst,
        paper_pst=p_pst,
        flags=flags,
    )
