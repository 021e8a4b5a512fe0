"""Grover walk operators on finite simple graphs.

Arcs are ordered lexicographically by ``(origin, terminus)``. Operators are
kept as scipy CSR matrices; `WalkOperators.dense` materializes one when a
dense algorithm (eigenvalues, matrix powers) needs it.

Conventions:

* ``N[x, a] = 1/sqrt(deg x)`` if ``x`` is the terminus of arc ``a``;
* ``C = 2 N^* N - I`` (Grover coin), ``R[a, b] = 1`` iff ``a = b^{-1}`` (shift);
* ``U = R C`` and ``P = N R N^*`` (discriminant).
"""

from __future__ import annotations

import cmath
import csv
import math
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .cyclotomic import AngleRational
from .errors import DomainError, NumericError

__all__ = [
    "ArcSpace",
    "WalkOperators",
    "MappedEigenvalue",
    "build_operators",
    "circulant_graph",
    "cycle_graph",
    "complete_graph",
    "vertex_state",
    "evolve",
    "direct_u_spectrum",
    "distinct_unit_values",
    "mapped_u_spectrum",
    "pst_numeric",
    "pst_search",
    "identity_deviation",
    "dump_operator_csv",
]

UNIT_TOL = 1e-8
PST_TOL = 1e-8


@dataclass(frozen=True)
class ArcSpace:
    arcs: tuple[tuple[int, int], ...]
    index: Mapping[tuple[int, int], int]
    inverse: np.ndarray  # inverse[i] is the index of the reversed arc

    @classmethod
    def from_neighbors(cls, neighbors: Sequence[Sequence[int]]) -> "ArcSpace":
        arcs = tuple(sorted((u, v) for u, nbrs in enumerate(neighbors) for v in nbrs))
        index = {a: i for i, a in enumerate(arcs)}
        inverse = np.array([index[(v, u)] for u, v in arcs], dtype=np.int64)
        return cls(arcs, index, inverse)

    def __len__(self) -> int:
        return len(self.arcs)

    @property
    def origins(self) -> np.ndarray:
        return np.array([a[0] for a in self.arcs], dtype=np.int64)

    @property
    def termini(self) -> np.ndarray:
        return np.array([a[1] for a in self.arcs], dtype=np.int64)


@dataclass(frozen=True)
class WalkOperators:
    arcs: ArcSpace
    N: sp.csr_matrix
    R: sp.csr_matrix
    C: sp.csr_matrix
    U: sp.csr_matrix
    P: sp.csr_matrix
    A: sp.csr_matrix
    degrees: np.ndarray
    b1: int
    bipartite: bool

    @property
    def num_vertices(self) -> int:
        return self.N.shape[0]

    @property
    def num_edges(self) -> int:
        return len(self.arcs) // 2

    def dense(self, name: str) -> np.ndarray:
        return getattr(self, name).toarray()


def _normalize_graph(graph) -> list[list[int]]:
    """Accept neighbor lists/mappings or a square 0/1 adjacency matrix."""
    if isinstance(graph, Mapping):
        nv = len(graph)
        if set(graph) != set(range(nv)):
            raise DomainError("vertex labels must be 0..V-1")
        nbrs = [sorted(set(graph[u])) for u in range(nv)]
    elif isinstance(graph, np.ndarray) or sp.issparse(graph):
        adj = graph.toarray() if sp.issparse(graph) else np.asarray(graph)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise DomainError("adjacency matrix must be square")
        if not np.array_equal(adj, adj.T) or not np.isin(adj, (0, 1)).all():
            raise DomainError("adjacency matrix must be symmetric 0/1")
        nbrs = [list(np.flatnonzero(row)) for row in adj]
    else:
        nbrs = [sorted(set(vs)) for vs in graph]
    nv = len(nbrs)
    for u, vs in enumerate(nbrs):
        for v in vs:
            if not 0 <= v < nv:
                raise DomainError(f"vertex {v} out of range")
            if v == u:
                raise DomainError(f"loop at vertex {u}; graph must be simple")
            if u not in nbrs[v]:
                raise DomainError(f"edge {u}-{v} is not symmetric")
    return [[int(v) for v in vs] for vs in nbrs]


def _two_color(nbrs: list[list[int]]) -> tuple[bool, bool]:
    """Return (connected, bipartite) by breadth-first 2-coloring."""
    color = [-1] * len(nbrs)
    color[0] = 0
    queue = deque([0])
    bipartite = True
    while queue:
        u = queue.popleft()
        for v in nbrs[u]:
            if color[v] < 0:
                color[v] = 1 - color[u]
                queue.append(v)
            elif color[v] == color[u]:
                bipartite = False
    return all(c >= 0 for c in color), bipartite


def circulant_graph(n: int, connection: Iterable[int]) -> list[list[int]]:
    s = sorted({c % n for c in connection})
    if 0 in s:
        raise DomainError("connection set must not contain 0")
    if any((-c) % n not in s for c in s):
        raise DomainError("connection set must be closed under negation")
    return [sorted((u + c) % n for c in s) for u in range(n)]


def cycle_graph(n: int) -> list[list[int]]:
    if n < 3:
        raise DomainError("a cycle needs at least 3 vertices")
    return circulant_graph(n, (1, -1))


def complete_graph(n: int) -> list[list[int]]:
    return [[v for v in range(n) if v != u] for u in range(n)]


def build_operators(graph) -> WalkOperators:
    """Build N, R, C, U, P for a simple connected graph."""
    nbrs = _normalize_graph(graph)
    nv = len(nbrs)
    if nv == 0 or not any(nbrs):
        raise DomainError("graph has no edges")
    if any(not vs for vs in nbrs):
        raise DomainError("graph has an isolated vertex")
    connected, bipartite = _two_color(nbrs)
    if not connected:
        raise DomainError("graph is disconnected")

    arcs = ArcSpace.from_neighbors(nbrs)
    na = len(arcs)
    deg = np.array([len(vs) for vs in nbrs], dtype=np.int64)
    term = arcs.termini
    cols = np.arange(na)

    N = sp.csr_matrix((1 / np.sqrt(deg[term]).astype(complex), (term, cols)), shape=(nv, na))
    R = sp.csr_matrix((np.ones(na, dtype=complex), (arcs.inverse, cols)), shape=(na, na))
    eye = sp.identity(na, dtype=complex, format="csr")
    C = (2 * (N.conj().T @ N) - eye).tocsr()
    U = (R @ C).tocsr()
    P = (N @ R @ N.conj().T).tocsr()
    A = sp.csr_matrix((np.ones(na), (arcs.origins, term)), shape=(nv, nv))
    for M in (C, U, P):
        M.eliminate_zeros()

    b1 = na // 2 - nv + 1
    return WalkOperators(arcs, N, R, C, U, P, A, deg, b1, bipartite)


def vertex_state(ops: WalkOperators, u: int) -> np.ndarray:
    """The vertex-type state ``N^* e_u``."""
    if not 0 <= u < ops.num_vertices:
        raise DomainError(f"vertex {u} out of range")
    return np.asarray(ops.N.getrow(u).conj().toarray()).ravel()


def evolve(ops: WalkOperators, state: np.ndarray, t: int) -> np.ndarray:
    if t < 0:
        raise DomainError("time must be non-negative")
    s = np.asarray(state, dtype=complex)
    for _ in range(t):
        s = ops.U @ s
    return s


def direct_u_spectrum(ops: WalkOperators) -> np.ndarray:
    """All eigenvalues of U from a dense eigensolver."""
    U = ops.dense("U")
    if np.abs(U.imag).max(initial=0) == 0:
        U = U.real
    try:
        eig = np.linalg.eigvals(U)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigensolver failed: {exc}") from exc
    off = np.abs(np.abs(eig) - 1).max(initial=0)
    if off > UNIT_TOL:
        raise NumericError(f"eigenvalue off the unit circle by {off:.3g}")
    return eig


def distinct_unit_values(values: Iterable[complex], tol: float = 1e-7) -> list[complex]:
    """Cluster nearly equal complex numbers; returns one mean per cluster, sorted by angle."""
    vals = sorted(values, key=lambda z: cmath.phase(z))
    clusters: list[list[complex]] = []
    for z in vals:
        for cl in clusters:
            if abs(cl[0] - z) <= tol:
                cl.append(z)
                break
        else:
            clusters.append([z])
    return sorted((complex(np.mean(cl)) for cl in clusters), key=cmath.phase)


@dataclass(frozen=True)
class MappedEigenvalue:
    """``e^{sign * i * angle}``; ``angle`` is None when it is not a rational multiple of pi."""

    value: complex
    angle: AngleRational | None
    sign: int


def mapped_u_spectrum(mu_entries, b1: int, bipartite: bool) -> list[MappedEigenvalue]:
    """Distinct eigenvalues of U predicted from the discriminant spectrum.

    ``mu_entries`` is a SpectrumTable or an iterable of ``(mu_float, angle)``
    pairs. Each ``mu`` contributes ``e^{+- i arccos(mu)}``; ``1`` is added
    when ``b1 >= 1`` and ``-1`` when ``b1 - 1 + [bipartite] >= 1``.
    """
    if hasattr(mu_entries, "distinct"):
        pairs = [(r.mu_float, r.angle) for r in mu_entries.distinct()]
    else:
        pairs = list(mu_entries)
    out: dict = {}

    def add(theta: float, angle, sign):
        z = cmath.exp(1j * sign * theta)
        key = (angle, sign) if angle is not None else (round(z.real, 9), round(z.imag, 9))
        if angle is not None and angle.p in (0, angle.q):
            key = (angle, 1)
        out.setdefault(key, MappedEigenvalue(z, angle, sign))

    for mu, angle in pairs:
        if abs(mu) > 1 + 1e-9:
            raise DomainError(f"discriminant eigenvalue {mu} outside [-1, 1]")
        theta = angle.radians if angle is not None else math.acos(max(-1.0, min(1.0, mu)))
        add(theta, angle, 1)
        add(theta, angle, -1)
    if b1 >= 1:
        add(0.0, AngleRational(0, 1), 1)
    if b1 - 1 + int(bipartite) >= 1:
        add(math.pi, AngleRational(1, 1), 1)
    return sorted(out.values(), key=lambda e: cmath.phase(e.value))


def pst_numeric(ops: WalkOperators, u: int, v: int, tau_max: int):
    """Smallest ``tau <= tau_max`` with ``U^tau N^*e_u = gamma N^*e_v``.

    Returns ``(tau, gamma)`` where ``gamma = <N^*e_v, U^tau N^*e_u>``, or None.
    """
    if u == v:
        raise DomainError("source and target must differ")
    if tau_max < 1:
        raise DomainError("tau_max must be >= 1")
    s = vertex_state(ops, u)
    target = vertex_state(ops, v)
    for tau in range(1, tau_max + 1):
        s = ops.U @ s
        gamma = complex(np.vdot(target, s))
        if abs(gamma) >= 1 - PST_TOL:
            return tau, gamma
    return None


def pst_search(ops: WalkOperators, u: int, tau_max: int):
    """Like `pst_numeric` but against every other vertex: ``(tau, v, gamma)`` or None.

    Uses ``<N^*e_v, s> = (N s)_v`` to score all targets in one product.
    """
    s = vertex_state(ops, u)
    for tau in range(1, tau_max + 1):
        s = ops.U @ s
        overlaps = ops.N @ s
        overlaps[u] = 0
        v = int(np.argmax(np.abs(overlaps)))
        if abs(overlaps[v]) >= 1 - PST_TOL:
            return tau, v, complex(overlaps[v])
    return None


def identity_deviation(ops: WalkOperators, tau: int, columns: Sequence[int] | None = None) -> float:
    """``max |U^tau - I|`` over the given arc columns (all columns by default)."""
    na = len(ops.arcs)
    cols = np.arange(na) if columns is None else np.asarray(columns, dtype=np.int64)
    block = np.zeros((na, len(cols)), dtype=complex)
    block[cols, np.arange(len(cols))] = 1
    start = block.copy()
    for _ in range(tau):
        block = ops.U @ block
    return float(np.abs(block - start).max(initial=0))


def dump_operator_csv(matrix, path: str | Path) -> None:
    """Write a matrix row-major with one ``"re,im"`` cell per entry."""
    M = matrix.toarray() if sp.issparse(matrix) else np.asarray(matrix)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        for row in M:
            w.writerow([f"{z.real:.12g},{z.imag:.12g}" for z in row])
