"""Symmetric powers of C^2 under the binary polyhedral groups.

Decompositions come from the McKay graphs (affine E6, E7, E8): tensoring
with the canonical representation is the adjacency operator, and
S^{k+1} = S^k (x) C^2 - S^{k-1}.  Explicit SU(2) matrices cross-check the
graphs through characters.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NegativeMultiplicity


@dataclass(frozen=True)
class McKayGraph:
    name: str
    vertices: tuple[tuple[str, int], ...]
    adjacency: np.ndarray
    trivial_vertex: int
    canonical_vertex: int

    @property
    def names(self) -> list[str]:
        return [v for v, _ in self.vertices]

    @property
    def dims(self) -> np.ndarray:
        return np.array([d for _, d in self.vertices])

    def is_balanced(self) -> bool:
        return bool(np.all(self.adjacency @ self.dims == 2 * self.dims))


def _graph(name: str, vertices, edges, trivial: str, canonical: str) -> McKayGraph:
    names = [v for v, _ in vertices]
    adj = np.zeros((len(names), len(names)), dtype=int)
    for a, b in edges:
        i, j = names.index(a), names.index(b)
        adj[i, j] = adj[j, i] = 1
    adj.setflags(write=False)
    g = McKayGraph(name, tuple(vertices), adj, names.index(trivial), names.index(canonical))
    if not g.is_balanced() or g.dims[g.canonical_vertex] != 2:
        raise AssertionError(f"McKay graph {name} is mis-entered")
    return g


# "2" is always the canonical representation; primes distinguish the rest
GRAPHS = {
    "2T": _graph(
        "2T",
        [("1", 1), ("2", 2), ("3", 3), ("2'", 2), ("1'", 1), ("2''", 2), ("1''", 1)],
        [("1", "2"), ("2", "3"), ("3", "2'"), ("2'", "1'"), ("3", "2''"), ("2''", "1''")],
        "1", "2",
    ),
    "2O": _graph(
        "2O",
        [("1", 1), ("2", 2), ("3", 3), ("4", 4), ("3'", 3), ("2'", 2), ("1'", 1), ("2''", 2)],
        [("1", "2"), ("2", "3"), ("3", "4"), ("4", "3'"), ("3'", "2'"), ("2'", "1'"), ("4", "2''")],
        "1", "2",
    ),
    "2I": _graph(
        "2I",
        [("1", 1), ("2", 2), ("3", 3), ("4", 4), ("5", 5), ("6", 6), ("4'", 4), ("2'", 2), ("3'", 3)],
        [("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "6"), ("6", "4'"), ("4'", "2'"), ("6", "3'")],
        "1", "2",
    ),
}


def mckay_graph(name: str) -> McKayGraph:
    key = name if name.startswith("2") else "2" + name
    try:
        return GRAPHS[key]
    except KeyError:
        raise ValueError(f"no McKay graph for {name!r}; choose from {sorted(GRAPHS)}") from None


@dataclass(frozen=True)
class Decomposition:
    graph: McKayGraph
    k: int
    multiplicities: np.ndarray

    def __post_init__(self):
        if int(self.multiplicities @ self.graph.dims) != self.k + 1:
            raise AssertionError("dimension identity violated")

    def summands(self) -> list[str]:
        out = []
        for name, m in zip(self.graph.names, self.multiplicities):
            out.extend([name] * int(m))
        return out

    def dims(self) -> list[int]:
        return sorted((d for (_, d), m in zip(self.graph.vertices, self.multiplicities) for _ in range(int(m))), reverse=True)

    def __str__(self):
        return " + ".join(self.summands())


def symmetric_power_decomposition(graph: McKayGraph, k: int) -> Decomposition:
    """Multiplicities of the irreducibles in S^k C^2."""
    if k < 0:
        raise ValueError("k must be non-negative")
    n = len(graph.vertices)
    prev = np.zeros(n, dtype=int)
    prev[graph.trivial_vertex] = 1
    if k == 0:
        return Decomposition(graph, 0, prev)
    cur = np.zeros(n, dtype=int)
    cur[graph.canonical_vertex] = 1
    for j in range(1, k):
        prev, cur = cur, graph.adjacency @ cur - prev
        if np.any(cur < 0):
            raise NegativeMultiplicity(f"negative multiplicity at k={j + 1} on {graph.name}")
    return Decomposition(graph, k, cur)


def is_multiplicity_free(graph: McKayGraph, k: int) -> bool:
    """Whether S^k C^2 is a sum of pairwise non-isomorphic irreducibles (k even)."""
    if k % 2:
        raise ValueError("multiplicity-freeness is only meaningful for even k")
    return bool(np.all(symmetric_power_decomposition(graph, k).multiplicities <= 1))


# --------------------------------------------------------------------------
# explicit actions


def su2_symmetric_action(M, k: int) -> np.ndarray:
    """Matrix of M on S^k C^2 in the monomial basis v0^{k-j} v1^j, j = 0..k.

    M acts by v0 -> M00 v0 + M10 v1 and v1 -> M01 v0 + M11 v1, so the map is
    a homomorphism.
    """
    M = np.asarray(M, dtype=complex)
    if M.shape != (2, 2) or np.linalg.norm(M.conj().T @ M - np.eye(2)) > 1e-12:
        raise ValueError("M must be a 2x2 unitary matrix")
    if k < 0:
        raise ValueError("k must be non-negative")
    img0 = np.array([M[0, 0], M[1, 0]])  # coefficients of (v0, v1) in g.v0, ordered by v1-power
    img1 = np.array([M[0, 1], M[1, 1]])
    pow0 = [np.array([1.0 + 0j])]
    pow1 = [np.array([1.0 + 0j])]
    for _ in range(k):
        pow0.append(np.convolve(pow0[-1], img0))
        pow1.append(np.convolve(pow1[-1], img1))
    S = np.zeros((k + 1, k + 1), dtype=complex)
    for j in range(k + 1):
        S[:, j] = np.convolve(pow0[k - j], pow1[j])
    return S


def monomial_weights(k: int) -> np.ndarray:
    """Squared norms 1 / binom(k, j) making every su2_symmetric_action unitary."""
    return np.array([1.0 / math.comb(k, j) for j in range(k + 1)])


def verify_invariant_subspace(generators, k: int, basis) -> dict:
    """Projection defect of S(span basis) onto span basis, maximized over generators.

    ``basis`` holds coefficient vectors over v0^{k-j} v1^j.
    """
    V = np.array(basis, dtype=complex).T
    if V.shape[0] != k + 1:
        raise ValueError(f"basis vectors must have length {k + 1}")
    if np.linalg.matrix_rank(V) < V.shape[1]:
        raise ValueError("basis vectors must be linearly independent")
    Q, _ = np.linalg.qr(V)
    residual = 0.0
    for g in generators:
        SQ = su2_symmetric_action(g, k) @ Q
        residual = max(residual, float(np.linalg.norm(SQ - Q @ (Q.conj().T @ SQ), 2)))
    return {"invariant": residual <= 1e-10, "residual": residual}


def polynomial_vector(terms: dict[tuple[int, int], complex], k: int) -> np.ndarray:
    """Coefficient vector from {(power of v0, power of v1): coefficient}."""
    v = np.zeros(k + 1, dtype=complex)
    for (a, b), c in terms.items():
        if a + b != k:
            raise ValueError(f"monomial v0^{a} v1^{b} is not of degree {k}")
        v[b] += c
    return v


# --------------------------------------------------------------------------
# binary polyhedral groups


def binary_generators(name: str) -> list[np.ndarray]:
    """SU(2) generators: lifts of z -> iz and z -> (z-1)/(z+1) for 2O, their
    even part for 2T, and the explicit order-10 / order-4 pair for 2I."""
    key = name if name.startswith("2") else "2" + name
    g0 = np.diag([cmath.exp(1j * math.pi / 4), cmath.exp(-1j * math.pi / 4)])
    g1 = np.array([[1, -1], [1, 1]], dtype=complex) / math.sqrt(2)
    if key == "2O":
        return [g0, g1]
    if key == "2T":
        return [g0 @ g0, g0 @ g1]
    if key == "2I":
        e = cmath.exp(2j * math.pi / 5)
        a, b = e - 1 / e, e**2 - e**-2
        h0 = np.diag([e**-2, e**2])
        h1 = np.array([[-a, b], [b, a]]) / math.sqrt(5)
        return [h0, h1]
    raise ValueError(f"unknown binary group {name!r}")


@lru_cache(maxsize=None)
def _binary_group_cached(key: str) -> tuple:
    gens = binary_generators(key)
    elems = [np.eye(2, dtype=complex)]
    frontier = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                p = g @ a
                if all(np.max(np.abs(p - e)) > 1e-9 for e in elems):
                    elems.append(p)
                    nxt.append(p)
        frontier = nxt
        if len(elems) > 240:
            raise AssertionError("closure did not terminate")
    return tuple(elems)


def binary_group(name: str) -> list[np.ndarray]:
    key = name if name.startswith("2") else "2" + name
    return list(_binary_group_cached(key))


def character_check(name: str, k: int) -> dict:
    """Trace of the explicit action against sin((k+1) t) / sin(t), plus the
    invariant count and inner-product norm compared with the recurrence."""
    group = binary_group(name)
    dec = symmetric_power_decomposition(mckay_graph(name), k)
    traces = []
    worst = 0.0
    for g in group:
        tr = complex(np.trace(su2_symmetric_action(g, k)))
        t = cmath.phase(np.linalg.eigvals(g)[0])
        st = math.sin(t)
        if abs(st) < 1e-12:
            expected = (k + 1) * (1 if math.cos(t) > 0 else (-1) ** k)
        else:
            expected = math.sin((k + 1) * t) / st
        worst = max(worst, abs(tr - expected))
        traces.append(tr)
    traces = np.array(traces)
    invariants = float(np.mean(traces).real)
    norm2 = float(np.mean(np.abs(traces) ** 2))
    mult = dec.multiplicities
    return {
        "trace_error": worst,
        "invariant_count": invariants,
        "expected_invariants": int(mult[dec.graph.trivial_vertex]),
        "character_norm": norm2,
        "expected_norm": int(mult @ mult),
        "order": len(group),
    }
