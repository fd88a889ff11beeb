"""Dense symmetric eigensolver (cyclic Jacobi) and graph spectra."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, local_graph

OFF_TOL = 1e-12
MAX_SWEEPS = 100


def symmetric(values) -> np.ndarray:
    """Float copy of ``values`` with the lower triangle mirrored from the upper."""
    a = np.array(values, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    upper = np.triu(a)
    return upper + np.triu(a, 1).T


@dataclass
class Spectrum:
    eigenvalues: np.ndarray
    residual: float
    vectors: np.ndarray | None = None
    sweeps: int = 0

    def __len__(self) -> int:
        return len(self.eigenvalues)

    @property
    def smallest(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def largest(self) -> float:
        return float(self.eigenvalues[-1])


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Tournament schedule: ``n-1`` rounds (n even) of disjoint index pairs
    covering every pair exactly once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def eigensolve(m, vectors: bool = False) -> Spectrum:
    """Eigenvalues of a symmetric matrix in ascending order.

    Jacobi rotations are applied sweep by sweep; within a sweep the pairs
    are grouped into rounds of disjoint pairs, so each round is one
    vectorized update. Iteration stops once the off-diagonal Frobenius
    norm falls below ``1e-12 * ||m||_F`` or after 100 sweeps.
    """
    a = symmetric(m)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    n = a.shape[0]
    original = a.copy()
    v = np.eye(n)
    norm = np.linalg.norm(a)
    sweeps = 0
    if n > 1 and norm > 0:
        rounds = _round_robin(n)
        eye = np.eye(n)
        with np.errstate(over="ignore"):
            for sweeps in range(1, MAX_SWEEPS + 1):
                for p, q in rounds:
                    apq = a[p, q]
                    live = apq != 0.0
                    if not live.any():
                        continue
                    p, q, apq = p[live], q[live], apq[live]
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
                    c = 1.0 / np.sqrt(t * t + 1.0)
                    s = t * c
                    # one round is a product of disjoint plane rotations J
                    j = eye.copy()
                    j[p, p] = c
                    j[q, q] = c
                    j[p, q] = s
                    j[q, p] = -s
                    a = j.T @ a @ j
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    v = v @ j
                if np.linalg.norm(a - np.diag(np.diag(a))) < OFF_TOL * norm:
                    break
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    w, v = w[order], v[:, order]
    residual = float(np.max(np.abs(original @ v - v * w))) if n else 0.0
    return Spectrum(w, residual, v if vectors else None, sweeps)


def lambda_min(m) -> float:
    return eigensolve(m).smallest


def adjacency_spectrum(g: Graph) -> Spectrum:
    return eigensolve(g.adjacency_matrix())


@dataclass(frozen=True)
class Extremes:
    """``theta_1 <= theta_{n-1} <= theta_n`` of the adjacency spectrum."""

    theta_1: float
    theta_second: float
    theta_n: float


def extremes(spec: Spectrum) -> Extremes:
    ev = spec.eigenvalues
    return Extremes(float(ev[0]), float(ev[-2]) if len(ev) > 1 else float(ev[0]), float(ev[-1]))


def local_spectrum(g: Graph, x: int) -> Spectrum:
    """Spectrum of the adjacency matrix of the graph induced on ``S_1(x)``."""
    h, _ = local_graph(g, x)
    return eigensolve(h.adjacency_matrix())


def signed_laplacian_spectrum(g: Graph, sign_of) -> Spectrum:
    """Spectrum of ``D - A^sigma`` (i.e. of ``-Delta^sigma``)."""
    n = g.vertex_count
    m = np.zeros((n, n))
    for u in range(n):
        m[u, u] = g.degree(u)
    for u, v in g.edges():
        m[u, v] = m[v, u] = -sign_of(u, v)
    return eigensolve(m)
