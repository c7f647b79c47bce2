"""Dense graph matrices, spectral radii and quotient matrices.

Spectral radii come from shifted power iteration with a cyclic Jacobi
fallback. numpy is used only for storage and matrix-vector products.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    CapExceeded,
    DisconnectedGraphError,
    InvalidPartitionError,
    NonConvergenceError,
    NotApplicableError,
)
from .graph import DEFAULT_CAP, BlockLabeling, Graph, iter_bits

DEFAULT_REL_TOL = 1e-9
DEFAULT_MAX_ITER = 100_000
EQUITABLE_FLOAT_TOL = 1e-12


def _dense_guard(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise CapExceeded(f"dense matrices are capped at {cap} vertices, got {g.n}")


def adjacency_matrix(g: Graph, cap: int = DEFAULT_CAP) -> np.ndarray:
    _dense_guard(g, cap)
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for v, row in enumerate(g.adj):
        a[v, list(iter_bits(row))] = 1
    return a


def signless_laplacian(g: Graph, cap: int = DEFAULT_CAP) -> np.ndarray:
    q = adjacency_matrix(g, cap)
    q[np.diag_indices(g.n)] = g.degrees()
    return q


def distance_matrix(g: Graph, cap: int = DEFAULT_CAP) -> np.ndarray:
    """All-pairs shortest-path distances by level-synchronous BFS on bitsets."""
    _dense_guard(g, cap)
    full = g.vertex_mask
    d = np.zeros((g.n, g.n), dtype=np.int64)
    for src in range(g.n):
        seen = frontier = 1 << src
        level = 0
        while frontier:
            level += 1
            reach = 0
            for v in iter_bits(frontier):
                reach |= g.adj[v]
            frontier = reach & ~seen
            if frontier:
                d[src, list(iter_bits(frontier))] = level
            seen |= frontier
        if seen != full:
            raise DisconnectedGraphError("distance matrix needs a connected graph")
    return d


def wiener_index(g: Graph) -> int:
    return int(distance_matrix(g).sum()) // 2


def matrix_to_csv(mat: np.ndarray) -> str:
    def fmt(x):
        return str(int(x)) if float(x).is_integer() else repr(float(x))

    return "\n".join(",".join(fmt(x) for x in row) for row in np.asarray(mat)) + "\n"


@dataclass(frozen=True)
class SpectralResult:
    value: float
    iterations: int
    residual: float
    method: str = "power"

    def to_json(self) -> str:
        return json.dumps({"value": self.value, "iterations": self.iterations, "residual": self.residual})


def _max_row_sum(m: np.ndarray) -> float:
    return float(np.abs(m).sum(axis=1).max())


def power_iteration(
    mat: np.ndarray, tol: float | None = None, max_iter: int = DEFAULT_MAX_ITER
) -> SpectralResult:
    """Largest eigenvalue of a symmetric matrix by power iteration on ``M + cI``.

    The shift ``c = 1 + max|row sum|`` makes every eigenvalue of the shifted
    matrix positive, so the dominant one is the target and bipartite
    adjacency spectra do not oscillate between ``+rho`` and ``-rho``.
    """
    m = np.asarray(mat, dtype=float)
    n = m.shape[0]
    scale = max(1.0, _max_row_sum(m))
    if tol is None:
        tol = DEFAULT_REL_TOL * scale
    shift = 1.0 + _max_row_sum(m)
    x = np.ones(n)
    x[0] += 1e-3
    x /= np.linalg.norm(x)
    for it in range(1, max_iter + 1):
        y = m @ x
        lam = float(x @ y)
        residual = float(np.abs(y - lam * x).max())
        if residual <= tol:
            return SpectralResult(lam, it, residual, "power")
        x = y + shift * x
        x /= np.linalg.norm(x)
    raise NonConvergenceError(f"power iteration did not reach residual {tol:g} in {max_iter} steps")


def jacobi_eigh(mat: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and eigenvectors (columns) of a symmetric matrix by cyclic Jacobi rotations."""
    a = np.array(mat, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    norm = max(np.linalg.norm(a), 1e-300)
    for _ in range(max_sweeps):
        off = math.sqrt(max(float((a * a).sum() - (np.diag(a) ** 2).sum()), 0.0))
        if off <= tol * norm:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    raise NonConvergenceError("Jacobi rotations did not converge")


def spectral_radius(
    mat: np.ndarray,
    tol: float | None = None,
    max_iter: int = DEFAULT_MAX_ITER,
    fallback: bool = True,
) -> SpectralResult:
    """Largest eigenvalue of a symmetric nonnegative matrix.

    With ``fallback=False`` a stalled power iteration raises
    :class:`NonConvergenceError` instead of switching to Jacobi.
    """
    m = np.asarray(mat, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("spectral_radius needs a square matrix")
    if not np.array_equal(m, m.T):
        raise ValueError("spectral_radius needs a symmetric matrix")
    try:
        return power_iteration(m, tol, max_iter)
    except NonConvergenceError:
        if not fallback:
            raise
    values, vectors = jacobi_eigh(m)
    k = int(np.argmax(values))
    x = vectors[:, k]
    lam = float(x @ m @ x)
    return SpectralResult(lam, 0, float(np.abs(m @ x - lam * x).max()), "jacobi")


def rho(g: Graph) -> float:
    return spectral_radius(adjacency_matrix(g)).value


def q_radius(g: Graph) -> float:
    return spectral_radius(signless_laplacian(g)).value


def mu(g: Graph) -> float:
    return spectral_radius(distance_matrix(g)).value


def hong_bound(g: Graph) -> float:
    """Upper bound ``sqrt(2e - n + 1)`` on the adjacency spectral radius."""
    radicand = 2 * g.num_edges - g.n + 1
    if radicand < 0:
        raise NotApplicableError(f"2e - n + 1 = {radicand} is negative")
    return math.sqrt(radicand)


def das_bound(g: Graph) -> float:
    """Upper bound ``2e/(n-1) + n - 2`` on the signless Laplacian spectral radius."""
    if g.n < 2:
        raise NotApplicableError("bound needs n >= 2")
    return 2 * g.num_edges / (g.n - 1) + g.n - 2


def rayleigh_distance_lower(g: Graph) -> float:
    """Lower bound ``2W/n`` on the distance spectral radius (all-ones Rayleigh quotient)."""
    return 2 * wiener_index(g) / g.n


@dataclass(frozen=True)
class QuotientMatrix:
    """Average block row sums of a matrix over a vertex partition.

    Entries are exact ``Fraction`` values when the source matrix is
    integer-valued, floats otherwise.
    """

    entries: tuple[tuple, ...]
    blocks: tuple[tuple[int, ...], ...]
    equitable: bool

    @property
    def order(self) -> int:
        return len(self.entries)

    def as_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries])

    def as_int_rows(self) -> list[list[int]]:
        out = []
        for row in self.entries:
            if any(Fraction(x).denominator != 1 for x in row):
                raise ValueError("quotient matrix has non-integer entries")
            out.append([int(x) for x in row])
        return out


def _normalize_blocks(pi, n: int) -> tuple[tuple[int, ...], ...]:
    blocks = pi.blocks if isinstance(pi, BlockLabeling) else tuple(tuple(b) for b in pi)
    seen = set()
    for block in blocks:
        if not block:
            raise InvalidPartitionError("empty block")
        for v in block:
            if not 0 <= v < n:
                raise InvalidPartitionError(f"index {v} out of range")
            if v in seen:
                raise InvalidPartitionError(f"index {v} appears in two blocks")
            seen.add(v)
    if len(seen) != n:
        raise InvalidPartitionError(f"partition misses {n - len(seen)} indices")
    return blocks


def quotient_matrix(mat: np.ndarray, pi: BlockLabeling | Sequence[Sequence[int]]) -> QuotientMatrix:
    m = np.asarray(mat)
    blocks = _normalize_blocks(pi, m.shape[0])
    exact = np.issubdtype(m.dtype, np.integer) or bool(np.all(np.mod(m, 1) == 0))
    if exact:
        m = m.astype(np.int64)
    entries, equitable = [], True
    for bi in blocks:
        row = []
        for bj in blocks:
            sums = m[np.ix_(bi, bj)].sum(axis=1)
            if exact:
                row.append(Fraction(int(sums.sum()), len(bi)))
                equitable &= bool(np.all(sums == sums[0]))
            else:
                row.append(float(sums.mean()))
                equitable &= bool(np.ptp(sums) <= EQUITABLE_FLOAT_TOL)
        entries.append(tuple(row))
    return QuotientMatrix(tuple(entries), blocks, equitable)
