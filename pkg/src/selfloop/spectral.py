"""Dense symmetric eigensolver, spectrum clustering and exact trace counts.

The solver is a cyclic Jacobi iteration vectorized over a stack of matrices
of equal order, so exhaustive sweeps can diagonalize tens of thousands of
small adjacency matrices per NumPy call.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import LoopGraph

CLUSTER_TOL = 1e-7
JACOBI_REL_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
BATCH_CHUNK = 1 << 15


class ConvergenceError(ArithmeticError):
    def __init__(self, residual: float, sweeps: int):
        super().__init__(f"Jacobi iteration did not converge in {sweeps} sweeps "
                         f"(off-diagonal norm {residual:.3e})")
        self.residual = residual


class SymMatrix:
    """Dense symmetric matrix; the upper triangle is authoritative."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        a = np.array(entries)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        upper = np.triu(a)
        self.entries = upper + np.triu(a, 1).T
        self.entries.setflags(write=False)

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def __eq__(self, other):
        return isinstance(other, SymMatrix) and np.array_equal(self.entries, other.entries)

    def __repr__(self) -> str:
        return f"SymMatrix({self.entries.tolist()})"


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues, descending, with algebraic multiplicities."""

    pairs: tuple[tuple[float, int], ...]

    @property
    def order(self) -> int:
        return sum(k for _, k in self.pairs)

    @property
    def distinct(self) -> int:
        return len(self.pairs)

    def values(self) -> list[float]:
        """Eigenvalues expanded with multiplicity, descending."""
        return [v for v, k in self.pairs for _ in range(k)]

    def multiplicities(self) -> list[int]:
        return [k for _, k in self.pairs]

    def to_json(self) -> list[list]:
        return [[v, k] for v, k in self.pairs]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, int]], tol: float = CLUSTER_TOL) -> Spectrum:
        """Build from possibly unsorted pairs, dropping zero multiplicities and
        merging values closer than ``tol`` (weighted mean)."""
        items = sorted(((float(v), int(k)) for v, k in pairs if k > 0), key=lambda p: -p[0])
        merged: list[list[float]] = []
        last = None
        for v, k in items:
            if merged and last - v <= tol:
                m = merged[-1]
                m[0] = (m[0] * m[1] + v * k) / (m[1] + k)
                m[1] += k
            else:
                merged.append([v, k])
            last = v
        return cls(tuple((v, int(k)) for v, k in merged))


def _off_norm(a: np.ndarray) -> np.ndarray:
    iu, ju = np.triu_indices(a.shape[1], 1)
    upper = a[:, iu, ju]
    return np.sqrt(2.0 * np.einsum("bk,bk->b", upper, upper))


def _jacobi(a: np.ndarray, vectors: bool = False,
            rel_tol: float = JACOBI_REL_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi on a ``(batch, n, n)`` float stack (modified in place).

    Iterates until each matrix's off-diagonal Frobenius norm is at most
    ``rel_tol`` times its initial Frobenius norm.
    """
    batch, n, _ = a.shape
    v = np.broadcast_to(np.eye(n), a.shape).copy() if vectors else None
    thresh = rel_tol * np.sqrt(np.einsum("bij,bij->b", a, a))
    active = np.arange(batch)
    for _ in range(max_sweeps):
        off = _off_norm(a[active])
        keep = off > thresh[active]
        active = active[keep]
        if active.size == 0:
            break
        sub = a[active]
        vsub = v[active] if vectors else None
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = sub[:, p, q]
                nz = apq != 0.0
                if not nz.any():
                    continue
                safe = np.where(nz, apq, 1.0)
                with np.errstate(over="ignore", divide="ignore"):
                    theta = (sub[:, q, q] - sub[:, p, p]) / (2.0 * safe)
                    # |theta| -> inf gives t -> 0, i.e. no rotation
                    t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where(nz, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                cc, ss = c[:, None], s[:, None]
                colp = sub[:, :, p].copy()
                colq = sub[:, :, q]
                sub[:, :, p] = cc * colp - ss * colq
                sub[:, :, q] = ss * colp + cc * colq
                rowp = sub[:, p, :].copy()
                rowq = sub[:, q, :]
                sub[:, p, :] = cc * rowp - ss * rowq
                sub[:, q, :] = ss * rowp + cc * rowq
                sub[:, p, q] = 0.0
                sub[:, q, p] = 0.0
                if vectors:
                    vp = vsub[:, :, p].copy()
                    vq = vsub[:, :, q]
                    vsub[:, :, p] = cc * vp - ss * vq
                    vsub[:, :, q] = ss * vp + cc * vq
        a[active] = sub
        if vectors:
            v[active] = vsub
    else:
        off = _off_norm(a[active])
        bad = off > thresh[active]
        if bad.any():
            raise ConvergenceError(float(off[bad].max()), max_sweeps)
    return a, v


def eigenvalues_batch(stack, chunk: int = BATCH_CHUNK) -> np.ndarray:
    """Eigenvalues of each symmetric matrix in a ``(batch, n, n)`` stack.

    Returns a ``(batch, n)`` array with rows sorted descending.
    """
    stack = np.asarray(stack)
    if stack.ndim != 3 or stack.shape[1] != stack.shape[2]:
        raise ValueError(f"expected a (batch, n, n) stack, got shape {stack.shape}")
    batch, n, _ = stack.shape
    out = np.empty((batch, n))
    for lo in range(0, batch, chunk):
        a = np.array(stack[lo:lo + chunk], dtype=float)
        a, _ = _jacobi(a)
        out[lo:lo + chunk] = np.einsum("bii->bi", a)
    out.sort(axis=1)
    return out[:, ::-1].copy()


def eigenvalues(a: SymMatrix | np.ndarray) -> list[float]:
    """All eigenvalues with multiplicity, descending."""
    entries = a.entries if isinstance(a, SymMatrix) else SymMatrix(a).entries
    if entries.shape[0] < 1:
        raise ValueError("eigenvalues of an empty matrix")
    return eigenvalues_batch(entries[None])[0].tolist()


def eigh(a: SymMatrix | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvectors as columns.

    Internal diagnostic path; the reconstruction ``Q diag(w) Q^T`` reproduces
    the input.
    """
    entries = a.entries if isinstance(a, SymMatrix) else SymMatrix(a).entries
    d, v = _jacobi(np.array(entries, dtype=float)[None], vectors=True)
    w = np.diag(d[0])
    order = np.argsort(-w, kind="stable")
    return w[order], v[0][:, order]


def adjacency(lg: LoopGraph) -> SymMatrix:
    a = np.zeros((lg.n, lg.n), dtype=np.int64)
    for u, v in lg.base.edges:
        a[u, v] = a[v, u] = 1
    for v in lg.loops:
        a[v, v] = 1
    return SymMatrix(a)


def cluster(values: Sequence[float], tol: float = CLUSTER_TOL) -> Spectrum:
    """Group eigenvalues whose sorted neighbours are within ``tol``."""
    return Spectrum.from_pairs(((v, 1) for v in values), tol)


def spectrum(lg: LoopGraph) -> Spectrum:
    return cluster(eigenvalues(adjacency(lg)))


def distinct_counts(sorted_desc: np.ndarray, tol: float = CLUSTER_TOL) -> np.ndarray:
    """Number of clusters in each row of a descending eigenvalue array."""
    gaps = -np.diff(sorted_desc, axis=1)
    return 1 + (gaps > tol).sum(axis=1)


def power_traces(lg: LoopGraph, kmax: int) -> list[int]:
    """``[tr A, tr A^2, ..., tr A^kmax]`` by exact integer matrix powers."""
    if not 1 <= kmax <= 4:
        raise ValueError(f"kmax must be in [1, 4], got {kmax}")
    a = [[int(x) for x in row] for row in adjacency(lg).entries.tolist()]
    n = lg.n
    out = []
    p = a
    for k in range(1, kmax + 1):
        if k > 1:
            p = [[sum(p[i][t] * a[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        out.append(sum(p[i][i] for i in range(n)))
    return out


def max_discrepancy(a: Spectrum | Sequence[float], b: Spectrum | Sequence[float]) -> float:
    """Largest gap between two spectra compared value by value (with
    multiplicity); ``inf`` when their orders differ."""
    va = a.values() if isinstance(a, Spectrum) else sorted(a, reverse=True)
    vb = b.values() if isinstance(b, Spectrum) else sorted(b, reverse=True)
    if len(va) != len(vb):
        return float("inf")
    return max((abs(x - y) for x, y in zip(va, vb)), default=0.0)


def power_traces_batch(stack, kmax: int) -> np.ndarray:
    """Exact ``tr A^k`` for ``k = 1..kmax`` over an integer ``(batch, n, n)``
    stack; returns a ``(batch, kmax)`` int64 array."""
    if not 1 <= kmax <= 4:
        raise ValueError(f"kmax must be in [1, 4], got {kmax}")
    a = np.asarray(stack, dtype=np.int64)
    out = np.empty((a.shape[0], kmax), dtype=np.int64)
    p = a
    for k in range(kmax):
        if k:
            p = p @ a
        out[:, k] = np.einsum("bii->b", p)
    return out
