"""Energy of self-loop graphs and the bounds on energy and largest eigenvalue.

Energy is always computed from the numeric spectrum, never from the
closed-form spectra, so bound checks stay independent of that code.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .graph import (LoopGraph, Graph, GraphError, degrees, has_loop_degree_pattern,
                    is_connected, max_degree, with_loops, MAX_ENUMERATION_ORDER)
from .spectral import adjacency, eigenvalues

EQUALITY_TOL = 1e-8


def energy_from_eigenvalues(values: Sequence[float] | np.ndarray, sigma: int) -> float | np.ndarray:
    """``sum |lambda_i - sigma/n|``; vectorized over leading axes."""
    arr = np.asarray(values, dtype=float)
    n = arr.shape[-1]
    sig = np.asarray(sigma, dtype=float)
    if sig.ndim:
        sig = sig[..., None]
    out = np.abs(arr - sig / n).sum(axis=-1)
    return float(out) if out.ndim == 0 else out


def energy(lg: LoopGraph) -> float:
    return energy_from_eigenvalues(eigenvalues(adjacency(lg)), lg.sigma)


def energy_ordinary(g: Graph) -> float:
    """Energy of the loopless graph, ``sum |lambda_i|``."""
    return energy(LoopGraph(g, frozenset()))


def _check_nms(n: int, m: int, sigma: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= m <= n * (n - 1) // 2:
        raise ValueError(f"m must be in [0, {n * (n - 1) // 2}], got {m}")
    if not 0 <= sigma <= n:
        raise ValueError(f"sigma must be in [0, {n}], got {sigma}")


def energy_upper_bound(n: int, m: int, sigma: int) -> float:
    """``sqrt(n (2m + sigma - sigma^2/n))``."""
    _check_nms(n, m, sigma)
    return math.sqrt(max(0.0, n * (2 * m + sigma - sigma * sigma / n)))


class EqualityDegrees(NamedTuple):
    a: float
    b: float
    feasible: bool


def equality_degrees(n: int, m: int, sigma: int) -> EqualityDegrees:
    """Degrees forced on looped (``a``) and unlooped (``b``) vertices when the
    energy upper bound is attained.

    ``feasible`` says whether every degree that actually occurs (``a`` when
    ``sigma > 0``, ``b`` when ``sigma < n``) is an integer in ``[0, n-1]``.
    """
    _check_nms(n, m, sigma)
    s = sigma / n
    a = 2 * m / n + 3 * s - 2 * s * s - 1
    b = 2 * m / n + s - 2 * s * s
    used = ([a] if sigma > 0 else []) + ([b] if sigma < n else [])
    feasible = all(abs(x - round(x)) < 1e-9 and -1e-9 < x < n - 1 + 1e-9 for x in used)
    return EqualityDegrees(a, b, feasible)


def matches_equality_degrees(lg: LoopGraph, tol: float = 1e-9) -> bool:
    a, b, _ = equality_degrees(lg.n, lg.m, lg.sigma)
    d = degrees(lg.base)
    return all(abs(d[v] - (a if v in lg.loops else b)) < tol for v in range(lg.n))


class Lambda1Bounds(NamedTuple):
    lower: float
    upper: float
    connected: bool


def lambda1_bounds(lg: LoopGraph) -> Lambda1Bounds:
    """``(2m + sigma)/n <= lambda_1 <= Delta + 1``.

    The lower bound is stated for connected graphs; it is reported regardless
    and ``connected`` flags whether that hypothesis holds.
    """
    return Lambda1Bounds((2 * lg.m + lg.sigma) / lg.n, max_degree(lg.base) + 1.0,
                         is_connected(lg.base))


@dataclass
class EnergyReport:
    energy: float
    sigma_over_n: float
    upper_bound: float
    lambda1: float
    lambda1_upper: float
    lambda1_lower: float
    connected: bool
    equality_flags: dict = field(default_factory=dict)
    equality_degrees: tuple[float, float] | None = None

    def to_json(self) -> dict:
        out = asdict(self)
        if self.equality_degrees is not None:
            out["equality_degrees"] = list(self.equality_degrees)
        return out

    @classmethod
    def from_json(cls, data: dict) -> EnergyReport:
        data = dict(data)
        if data.get("equality_degrees") is not None:
            data["equality_degrees"] = tuple(data["equality_degrees"])
        return cls(**data)


def energy_report(lg: LoopGraph, tol: float = EQUALITY_TOL) -> EnergyReport:
    values = eigenvalues(adjacency(lg))
    e = energy_from_eigenvalues(values, lg.sigma)
    bound = energy_upper_bound(lg.n, lg.m, lg.sigma)
    lower, upper, connected = lambda1_bounds(lg)
    lam1 = values[0]
    eq = equality_degrees(lg.n, lg.m, lg.sigma)
    return EnergyReport(
        energy=e,
        sigma_over_n=lg.sigma / lg.n,
        upper_bound=bound,
        lambda1=lam1,
        lambda1_upper=upper,
        lambda1_lower=lower,
        connected=connected,
        equality_flags={
            "upper_bound": abs(e - bound) <= tol,
            "lambda1_upper": abs(lam1 - upper) <= tol,
            "lambda1_lower": abs(lam1 - lower) <= tol,
        },
        equality_degrees=(eq.a, eq.b),
    )


def _degree_pattern_graphs(n: int, k: int):
    """Connected graphs on ``n`` vertices with every degree in ``{k, k+1}``,
    by backtracking over the lexicographic pair order (include first)."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    # remaining[i][v]: pairs at position >= i that touch v
    remaining = [[0] * n for _ in range(len(pairs) + 1)]
    for i in range(len(pairs) - 1, -1, -1):
        remaining[i] = remaining[i + 1][:]
        u, v = pairs[i]
        remaining[i][u] += 1
        remaining[i][v] += 1
    deg = [0] * n
    chosen: list[tuple[int, int]] = []

    def rec(i):
        if i == len(pairs):
            g = Graph(n, frozenset(chosen))
            if is_connected(g):
                yield g
            return
        u, v = pairs[i]
        if deg[u] < k + 1 and deg[v] < k + 1:
            deg[u] += 1
            deg[v] += 1
            chosen.append((u, v))
            yield from rec(i + 1)
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1
        # skipping pair i must still leave room for u and v to reach degree k
        rem = remaining[i + 1]
        if deg[u] + rem[u] >= k and deg[v] + rem[v] >= k:
            yield from rec(i + 1)

    yield from rec(0)


def make_semiregular_equality_instance(k: int, n: int) -> LoopGraph | None:
    """A connected loop graph with degree ``k`` on looped vertices and
    ``k + 1`` on the rest, so that ``lambda_1 = (2m + sigma)/n``.

    Searches exhaustively (``n <= 7``), preferring instances where both
    degrees occur; falls back to a regular one; ``None`` if nothing exists.
    """
    if k < 1 or n < k + 2:
        raise ValueError(f"need k >= 1 and n >= k + 2, got k={k}, n={n}")
    if n > MAX_ENUMERATION_ORDER:
        raise GraphError(f"search is limited to n <= {MAX_ENUMERATION_ORDER}, got {n}")
    fallback = None
    for g in _degree_pattern_graphs(n, k):
        d = degrees(g)
        lg = with_loops(g, (v for v in range(n) if d[v] == k))
        assert has_loop_degree_pattern(lg, k)
        if 0 < lg.sigma < n:
            return lg
        if fallback is None:
            fallback = lg
    return fallback
