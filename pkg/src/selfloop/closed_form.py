"""Closed-form spectra of complete and complete bipartite graphs with loops.

For ``K_{m,n}`` the loop count ``sigma`` is placed by filling the left part
first: ``min(sigma, m)`` loops on ``0..m-1``, the rest on the first vertices
of the right part. The non-trivial eigenvalues in the two partially looped
cases are the roots of a cubic, isolated by sign changes at 0 and 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .graph import complete_bipartite, complete, with_loops, LoopGraph
from .spectral import Spectrum

Interval = tuple[float, float]

BISECT_WIDTH = 1e-6
NEWTON_MAX_ITER = 60


class BracketError(ValueError):
    """A bracket does not straddle a sign change of the cubic."""


@dataclass(frozen=True)
class CubicCoefficients:
    """Monic cubic ``x^3 + a x^2 + b x + c`` with three distinct real roots."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if self.discriminant <= 0:
            raise ValueError(f"cubic {self} does not have three distinct real roots "
                             f"(discriminant {self.discriminant})")

    @property
    def discriminant(self) -> float:
        a, b, c = self.a, self.b, self.c
        return 18 * a * b * c - 4 * a ** 3 * c + a * a * b * b - 4 * b ** 3 - 27 * c * c

    def __call__(self, x: float) -> float:
        return _horner((self.a, self.b, self.c), x)


def _horner(coeffs: Sequence[float], x: float) -> float:
    a, b, c = coeffs
    return ((x + a) * x + b) * x + c


def _derivative(coeffs: Sequence[float], x: float) -> float:
    a, b, _ = coeffs
    return (3 * x + 2 * a) * x + b


def _root_in(coeffs: Sequence[float], lo: float, hi: float) -> float:
    flo, fhi = _horner(coeffs, lo), _horner(coeffs, hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo < 0) == (fhi < 0):
        raise BracketError(f"no sign change on [{lo}, {hi}]: p(lo)={flo}, p(hi)={fhi}")
    while hi - lo > BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        fmid = _horner(coeffs, mid)
        if fmid == 0.0:
            return mid
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(NEWTON_MAX_ITER):
        d = _derivative(coeffs, x)
        if d == 0.0:
            break
        step = _horner(coeffs, x) / d
        x_new = x - step
        if not lo <= x_new <= hi:
            break
        x = x_new
        if abs(step) <= 1e-16 * max(1.0, abs(x)):
            break
    return x


def solve_bracketed_cubic(coeffs: CubicCoefficients | Sequence[float],
                          brackets: Sequence[Interval]) -> tuple[float, float, float]:
    """One root per bracket: bisection down to width 1e-6, then Newton.

    Accepts plain ``(a, b, c)`` tuples as well, which skip the discriminant
    check so degenerate inputs surface as :class:`BracketError`. Roots are
    returned descending.
    """
    if isinstance(coeffs, CubicCoefficients):
        coeffs = (coeffs.a, coeffs.b, coeffs.c)
    if len(brackets) != 3:
        raise ValueError(f"need three brackets, got {len(brackets)}")
    roots = [_root_in(coeffs, float(lo), float(hi)) for lo, hi in brackets]
    return tuple(sorted(roots, reverse=True))


def case2_cubic(m: int, n: int, sigma: int) -> CubicCoefficients:
    return CubicCoefficients(-1.0, float(-m * n), float(n * (m - sigma)))


def case4_cubic(m: int, n: int, sigma: int) -> CubicCoefficients:
    return CubicCoefficients(-2.0, float(1 - m * n), float(m * (m + n - sigma)))


def case2_brackets(m: int, n: int, sigma: int) -> tuple[Interval, Interval, Interval]:
    if not 0 < sigma < m:
        raise ValueError(f"case 2 needs 0 < sigma < m, got m={m}, sigma={sigma}")
    # p(0) = n(m - sigma) > 0, p(1) = -n sigma < 0
    p0, p1 = n * (m - sigma), -n * sigma
    assert p0 > 0 and p1 < 0, (p0, p1)
    r = 1 + max(1, m * n, n * (m - sigma))
    return (-r, 0.0), (0.0, 1.0), (1.0, r)


def case4_brackets(m: int, n: int, sigma: int) -> tuple[Interval, Interval, Interval]:
    if not m < sigma < m + n:
        raise ValueError(f"case 4 needs m < sigma < m + n, got m={m}, n={n}, sigma={sigma}")
    p0, p1 = m * (m + n - sigma), m * (m - sigma)
    assert p0 > 0 and p1 < 0, (p0, p1)
    r = 1 + max(2, m * n + m * (m + n))
    return (-r, 0.0), (0.0, 1.0), (1.0, r)


def spec_complete(n: int, sigma: int) -> Spectrum:
    """Spectrum of ``K_n`` with ``sigma`` looped vertices."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= sigma <= n:
        raise ValueError(f"sigma must be in [0, {n}], got {sigma}")
    if sigma == 0:
        pairs = [(n - 1, 1), (-1, n - 1)]
    elif sigma == n:
        pairs = [(n, 1), (0, n - 1)]
    else:
        root = math.sqrt((n - 1) ** 2 + 4 * sigma)
        pairs = [((n - 1 + root) / 2, 1), (0, sigma - 1), (-1, n - sigma - 1), ((n - 1 - root) / 2, 1)]
    return Spectrum.from_pairs(pairs)


def spec_complete_bipartite(m: int, n: int, sigma: int) -> Spectrum:
    """Spectrum of ``K_{m,n}`` with ``sigma`` loops, left part filled first."""
    if m < 1 or n < 1:
        raise ValueError(f"part sizes must be >= 1, got {m},{n}")
    if not 0 <= sigma <= m + n:
        raise ValueError(f"sigma must be in [0, {m + n}], got {sigma}")
    if sigma == 0:
        r = math.sqrt(m * n)
        pairs = [(r, 1), (0, m + n - 2), (-r, 1)]
    elif sigma < m:
        roots = solve_bracketed_cubic(case2_cubic(m, n, sigma), case2_brackets(m, n, sigma))
        pairs = [(1, sigma - 1), (0, m + n - sigma - 2)] + [(x, 1) for x in roots]
    elif sigma == m:
        root = math.sqrt(1 + 4 * m * n)
        pairs = [((1 + root) / 2, 1), (1, m - 1), (0, n - 1), ((1 - root) / 2, 1)]
    elif sigma < m + n:
        roots = solve_bracketed_cubic(case4_cubic(m, n, sigma), case4_brackets(m, n, sigma))
        pairs = [(1, sigma - 2), (0, m + n - sigma - 1)] + [(x, 1) for x in roots]
    else:
        r = math.sqrt(m * n)
        pairs = [(1 + r, 1), (1, m + n - 2), (1 - r, 1)]
    return Spectrum.from_pairs(pairs)


def bipartite_layout_loops(m: int, n: int, sigma: int) -> frozenset[int]:
    """Loop vertices for ``sigma`` loops on ``K_{m,n}``, left part first."""
    if not 0 <= sigma <= m + n:
        raise ValueError(f"sigma must be in [0, {m + n}], got {sigma}")
    return frozenset(range(sigma))


def complete_with_loops(n: int, sigma: int) -> LoopGraph:
    return with_loops(complete(n), range(sigma))


def bipartite_with_loops(m: int, n: int, sigma: int) -> LoopGraph:
    return with_loops(complete_bipartite(m, n), bipartite_layout_loops(m, n, sigma))
