import math

import numpy as np
import pytest

from selfloop.closed_form import (BracketError, CubicCoefficients, bipartite_with_loops, case2_brackets,
                                  case2_cubic, case4_brackets, case4_cubic, complete_with_loops,
                                  solve_bracketed_cubic, spec_complete, spec_complete_bipartite)
from selfloop.spectral import max_discrepancy, spectrum


def _values(s):
    return [v for v, _ in s.pairs]


def test_complete_loopless():
    s = spec_complete(5, 0)
    assert s.pairs == ((4.0, 1), (-1.0, 4))


def test_complete_partial():
    # frozen from numpy.linalg.eigvalsh on (K_4) with loops {0, 1}
    s = spec_complete(4, 2)
    assert s.multiplicities() == [1, 1, 1, 1]
    assert _values(s) == pytest.approx([3.561552812809, 0.0, -0.561552812809, -1.0], abs=1e-9)
    assert _values(s)[0] == pytest.approx((3 + math.sqrt(17)) / 2, abs=1e-15)


def test_complete_fully_looped():
    assert spec_complete(3, 3).pairs == ((3.0, 1), (0.0, 2))


@pytest.mark.parametrize("n, sigma", [(3, -1), (3, 4), (0, 0)])
def test_complete_range(n, sigma):
    with pytest.raises(ValueError):
        spec_complete(n, sigma)


def test_bipartite_loopless():
    assert spec_complete_bipartite(3, 3, 0).pairs == ((3.0, 1), (0.0, 4), (-3.0, 1))


def test_bipartite_one_side_filled():
    s = spec_complete_bipartite(3, 3, 3)
    r = math.sqrt(37)
    assert s.multiplicities() == [1, 2, 2, 1]
    assert _values(s) == pytest.approx([(1 + r) / 2, 1, 0, (1 - r) / 2], abs=1e-15)


def test_bipartite_case2_small():
    # frozen from numpy.linalg.eigvalsh on K_{2,2} with loop {0}
    s = spec_complete_bipartite(2, 2, 1)
    assert s.multiplicities() == [1, 1, 1, 1]
    assert _values(s) == pytest.approx([2.342923082777, 0.470683419871, 0.0, -1.813606502648], abs=1e-9)


def test_bipartite_fully_looped():
    s = spec_complete_bipartite(2, 3, 5)
    r = math.sqrt(6)
    assert s.pairs == ((1 + r, 1), (1.0, 3), (1 - r, 1))


@pytest.mark.parametrize("m, n, sigma", [(0, 2, 0), (2, 2, 5), (2, 2, -1)])
def test_bipartite_range(m, n, sigma):
    with pytest.raises(ValueError):
        spec_complete_bipartite(m, n, sigma)


def test_solve_case2_cubic():
    # lambda^3 - lambda^2 - 9 lambda + 3; frozen from numpy.roots and from
    # numpy.linalg.eigvalsh on K_{3,3} with loops {0, 1}
    roots = solve_bracketed_cubic(case2_cubic(3, 3, 2), case2_brackets(3, 3, 2))
    assert roots == pytest.approx([3.392344345630, 0.325396771834, -2.717741117464], abs=1e-9)
    assert all(abs(np.polyval([1, -1, -9, 3], x)) < 1e-11 for x in roots)


def test_solve_case4_cubic_matches_solver():
    roots = solve_bracketed_cubic(case4_cubic(3, 3, 4), case4_brackets(3, 3, 4))
    w = spectrum(bipartite_with_loops(3, 3, 4)).values()
    for x in roots:
        assert min(abs(x - y) for y in w) < 1e-9
    assert roots == pytest.approx([3.717741117464, 0.674603228166, -2.392344345630], abs=1e-9)


def test_solve_rejects_bad_bracket():
    with pytest.raises(BracketError):
        solve_bracketed_cubic((-1.0, 0.0, 0.0), [(-1.0, -0.5), (-0.5, 0.5), (0.5, 2.0)])


def test_cubic_requires_distinct_real_roots():
    with pytest.raises(ValueError):
        CubicCoefficients(-1.0, 0.0, 0.0)
    c = CubicCoefficients(-1.0, -4.0, 2.0)
    assert c.discriminant > 0 and c(0.0) == 2.0


def test_roots_accuracy():
    c = CubicCoefficients(-1.0, -24.0, 6.0)
    for x in solve_bracketed_cubic(c, [(-10, 0), (0, 1), (1, 10)]):
        assert abs(c(x)) < 1e-10


@pytest.mark.parametrize("m, n, sigma, p0, p1", [(3, 3, 4, 6, -3), (2, 3, 4, 2, -4)])
def test_case4_brackets_signs(m, n, sigma, p0, p1):
    c = case4_cubic(m, n, sigma)
    assert c(0.0) == p0 and c(1.0) == p1
    (lo, _), _, (_, hi) = case4_brackets(m, n, sigma)
    assert c(lo) < 0 < c(hi)


def test_case4_brackets_precondition():
    with pytest.raises(ValueError):
        case4_brackets(1, 1, 2)
    with pytest.raises(ValueError):
        case2_brackets(3, 3, 3)


def test_cubic_roots_lie_in_unit_split():
    for m in range(1, 9):
        for n in range(1, 9):
            for sigma in range(1, m + n):
                if sigma < m:
                    c, br = case2_cubic(m, n, sigma), case2_brackets(m, n, sigma)
                elif m < sigma:
                    c, br = case4_cubic(m, n, sigma), case4_brackets(m, n, sigma)
                else:
                    continue
                hi, mid, lo = solve_bracketed_cubic(c, br)
                assert lo < 0 < mid < 1 < hi


def test_closed_forms_satisfy_trace_identities():
    for n in range(1, 13):
        for sigma in range(n + 1):
            s = spec_complete(n, sigma)
            assert abs(sum(v * k for v, k in s.pairs) - sigma) < 1e-9
            assert abs(sum(v * v * k for v, k in s.pairs) - (n * (n - 1) + sigma)) < 1e-9
    for m in range(1, 9):
        for n in range(1, 9):
            for sigma in range(m + n + 1):
                s = spec_complete_bipartite(m, n, sigma)
                assert s.order == m + n
                assert abs(sum(v * k for v, k in s.pairs) - sigma) < 1e-9
                assert abs(sum(v * v * k for v, k in s.pairs) - (2 * m * n + sigma)) < 1e-9
                sm, sn = min(sigma, m), max(0, sigma - m)
                cube = 3 * (m * sn + n * sm) + sigma
                assert abs(sum(v ** 3 * k for v, k in s.pairs) - cube) < 1e-8 * max(1, cube)


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_complete_matches_numeric(n):
    for sigma in range(n + 1):
        cf, num = spec_complete(n, sigma), spectrum(complete_with_loops(n, sigma))
        assert cf.multiplicities() == num.multiplicities()
        assert max_discrepancy(cf, num) <= 1e-8


def test_star_and_k11_edge_cases():
    for m, n in [(1, 1), (1, 4), (4, 1)]:
        for sigma in range(m + n + 1):
            cf, num = spec_complete_bipartite(m, n, sigma), spectrum(bipartite_with_loops(m, n, sigma))
            assert cf.multiplicities() == num.multiplicities()
            assert max_discrepancy(cf, num) <= 1e-8
