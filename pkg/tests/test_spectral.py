import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from selfloop.graph import empty, generator, make_graph, with_loops
from selfloop.spectral import (ConvergenceError, Spectrum, SymMatrix, _jacobi, adjacency, cluster,
                               distinct_counts, eigenvalues, eigenvalues_batch, eigh, max_discrepancy,
                               power_traces, power_traces_batch, spectrum)


@st.composite
def loop_graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    loops = draw(st.sets(st.integers(0, n - 1)))
    return with_loops(make_graph(n, edges), loops)


@st.composite
def symmetric_matrices(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    vals = draw(st.lists(st.floats(-10, 10, allow_nan=False), min_size=n * n, max_size=n * n))
    a = np.array(vals).reshape(n, n)
    return a + a.T


def test_adjacency_examples():
    assert adjacency(with_loops(generator("complete", 2), {0, 1})).entries.tolist() == [[1, 1], [1, 1]]
    assert adjacency(with_loops(generator("complete", 2), ())).entries.tolist() == [[0, 1], [1, 0]]
    a = adjacency(with_loops(generator("path", 3), {1})).entries
    assert np.diag(a).tolist() == [0, 1, 0]
    assert a[0, 1] == a[1, 2] == 1 and a[0, 2] == 0


def test_symmatrix_mirrors_upper_triangle():
    m = SymMatrix([[1, 2], [99, 3]])
    assert m.entries.tolist() == [[1, 2], [2, 3]]
    with pytest.raises(ValueError):
        SymMatrix([1, 2, 3])


def test_eigenvalues_examples():
    assert np.allclose(eigenvalues(adjacency(with_loops(generator("complete", 2), ()))), [1, -1])
    assert np.allclose(eigenvalues(adjacency(with_loops(generator("complete", 3), range(3)))), [3, 0, 0],
                       atol=1e-12)
    assert np.allclose(eigenvalues(adjacency(with_loops(generator("bipartite", 2, 2), ()))),
                       [2, 0, 0, -2], atol=1e-12)


def test_spectrum_examples():
    s = spectrum(with_loops(generator("complete", 4), range(4)))
    assert s.multiplicities() == [1, 3]
    assert s.pairs[0][0] == pytest.approx(4, abs=1e-12) and s.pairs[1][0] == pytest.approx(0, abs=1e-12)
    s = spectrum(with_loops(generator("complete", 4), ()))
    assert s.multiplicities() == [1, 3]
    assert [v for v, _ in s.pairs] == pytest.approx([3, -1], abs=1e-12)
    assert spectrum(with_loops(empty(5), ())).pairs == ((0.0, 5),)


@settings(max_examples=150, deadline=None)
@given(symmetric_matrices())
def test_jacobi_matches_numpy(a):
    ours = np.array(eigenvalues(a))
    ref = np.linalg.eigvalsh(a)[::-1]
    scale = max(1.0, np.abs(ref).max())
    assert np.abs(ours - ref).max() <= 1e-10 * scale


@settings(max_examples=100, deadline=None)
@given(symmetric_matrices())
def test_jacobi_reconstruction(a):
    w, q = eigh(a)
    assert np.abs(q @ np.diag(w) @ q.T - a).max() <= 1e-9 * max(1.0, np.abs(a).max())
    assert np.abs(q.T @ q - np.eye(a.shape[0])).max() <= 1e-12


def test_batch_agrees_with_single():
    rng = np.random.default_rng(7)
    a = rng.integers(0, 2, (500, 5, 5))
    a = np.triu(a) + np.triu(a, 1).transpose(0, 2, 1)
    batch = eigenvalues_batch(a, chunk=64)
    for i in range(0, 500, 50):
        assert np.array_equal(batch[i], eigenvalues(a[i]))


def test_non_convergence_reports_residual():
    a = np.array([[[1.0, 1.0], [1.0, 2.0]]])
    with pytest.raises(ConvergenceError) as err:
        _jacobi(a.copy(), max_sweeps=0)
    assert err.value.residual > 0


def test_zero_matrix_converges_immediately():
    assert eigenvalues(np.zeros((3, 3))) == [0.0, 0.0, 0.0]


def test_cluster_merges_close_values():
    s = cluster([1.0, 1.0 + 5e-8, 0.0, -1.0])
    assert s.multiplicities() == [2, 1, 1]
    assert s.pairs[0][0] == pytest.approx(1.0 + 2.5e-8)
    assert cluster([1.0, 1.0 + 2e-7]).distinct == 2


def test_from_pairs_drops_zero_multiplicity():
    s = Spectrum.from_pairs([(1, 0), (0, 2), (2, 1)])
    assert s.pairs == ((2.0, 1), (0.0, 2))


@settings(max_examples=200, deadline=None)
@given(loop_graphs())
def test_trace_identities_against_solver(lg):
    w = np.array(eigenvalues(adjacency(lg)))
    assert abs(w.sum() - lg.sigma) <= 1e-8
    assert abs((w ** 2).sum() - (2 * lg.m + lg.sigma)) <= 1e-8


@settings(max_examples=200, deadline=None)
@given(loop_graphs())
def test_power_traces_agree_with_eigenvalues(lg):
    w = np.array(eigenvalues(adjacency(lg)))
    exact = power_traces(lg, 4)
    assert exact[:2] == [lg.sigma, 2 * lg.m + lg.sigma]
    for k, t in enumerate(exact, 1):
        assert abs((w ** k).sum() - t) <= 1e-7 * max(1, abs(t))


@given(loop_graphs())
def test_spectrum_multiplicities_sum_to_order(lg):
    s = spectrum(lg)
    assert s.order == lg.n
    vals = [v for v, _ in s.pairs]
    assert all(a - b > 1e-7 for a, b in zip(vals, vals[1:]))


def test_power_traces_bipartite_cube():
    m, n = 3, 4
    lg = with_loops(generator("bipartite", m, n), {0, 3, 5})
    sm, sn = 1, 2
    assert power_traces(lg, 3)[2] == 3 * (m * sn + n * sm) + 3


def test_power_traces_batch_matches_scalar():
    lgs = [with_loops(generator("cycle", 5), s) for s in ({0}, {1, 2}, set(), {0, 1, 2, 3, 4})]
    stack = np.stack([adjacency(lg).entries for lg in lgs])
    assert power_traces_batch(stack, 4).tolist() == [power_traces(lg, 4) for lg in lgs]


@pytest.mark.parametrize("k", [0, 5])
def test_power_traces_range(k):
    with pytest.raises(ValueError):
        power_traces(with_loops(empty(2), ()), k)


def test_distinct_counts():
    w = np.array([[2.0, 2.0, 0.0], [1.0, 1.0, 1.0]])
    assert distinct_counts(w).tolist() == [2, 1]


def test_max_discrepancy():
    a = Spectrum(((1.0, 2),))
    assert max_discrepancy(a, [1.0, 1.0 + 1e-9]) == pytest.approx(1e-9)
    assert math.isinf(max_discrepancy(a, [1.0]))
