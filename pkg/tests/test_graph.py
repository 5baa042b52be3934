import itertools

import pytest
from hypothesis import given, strategies as st

from selfloop.graph import (GraphError, complement, components, cycle, degrees, empty,
                            enumerate_labeled_graphs, format_graph_text, generator, graph_from_index,
                            graph_index, has_loop_degree_pattern, is_bipartite, is_connected,
                            is_semiregular, make_graph, max_degree, odd_closed_walk,
                            parse_generator, parse_graph_text, read_graph_file, with_loops, Graph)


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return make_graph(n, chosen)


def test_make_graph_path():
    g = make_graph(3, [(0, 1), (1, 2)])
    assert g.n == 3 and g.m == 2


def test_make_graph_single_vertex():
    g = make_graph(1, [])
    assert g.n == 1 and g.m == 0


def test_make_graph_normalizes_order():
    assert make_graph(3, [(2, 0)]).edges == {(0, 2)}


@pytest.mark.parametrize("n, edges, match", [
    (4, [(0, 1), (0, 1)], "duplicate"),
    (4, [(0, 1), (1, 0)], "duplicate"),
    (3, [(1, 1)], "self-pair"),
    (3, [(0, 3)], "outside"),
    (3, [(-1, 0)], "outside"),
])
def test_make_graph_rejects(n, edges, match):
    with pytest.raises(GraphError, match=match):
        make_graph(n, edges)


@pytest.mark.parametrize("kind, sizes, m", [
    ("complete", (4,), 6),
    ("bipartite", (3, 3), 9),
    ("bipartite", (2, 5), 10),
    ("path", (5,), 4),
    ("cycle", (5,), 5),
    ("empty", (4,), 0),
    ("complete", (1,), 0),
])
def test_generator_edge_counts(kind, sizes, m):
    assert generator(kind, *sizes).m == m


def test_bipartite_left_block():
    g = generator("bipartite", 2, 3)
    assert all(u < 2 <= v for u, v in g.edges)


@pytest.mark.parametrize("kind, sizes", [("cycle", (2,)), ("complete", (0,)), ("bipartite", (0, 3)),
                                         ("path", (0,)), ("empty", (0,)), ("cycle", (3, 4))])
def test_generator_rejects(kind, sizes):
    with pytest.raises(GraphError):
        generator(kind, *sizes)


def test_parse_generator_names_bad_token():
    assert parse_generator("bipartite:3,4") == ("bipartite", (3, 4))
    assert parse_generator("complete:1") == ("complete", (1,))
    with pytest.raises(GraphError, match="'x'"):
        parse_generator("complete:x")
    with pytest.raises(GraphError, match="'wheel'"):
        parse_generator("wheel:5")


def test_with_loops():
    lg = with_loops(generator("complete", 3), {0, 1})
    assert lg.sigma == 2
    assert with_loops(generator("path", 2), {0, 1}).sigma == 2
    g = generator("cycle", 4)
    assert with_loops(g, ()).sigma == 0
    with pytest.raises(GraphError):
        with_loops(g, {4})


def test_complement_examples():
    assert complement(generator("complete", 5)) == empty(5)
    assert complement(empty(5)) == generator("complete", 5)
    c5 = complement(cycle(5))
    assert c5.m == 5
    assert sorted(degrees(c5)) == [2] * 5 and is_connected(c5)


@given(graphs())
def test_complement_involution(g):
    assert complement(complement(g)) == g


@given(graphs())
def test_degree_sum(g):
    assert sum(degrees(g)) == 2 * g.m


def test_degrees_examples():
    assert degrees(generator("complete", 4)) == [3, 3, 3, 3]
    assert max_degree(generator("complete", 4)) == 3
    assert degrees(generator("path", 3)) == [1, 2, 1]
    assert max_degree(generator("bipartite", 2, 5)) == 5


def test_loops_do_not_count_toward_degree():
    lg = with_loops(generator("path", 3), {1})
    assert degrees(lg.base) == [1, 2, 1]


def test_is_bipartite_examples():
    assert is_bipartite(cycle(4)).sizes == (2, 2)
    assert is_bipartite(cycle(5)) is None
    assert sorted(is_bipartite(generator("bipartite", 3, 3)).sizes) == [3, 3]


def test_isolated_vertices_go_left():
    part = is_bipartite(empty(3))
    assert part.left == {0, 1, 2} and not part.right


@given(graphs())
def test_bipartition_or_odd_walk(g):
    part = is_bipartite(g)
    if part is not None:
        assert part.left | part.right == set(range(g.n))
        assert not part.left & part.right
        assert all((u in part.left) != (v in part.left) for u, v in g.edges)
        assert odd_closed_walk(g) is None
    else:
        walk = odd_closed_walk(g)
        assert walk[0] == walk[-1]
        steps = list(zip(walk, walk[1:]))
        assert len(steps) % 2 == 1
        assert all((min(u, v), max(u, v)) in g.edges for u, v in steps)


def test_components_examples():
    assert is_connected(generator("path", 5))
    k3_k1 = make_graph(4, [(0, 1), (1, 2), (0, 2)])
    assert components(k3_k1) == [{0, 1, 2}, {3}]
    assert len(components(empty(3))) == 3


def test_is_semiregular():
    k23 = generator("bipartite", 2, 3)
    assert is_semiregular(k23, 2, 3)
    c4 = cycle(4)
    assert is_semiregular(c4, 2, 2)
    assert not is_semiregular(c4, 1, 3)
    assert is_semiregular(generator("bipartite", 1, 4), 1, 4)


def test_loop_degree_pattern():
    p3 = with_loops(generator("path", 3), {0, 2})
    assert has_loop_degree_pattern(p3, 1)
    assert not has_loop_degree_pattern(with_loops(generator("path", 3), {1}), 1)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 8), (4, 64), (6, 32768)])
def test_enumeration_counts(n, count):
    seen = {frozenset(g.edges) for g in enumerate_labeled_graphs(n)}
    assert len(seen) == count


def test_enumeration_order_matches_index():
    for i, g in enumerate(enumerate_labeled_graphs(4)):
        assert graph_from_index(4, i) == g
        assert graph_index(g) == i


@pytest.mark.parametrize("n", [0, 8])
def test_enumeration_range(n):
    with pytest.raises(GraphError):
        next(enumerate_labeled_graphs(n))


def test_text_format_example():
    lg = parse_graph_text("n 3\ne 0 1\ne 1 2\nl 0")
    assert lg.n == 3 and lg.base.edges == {(0, 1), (1, 2)} and lg.loops == {0}


@given(graphs(), st.data())
def test_text_format_round_trip(g, data):
    loops = data.draw(st.sets(st.integers(0, g.n - 1)))
    lg = with_loops(g, loops)
    assert parse_graph_text(format_graph_text(lg)) == lg


@pytest.mark.parametrize("text, match", [
    ("n 3\nx 0", "unknown line kind"),
    ("e 0 1\nn 3", "before"),
    ("n 3\ne 0 0", "self-pair"),
    ("n 3\ne 0 1 2", "takes 2"),
    ("n 3\nl 3", "outside"),
    ("n 2\nn 3", "repeated"),
    ("", "missing"),
    ("n 3\ne 0 a", "non-integer"),
])
def test_text_format_errors(text, match):
    with pytest.raises(GraphError, match=match):
        parse_graph_text(text)


def test_read_missing_file(tmp_path):
    with pytest.raises(GraphError, match="cannot read"):
        read_graph_file(tmp_path / "missing.g")


def test_graph_is_hashable_value():
    assert len({make_graph(2, [(0, 1)]), make_graph(2, [(1, 0)])}) == 1
    assert isinstance(make_graph(2, [(0, 1)]), Graph)
