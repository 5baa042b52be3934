"""Simple graphs, self-loop graphs and small-instance enumeration.

Vertices are the integers ``0..n-1``. A :class:`LoopGraph` pairs a simple
:class:`Graph` with the set of vertices carrying a loop; its adjacency
matrix is the base adjacency plus ones on the diagonal at looped vertices.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

MAX_ENUMERATION_ORDER = 7

Edge = tuple[int, int]


class GraphError(ValueError):
    """Invalid graph construction or input."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.sorted_edges():
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


@dataclass(frozen=True)
class LoopGraph:
    base: Graph
    loops: frozenset[int]

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def sigma(self) -> int:
        return len(self.loops)

    def complement_loops(self) -> LoopGraph:
        """The same base graph with loops on exactly the unlooped vertices."""
        return LoopGraph(self.base, frozenset(range(self.n)) - self.loops)

    def __repr__(self) -> str:
        return f"LoopGraph(n={self.n}, edges={self.base.sorted_edges()}, loops={sorted(self.loops)})"


@dataclass(frozen=True)
class Bipartition:
    left: frozenset[int]
    right: frozenset[int]

    @property
    def sizes(self) -> tuple[int, int]:
        return len(self.left), len(self.right)


def make_graph(n: int, edges: Iterable[Iterable[int]] = ()) -> Graph:
    """Build a validated graph; pairs are normalized to ``u < v``.

    Raises :class:`GraphError` on self-pairs, duplicates or endpoints outside
    ``[0, n)``.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    seen: set[Edge] = set()
    for pair in edges:
        u, v = (int(x) for x in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise GraphError(f"self-pair ({u}, {v}) is not a simple edge; use loops")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise GraphError(f"duplicate edge {e}")
        seen.add(e)
    return Graph(n, frozenset(seen))


def with_loops(g: Graph, loops: Iterable[int]) -> LoopGraph:
    s = frozenset(int(v) for v in loops)
    bad = sorted(v for v in s if not 0 <= v < g.n)
    if bad:
        raise GraphError(f"loop vertices {bad} outside [0, {g.n})")
    return LoopGraph(g, s)


# -- generators ---------------------------------------------------------------

def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"complete graph needs n >= 1, got {n}")
    return make_graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(m: int, n: int) -> Graph:
    """``K_{m,n}`` with the left part on ``0..m-1``."""
    if m < 1 or n < 1:
        raise GraphError(f"bipartite parts need sizes >= 1, got {m},{n}")
    return make_graph(m + n, ((i, m + j) for i in range(m) for j in range(n)))


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return make_graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return make_graph(n, ((i, (i + 1) % n) for i in range(n)))


def empty(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"empty graph needs n >= 1, got {n}")
    return make_graph(n)


GENERATORS = {
    "complete": (complete, 1),
    "bipartite": (complete_bipartite, 2),
    "path": (path, 1),
    "cycle": (cycle, 1),
    "empty": (empty, 1),
}


def generator(kind: str, *sizes: int) -> Graph:
    try:
        fn, arity = GENERATORS[kind]
    except KeyError:
        raise GraphError(f"unknown generator kind {kind!r}") from None
    if len(sizes) != arity:
        raise GraphError(f"generator {kind!r} takes {arity} size argument(s), got {len(sizes)}")
    return fn(*sizes)


def parse_generator(text: str) -> tuple[str, tuple[int, ...]]:
    """Split ``kind(:args)?`` into the kind and its integer sizes."""
    kind, sep, rest = text.strip().partition(":")
    if kind not in GENERATORS:
        raise GraphError(f"unknown generator kind {kind!r}")
    sizes: list[int] = []
    if sep:
        for token in rest.split(","):
            try:
                sizes.append(int(token))
            except ValueError:
                raise GraphError(f"bad size token {token!r} in generator {text!r}") from None
    return kind, tuple(sizes)


# -- structure ----------------------------------------------------------------

def complement(g: Graph) -> Graph:
    all_pairs = set(itertools.combinations(range(g.n), 2))
    return Graph(g.n, frozenset(all_pairs - g.edges))


def degrees(g: Graph) -> list[int]:
    """Base-graph degrees; loops are never counted."""
    d = [0] * g.n
    for u, v in g.edges:
        d[u] += 1
        d[v] += 1
    return d


def max_degree(g: Graph) -> int:
    return max(degrees(g), default=0)


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components, ordered by smallest vertex."""
    adj = g.neighbors()
    seen = [False] * g.n
    out = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(frozenset(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def _two_color(g: Graph) -> tuple[list[int], list[int] | None]:
    """BFS 2-coloring. Returns ``(colors, None)`` or ``(partial, odd_closed_walk)``."""
    adj = g.neighbors()
    color = [-1] * g.n
    parent = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return color, _odd_walk(parent, u, w)
    return color, None


def _odd_walk(parent: list[int], u: int, w: int) -> list[int]:
    # u and w share a color and are adjacent: tree paths to the BFS root plus
    # the edge u-w close up into a walk of odd length.
    up = [u]
    while parent[up[-1]] != -1:
        up.append(parent[up[-1]])
    wp = [w]
    while parent[wp[-1]] != -1:
        wp.append(parent[wp[-1]])
    return up + wp[-2::-1] + [u]


def is_bipartite(g: Graph) -> Bipartition | None:
    """A 2-coloring by BFS, or ``None`` when an odd cycle exists.

    The lowest vertex of each component (in particular every isolated vertex)
    goes to the left part.
    """
    color, odd = _two_color(g)
    if odd is not None:
        return None
    left = frozenset(v for v in range(g.n) if color[v] == 0)
    return Bipartition(left, frozenset(range(g.n)) - left)


def odd_closed_walk(g: Graph) -> list[int] | None:
    """A closed walk of odd length (vertex sequence, first == last), if any."""
    return _two_color(g)[1]


def is_semiregular(lg: LoopGraph | Graph, a: int, b: int) -> bool:
    """True iff every base-graph degree is ``a`` or ``b``."""
    g = lg.base if isinstance(lg, LoopGraph) else lg
    return all(d in (a, b) for d in degrees(g))


def has_loop_degree_pattern(lg: LoopGraph, k: int) -> bool:
    """Degree ``k`` on looped vertices and ``k + 1`` elsewhere."""
    d = degrees(lg.base)
    return all(d[v] == (k if v in lg.loops else k + 1) for v in range(lg.n))


# -- enumeration --------------------------------------------------------------

def vertex_pairs(n: int) -> list[Edge]:
    """Lexicographic pair order; bit ``i`` of a graph index selects pair ``i``."""
    return list(itertools.combinations(range(n), 2))


def graph_from_index(n: int, index: int) -> Graph:
    pairs = vertex_pairs(n)
    return Graph(n, frozenset(p for i, p in enumerate(pairs) if index >> i & 1))


def graph_index(g: Graph) -> int:
    return sum(1 << i for i, p in enumerate(vertex_pairs(g.n)) if p in g.edges)


def loops_from_mask(mask: int) -> frozenset[int]:
    return frozenset(v for v in range(mask.bit_length()) if mask >> v & 1)


def enumerate_labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices, once each, in index order."""
    if not 1 <= n <= MAX_ENUMERATION_ORDER:
        raise GraphError(f"enumeration order must be in [1, {MAX_ENUMERATION_ORDER}], got {n}")
    pairs = vertex_pairs(n)
    for index in range(1 << len(pairs)):
        yield Graph(n, frozenset(p for i, p in enumerate(pairs) if index >> i & 1))


# -- text format --------------------------------------------------------------

def parse_graph_text(text: str) -> LoopGraph:
    """Parse the ``n``/``e``/``l`` line format into a loop graph."""
    n = None
    edges: list[Edge] = []
    loops: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        kind, *args = line.split()
        try:
            values = [int(a) for a in args]
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer argument in {line!r}") from None
        expected = {"n": 1, "e": 2, "l": 1}.get(kind)
        if expected is None:
            raise GraphError(f"line {lineno}: unknown line kind {kind!r}")
        if len(values) != expected:
            raise GraphError(f"line {lineno}: {kind!r} takes {expected} argument(s)")
        if kind == "n":
            if n is not None:
                raise GraphError(f"line {lineno}: repeated 'n' line")
            n = values[0]
        elif n is None:
            raise GraphError(f"line {lineno}: {kind!r} before the 'n' line")
        elif kind == "e":
            edges.append((values[0], values[1]))
        else:
            loops.append(values[0])
    if n is None:
        raise GraphError("missing 'n' line")
    if len(set(loops)) != len(loops):
        raise GraphError("duplicate loop vertex")
    return with_loops(make_graph(n, edges), loops)


def format_graph_text(lg: LoopGraph | Graph) -> str:
    if isinstance(lg, Graph):
        lg = LoopGraph(lg, frozenset())
    lines = [f"n {lg.n}"]
    lines += [f"e {u} {v}" for u, v in lg.base.sorted_edges()]
    lines += [f"l {v}" for v in sorted(lg.loops)]
    return "\n".join(lines) + "\n"


def read_graph_file(path: str | Path) -> LoopGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphError(f"cannot read graph file {str(path)!r}: {exc.strerror}") from None
    return parse_graph_text(text)
