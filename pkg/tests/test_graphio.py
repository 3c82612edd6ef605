import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bnt.errors import DuplicateEdge, NoPaths, ParseError, PathBudgetExceeded, SelfLoop
from bnt.graphio import Graph, MonitorSpec, distances, enumerate_paths, read_graph, write_graph
from bnt.toy import TOY_GRAPH_TEXT, TOY_WALKS_ONE_BASED

PATH3 = Graph(3, ((0, 1), (1, 2)))
TRIANGLE = Graph(3, ((0, 1), (1, 2), (0, 2)))


def simple_path_sets(G, sources, targets, cutoff):
    """Node sets of simple paths, by plain recursion over adjacency lists."""
    adj = {u: G.neighbours(u) for u in range(G.n)}
    out = set()

    def walk(path, t):
        x = path[-1]
        if x == t:
            out.add(frozenset(path))
            return
        if len(path) - 1 == cutoff:
            return
        for y in adj[x]:
            if y not in path:
                walk(path + [y], t)

    for s in sources:
        for t in targets:
            if s != t:
                walk([s], t)
    return out


def test_read_graph_toy():
    G = read_graph(TOY_GRAPH_TEXT, one_based=True)
    assert G.n == 7 and len(G.edges) == 11
    assert read_graph(write_graph(G, one_based=True), one_based=True) == G


def test_read_graph_small_cases():
    G = read_graph("1\n")
    assert G.n == 1 and G.edges == ()
    with pytest.raises(SelfLoop):
        read_graph("2\n1 1\n", one_based=True)
    with pytest.raises(DuplicateEdge):
        read_graph("3\n0 1\n1 0\n")


@pytest.mark.parametrize("text", ["", "x\n", "3\n0 1 2\n", "3\n0 a\n", "3\n0 3\n"])
def test_read_graph_parse_errors(text):
    with pytest.raises(ParseError):
        read_graph(text)


def test_graph_rejects_bad_edges():
    with pytest.raises(SelfLoop):
        Graph(2, ((1, 1),))
    with pytest.raises(DuplicateEdge):
        Graph(2, ((0, 1), (1, 0)))


def test_path_graph():
    e = enumerate_paths(PATH3, MonitorSpec((0,), (2,)), cutoff=5)
    assert e.matrix.bits.tolist() == [[True, True, True]]
    assert e.remap == (0, 1, 2)


def test_triangle():
    e = enumerate_paths(TRIANGLE, MonitorSpec((0,), (2,)), cutoff=2)
    rows = {frozenset(e.remap[i] for i in np.flatnonzero(r)) for r in e.matrix.bits}
    assert rows == {frozenset({0, 2}), frozenset({0, 1, 2})}
    e1 = enumerate_paths(TRIANGLE, MonitorSpec((0,), (2,)), cutoff=1)
    assert e1.matrix.m == 1 and e1.remap == (0, 2)


def test_errors():
    with pytest.raises(NoPaths):
        enumerate_paths(Graph(3, ((0, 1),)), MonitorSpec((0,), (2,)))
    with pytest.raises(NoPaths):
        enumerate_paths(PATH3, MonitorSpec((0,), (0,)))
    with pytest.raises(ValueError):
        enumerate_paths(PATH3, MonitorSpec((0,), (2,)), cutoff=0)
    K6 = Graph(6, tuple(combinations(range(6), 2)))
    with pytest.raises(PathBudgetExceeded):
        enumerate_paths(K6, MonitorSpec((0,), (5,)), max_paths=10)
    with pytest.raises(ValueError):
        MonitorSpec((), (1,))


def test_toy_walks_present(toy_g):
    src = tuple(w[0] - 1 for w in TOY_WALKS_ONE_BASED)
    dst = tuple(w[-1] - 1 for w in TOY_WALKS_ONE_BASED)
    e = enumerate_paths(toy_g, MonitorSpec(src, dst))
    rows = {frozenset(e.remap[i] for i in np.flatnonzero(r)) for r in e.matrix.bits}
    for walk in TOY_WALKS_ONE_BASED:
        assert frozenset(v - 1 for v in walk) in rows


graphs = st.integers(2, 9).flatmap(
    lambda n: st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] < e[1]), max_size=14).map(
        lambda es: Graph(n, tuple(sorted(es)))
    )
)


@settings(max_examples=150, deadline=None)
@given(graphs, st.data())
def test_enumeration_matches_recursion(G, data):
    sources = data.draw(st.lists(st.integers(0, G.n - 1), min_size=1, max_size=3, unique=True))
    targets = data.draw(st.lists(st.integers(0, G.n - 1), min_size=1, max_size=3, unique=True))
    cutoff = data.draw(st.integers(1, G.n))
    expect = simple_path_sets(G, sources, targets, cutoff)
    if not expect:
        with pytest.raises(NoPaths):
            enumerate_paths(G, MonitorSpec(tuple(sources), tuple(targets)), cutoff)
        return
    e = enumerate_paths(G, MonitorSpec(tuple(sources), tuple(targets)), cutoff)
    rows = [frozenset(e.remap[i] for i in np.flatnonzero(r)) for r in e.matrix.bits]
    assert len(rows) == len(set(rows))
    assert set(rows) == expect
    assert list(e.remap) == sorted(set().union(*expect))
    for seq, row in zip(e.paths, rows):
        assert frozenset(seq) == row and seq[0] in sources and seq[-1] in targets


def test_distances_examples(toy_g):
    assert distances(PATH3)(0, 2) == 2
    D = distances(toy_g)
    assert D(0, 5) == 3
    assert distances(Graph(3, ((0, 1),)))(0, 2) == math.inf
    assert D.at_distance(0, 1) == toy_g.neighbours(0)


@settings(max_examples=80, deadline=None)
@given(graphs)
def test_distance_properties(G):
    D = distances(G).dist
    assert np.array_equal(D, D.T)
    assert np.all(np.diag(D) == 0)
    n = G.n
    for a in range(n):
        for b in range(n):
            assert np.all(D[a, b] <= D[a, :] + D[:, b])


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_canonical_and_all_shortest(G):
    D = distances(G)
    for u in range(G.n):
        for v in range(G.n):
            p = D.canonical_path(u, v)
            if p is None:
                assert D(u, v) == math.inf and D.all_shortest(u, v) == []
                continue
            assert len(p) - 1 == D(u, v) and p[0] == u and p[-1] == v
            allp = D.all_shortest(u, v)
            assert p in allp and all(len(q) == len(p) for q in allp)
