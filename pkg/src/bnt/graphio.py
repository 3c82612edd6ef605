"""Undirected topologies, monitor placement and measurement-path enumeration."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .errors import DuplicateEdge, NoPaths, ParseError, PathBudgetExceeded, SelfLoop
from .pathmatrix import PathMatrix, validate


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for {self.n} vertices")
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DuplicateEdge(f"duplicate edge {key}")
            seen.add(key)

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges)
        return G

    def neighbours(self, u: int) -> tuple[int, ...]:
        return tuple(sorted({b if a == u else a for a, b in self.edges if u in (a, b)}))


@dataclass(frozen=True)
class MonitorSpec:
    sources: tuple[int, ...]
    targets: tuple[int, ...]

    def __post_init__(self):
        if not self.sources or not self.targets:
            raise ValueError("sources and targets must be nonempty")


def read_graph(text: str, one_based: bool = False) -> Graph:
    """Parse ``<vertex count>`` followed by one ``u v`` edge per line."""
    lines = [(i, ln.split("#")[0].strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise ParseError("empty graph file")
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise ParseError(f"expected vertex count, got {head!r}", lineno) from None
    if n < 1:
        raise ParseError("vertex count must be >= 1", lineno)
    offset = 1 if one_based else 0
    edges = []
    seen = set()
    for lineno, ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"expected two vertex ids, got {ln!r}", lineno)
        try:
            u, v = (int(x) - offset for x in parts)
        except ValueError:
            raise ParseError(f"non-integer vertex id in {ln!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range in {ln!r}", lineno)
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u + offset} (line {lineno})")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"duplicate edge {parts[0]} {parts[1]} (line {lineno})")
        seen.add(key)
        edges.append((u, v))
    return Graph(n, tuple(edges))


def write_graph(G: Graph, one_based: bool = False) -> str:
    off = 1 if one_based else 0
    return f"{G.n}\n" + "".join(f"{u + off} {v + off}\n" for u, v in G.edges)


@dataclass(frozen=True)
class PathEnumeration:
    matrix: PathMatrix
    remap: tuple[int, ...]  # matrix column -> graph vertex
    paths: tuple[tuple[int, ...], ...]  # one representative vertex sequence per row

    def to_dict(self) -> dict:
        return {"remap": list(self.remap), "paths": [list(p) for p in self.paths], "m": self.matrix.m, "n": self.matrix.n}


def enumerate_paths(
    G: Graph,
    monitors: MonitorSpec,
    cutoff: int | None = None,
    max_paths: int = 10**6,
) -> PathEnumeration:
    """All simple source-to-target paths with at most ``cutoff`` edges.

    Paths are deduplicated by node set and rows are sorted canonically.
    Vertices on no path are dropped; ``remap[i]`` is the graph vertex of
    column ``i``.  Columns may coincide (nodes sharing every path), so the
    matrix is validated with duplicate columns allowed.
    """
    if cutoff is None:
        cutoff = G.n
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    nxg = G.to_networkx()
    found: dict[frozenset, tuple[int, ...]] = {}
    produced = 0
    for s in monitors.sources:
        for t in monitors.targets:
            if s == t:
                continue
            for path in nx.all_simple_paths(nxg, s, t, cutoff=cutoff):
                produced += 1
                if produced > max_paths:
                    raise PathBudgetExceeded(f"more than {max_paths} simple paths")
                key = frozenset(path)
                if key not in found:
                    found[key] = tuple(path)
    if not found:
        raise NoPaths("no source-target path within the cutoff")
    rows = sorted(found, key=lambda s: tuple(sorted(s)))
    used = sorted(set().union(*rows))
    col = {v: i for i, v in enumerate(used)}
    grid = np.zeros((len(rows), len(used)), dtype=bool)
    for p, nodes in enumerate(rows):
        for v in nodes:
            grid[p, col[v]] = True
    P = validate(grid, allow_duplicate_columns=True)
    return PathEnumeration(P, tuple(used), tuple(found[r] for r in rows))


@dataclass(frozen=True)
class Distances:
    dist: np.ndarray  # float, inf for disconnected pairs
    graph: Graph

    def __call__(self, u: int, v: int) -> float:
        return float(self.dist[u, v])

    def at_distance(self, u: int, d: int) -> tuple[int, ...]:
        return tuple(int(v) for v in np.flatnonzero(self.dist[u] == d))

    def canonical_path(self, u: int, v: int) -> tuple[int, ...] | None:
        """A shortest u-v path choosing the smallest-index predecessor at every step."""
        if not np.isfinite(self.dist[u, v]):
            return None
        nbr = {x: self.graph.neighbours(x) for x in range(self.graph.n)}
        path = [v]
        while path[-1] != u:
            x = path[-1]
            d = self.dist[u, x]
            path.append(min(y for y in nbr[x] if self.dist[u, y] == d - 1))
        return tuple(reversed(path))

    def all_shortest(self, u: int, v: int, budget: int = 10**5) -> list[tuple[int, ...]]:
        if not np.isfinite(self.dist[u, v]):
            return []
        out = []
        for path in nx.all_shortest_paths(self.graph.to_networkx(), u, v):
            out.append(tuple(path))
            if len(out) > budget:
                raise PathBudgetExceeded(f"more than {budget} shortest paths between {u} and {v}")
        return sorted(out)


def distances(G: Graph) -> Distances:
    """All-pairs hop distances by breadth-first search."""
    nbr = [G.neighbours(u) for u in range(G.n)]
    dist = np.full((G.n, G.n), np.inf)
    for s in range(G.n):
        dist[s, s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in nbr[x]:
                if dist[s, y] == np.inf:
                    dist[s, y] = dist[s, x] + 1
                    queue.append(y)
    return Distances(dist, G)
