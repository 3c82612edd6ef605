"""Upper bounds on the number of k-distinguishable nodes.

A node ``u`` and a candidate set ``W`` (``u`` not in ``W``) are *k-equal
modulo a path selector* when

1. some ``w, w'`` in ``W`` satisfy ``P(u) - sel(u, w) <= P(w')``, and
2. every ``w`` in ``W`` satisfies ``P(w) - sel(u, w) <= P(u)``,

where ``sel(u, w)`` is a subset of the paths shared by ``u`` and ``w``.
These two conditions force ``P(u) == P(W)``, so ``u`` is not
``|W|``-distinguishable.  :func:`lb_dis` peels such nodes off level by
level (``W`` of size <= 1, then <= 2, ...) and reports
``n - (nodes peeled)`` as an upper bound on ``|DIS_k|``.

Which ``W`` are tried and which selector is used come from a
:class:`Strategy`: graph neighbours, nodes at a fixed hop distance, or
all nodes with shortest-path selectors, plus fully explicit tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import GraphMatrixMismatch, SelectorOutOfRange
from .graphio import Distances, Graph, distances
from .pathmatrix import NodeSet, PathMatrix, bits_to_tuple, tuple_to_bits

SelectorFn = Callable[[int, int], int]

KINDS = ("neighbours", "distance", "shortest_paths", "explicit")
SELECTORS = ("full", "shortest-only", "explicit")


@dataclass(frozen=True)
class StrategyConfig:
    kind: str
    d: int | None = None
    selector: str = "full"
    explicit_w: Mapping[int, Sequence[Sequence[int]]] | None = None
    explicit_sel: Mapping[tuple[int, int], Iterable[int]] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown strategy kind {self.kind!r}")
        if self.selector not in SELECTORS:
            raise ValueError(f"unknown selector {self.selector!r}")
        if self.kind == "distance" and (self.d is None or self.d < 1):
            raise ValueError("distance strategy needs d >= 1")
        if self.kind == "explicit" and self.explicit_w is None:
            raise ValueError("explicit strategy needs W tables")
        if self.selector == "explicit" and self.explicit_sel is None:
            raise ValueError("explicit selector needs a path table")


class Strategy:
    """Candidate sets and path selectors for every node, built lazily."""

    def __init__(
        self,
        P: PathMatrix,
        config: StrategyConfig,
        graph: Graph | None = None,
        remap: Sequence[int] | None = None,
    ):
        self.P = P
        self.config = config
        self.graph = graph
        identity = remap is None
        if identity:
            remap = tuple(range(P.n))
        if len(remap) != P.n:
            raise GraphMatrixMismatch(f"remap has {len(remap)} entries, matrix has {P.n} nodes")
        self.remap = tuple(remap)
        needs_graph = config.kind in ("neighbours", "distance", "shortest_paths") or config.selector == "shortest-only"
        if needs_graph:
            if graph is None:
                raise GraphMatrixMismatch(f"strategy {config.kind!r} needs a graph")
            if max(self.remap, default=-1) >= graph.n or len(set(self.remap)) != len(self.remap):
                raise GraphMatrixMismatch("matrix columns do not map injectively onto graph vertices")
            if identity and graph.n != P.n:
                raise GraphMatrixMismatch(f"graph has {graph.n} vertices, matrix has {P.n} nodes")
        self._column_of = {v: i for i, v in enumerate(self.remap)}
        self._dist: Distances | None = distances(graph) if needs_graph else None
        self._pool: dict[int, tuple[int, ...]] = {}
        self._sel: dict[tuple[int, int], int] = {}

    # candidate pools ------------------------------------------------------

    def _graph_pool(self, u: int, vertices: Iterable[int]) -> tuple[int, ...]:
        cols = [self._column_of[v] for v in vertices if v in self._column_of]
        return tuple(sorted(c for c in cols if c != u))

    def pool(self, u: int) -> tuple[int, ...]:
        """Nodes that may appear in a candidate set for ``u``."""
        if u not in self._pool:
            kind = self.config.kind
            gu = self.remap[u]
            if kind == "neighbours":
                pool = self._graph_pool(u, self.graph.neighbours(gu))
            elif kind == "distance":
                pool = self._graph_pool(u, self._dist.at_distance(gu, self.config.d))
            elif kind == "shortest_paths":
                pool = tuple(v for v in range(self.P.n) if v != u)
            else:
                pool = tuple(sorted({w for W in self.config.explicit_w.get(u, ()) for w in W} - {u}))
            self._pool[u] = pool
        return self._pool[u]

    def candidate_sets(self, u: int, live: set[int] | None, k: int) -> Iterator[tuple[int, ...]]:
        """Sets ``W`` of 1..k nodes (all in ``live`` when given), sorted by size then lexicographically."""
        if self.config.kind == "explicit":
            sets = []
            for W in self.config.explicit_w.get(u, ()):
                W = tuple(sorted(set(W)))
                if W and u not in W and len(W) <= k and (live is None or set(W) <= live):
                    sets.append(W)
            yield from sorted(set(sets), key=lambda W: (len(W), W))
            return
        pool = [v for v in self.pool(u) if live is None or v in live]
        for size in range(1, min(k, len(pool)) + 1):
            yield from combinations(pool, size)

    # selectors ------------------------------------------------------------

    def _shortest_mask(self, u: int, w: int) -> int:
        rows = self.P.row_masks
        out = 0
        for path in self._dist.all_shortest(self.remap[u], self.remap[w]):
            if any(v not in self._column_of for v in path):
                continue  # the path leaves the measured nodes, no row can contain it
            need = tuple_to_bits(self._column_of[v] for v in path)
            for p, row in enumerate(rows):
                if row & need == need:
                    out |= 1 << p
        return out

    def select(self, u: int, w: int) -> int:
        """Path bitmask for the pair ``(u, w)``; always within ``P(u) & P(w)``."""
        key = (u, w)
        if key not in self._sel:
            shared = self.P.column_masks[u] & self.P.column_masks[w]
            mode = self.config.selector
            if mode == "full":
                mask = shared
            elif mode == "shortest-only":
                mask = self._shortest_mask(u, w) & shared
            else:
                mask = tuple_to_bits(self.config.explicit_sel.get(key, ()))
            self._sel[key] = mask
        return self._sel[key]


def builtin_strategies(
    G: Graph,
    P: PathMatrix,
    kind: str,
    d: int | None = None,
    selector: str | None = None,
    remap: Sequence[int] | None = None,
) -> Strategy:
    """Graph-derived strategies.

    ``neighbours``: candidate sets drawn from graph neighbours, full shared
    paths as selector.  ``distance``: nodes exactly ``d`` hops away.
    ``shortest_paths``: all other nodes, with the selector keeping the
    measurement paths that contain a whole shortest ``u``-``w`` path.
    """
    if remap is None and G.n != P.n:
        raise GraphMatrixMismatch(f"graph has {G.n} vertices, matrix has {P.n} nodes")
    if selector is None:
        selector = "shortest-only" if kind == "shortest_paths" else "full"
    return Strategy(P, StrategyConfig(kind=kind, d=d, selector=selector), graph=G, remap=remap)


def explicit_strategy(
    P: PathMatrix,
    w_table: Mapping[int, Sequence[Sequence[int]]],
    sel_table: Mapping[tuple[int, int], Iterable[int]] | None = None,
) -> Strategy:
    """Strategy from user tables; without ``sel_table`` the full shared paths are used."""
    selector = "full" if sel_table is None else "explicit"
    return Strategy(P, StrategyConfig(kind="explicit", selector=selector, explicit_w=w_table, explicit_sel=sel_table))


def _selector_fn(P: PathMatrix, u: int, pathsel) -> SelectorFn:
    if callable(pathsel):
        return pathsel
    if isinstance(pathsel, Strategy):
        return pathsel.select
    table = {w: tuple_to_bits(ps) for w, ps in pathsel.items()}
    return lambda _u, w: table.get(w, 0)


def k_equal(P: PathMatrix, u: int, W: Sequence[int], pathsel) -> bool:
    """Whether ``u`` and ``W`` are k-equal modulo the selector.

    ``pathsel`` is a :class:`Strategy`, a callable ``(u, w) -> path bitmask``
    or a mapping ``w -> iterable of paths``.  ``w == w'`` is allowed in the
    first condition.
    """
    if not W:
        raise ValueError("W must be nonempty")
    if u in W:
        raise ValueError(f"node {u} belongs to W")
    sel = pathsel.select if isinstance(pathsel, Strategy) else _selector_fn(P, u, pathsel)
    cols = P.column_masks
    pu = cols[u]
    masks = {}
    for w in W:
        s = sel(u, w)
        if s & ~(pu & cols[w]):
            raise SelectorOutOfRange(f"selector for ({u}, {w}) leaves the shared paths")
        masks[w] = s
    # condition 2
    for w in W:
        if cols[w] & ~masks[w] & ~pu:
            return False
    # condition 1
    union_w = 0
    for w in W:
        union_w |= cols[w]
    for w in W:
        rest = pu & ~masks[w]
        if rest & ~union_w:
            continue  # no single w' can contain it either
        for w2 in W:
            if rest & ~cols[w2] == 0:
                return True
    return False


def e_set(P: PathMatrix, V: Iterable[int], k: int, strategy: Strategy, restrict_to_live: bool = True) -> NodeSet:
    """Nodes of ``V`` that are k-equal to one of their candidate sets.

    With ``restrict_to_live`` (default) candidate sets must lie inside ``V``.
    """
    V = sorted(set(V))
    live = set(V) if restrict_to_live else None
    out = []
    for u in V:
        for W in strategy.candidate_sets(u, live, k):
            if k_equal(P, u, W, strategy):
                out.append(u)
                break
    return tuple(out)


@dataclass(frozen=True)
class TauLevel:
    k: int
    tau: int
    removed: NodeSet


@dataclass(frozen=True)
class TauLedger:
    n: int
    levels: tuple[TauLevel, ...]
    bound: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "levels": [{"k": lv.k, "tau": lv.tau, "removed": list(lv.removed)} for lv in self.levels],
            "bound": self.bound,
        }


def lb_dis(
    P: PathMatrix,
    k_max: int,
    strategy: Strategy,
    check: bool = False,
    restrict_to_live: bool = True,
) -> TauLedger:
    """Peel certified non-distinguishable nodes for levels 1..k_max.

    Returns the per-level counts and the bound ``n - sum(tau)`` on
    ``|DIS_{k_max}|``.  With ``check=True`` every removed node is confirmed
    not distinguishable at its level by exhaustive search.
    """
    if not 1 <= k_max <= P.n:
        raise ValueError(f"k_max must lie in [1, {P.n}]")
    live = set(range(P.n))
    levels = []
    for j in range(1, k_max + 1):
        removed = e_set(P, live, j, strategy, restrict_to_live)
        if check:
            from .oracle import is_node_distinguishable

            for u in removed:
                if is_node_distinguishable(P, u, j):
                    raise AssertionError(f"node {u} removed at level {j} is {j}-distinguishable")
        live -= set(removed)
        levels.append(TauLevel(j, len(removed), removed))
    bound = P.n - sum(lv.tau for lv in levels)
    return TauLedger(P.n, tuple(levels), bound)
