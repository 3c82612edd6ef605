"""Hypergraph transversals and their use for separability thresholds.

A node ``u`` fails to be k-separable exactly when some set of at most ``k``
other nodes covers every path through ``u``.  Restricting the matrix to
the paths through ``u`` (rows) and the other nodes on those paths
(columns) turns that question into a hitting-set problem, which is what
:func:`sep_hypergraph` builds.  The routines here either solve it exactly
(:func:`exact_mhs`, :func:`mns`) or produce a cheap minimal transversal
as an upper bound (:func:`ht`, :func:`simple_sep`, :func:`decr_sep`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from ._budget import Budget
from .errors import EmptyEdge, EmptyHypergraph
from .pathmatrix import NodeSet, PathMatrix, bits_to_tuple, validate


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple
    edges: tuple  # of frozensets; duplicates allowed

    @classmethod
    def of(cls, vertices: Iterable[Hashable], edges: Iterable[Iterable[Hashable]]) -> "Hypergraph":
        verts = tuple(sorted(set(vertices)))
        vset = set(verts)
        es = tuple(frozenset(e) for e in edges)
        for e in es:
            if not e <= vset:
                raise ValueError(f"edge {sorted(e)} not contained in the vertex set")
        return cls(verts, es)

    def is_transversal(self, T: Iterable[Hashable]) -> bool:
        T = set(T)
        return all(e & T for e in self.edges)

    def is_minimal_transversal(self, T: Iterable[Hashable]) -> bool:
        T = set(T)
        return self.is_transversal(T) and not any(self.is_transversal(T - {v}) for v in T)


@dataclass(frozen=True)
class SepWitness:
    """A cover of every path through ``node`` by the nodes in ``cover``."""

    node: int
    cover: NodeSet
    size: int

    def to_dict(self) -> dict:
        return {"node": self.node, "cover": list(self.cover), "size": self.size}


def _index(H: Hypergraph) -> tuple[dict, list[int]]:
    pos = {v: i for i, v in enumerate(H.vertices)}
    masks = []
    for e in H.edges:
        if not e:
            raise EmptyEdge("hypergraph has an empty edge; no transversal exists")
        mask = 0
        for v in e:
            mask |= 1 << pos[v]
        masks.append(mask)
    return pos, masks


def ht(H: Hypergraph, order: Sequence[Hashable] | None = None) -> tuple:
    """Minimal transversal by a single deletion sweep.

    Starting from all vertices, each vertex in ``order`` (default: sorted)
    is dropped whenever the remaining set still meets every edge.  The
    result is minimal but not necessarily of minimum size.
    """
    pos, masks = _index(H)
    if not masks:
        return ()
    if order is None:
        order = H.vertices
    elif sorted(order) != list(H.vertices) or len(set(order)) != len(order):
        raise ValueError("order must be a permutation of the hypergraph's vertices")
    current = (1 << len(H.vertices)) - 1
    for v in order:
        trial = current & ~(1 << pos[v])
        if all(e & trial for e in masks):
            current = trial
    return tuple(H.vertices[i] for i in bits_to_tuple(current))


def _packing_bound(edges: list[int]) -> int:
    # pairwise disjoint edges each need their own vertex
    used = 0
    count = 0
    for e in sorted(edges, key=lambda e: bin(e).count("1")):
        if not e & used:
            used |= e
            count += 1
    return count


def _min_cover(edges: list[int], allowed: int, limit: int, bud: Budget) -> int | None:
    """Size of a smallest cover of ``edges`` from ``allowed`` vertices, or
    ``None`` when none of size <= limit exists."""
    bud.spend()
    if not edges:
        return 0
    if limit <= 0:
        return None
    restricted = [e & allowed for e in edges]
    if any(r == 0 for r in restricted):
        return None
    if _packing_bound(restricted) > limit:
        return None
    pivot = min(restricted, key=lambda r: bin(r).count("1"))
    best = None
    for v in bits_to_tuple(pivot):
        bit = 1 << v
        rest = [e for e in edges if not e & bit]
        cap = limit - 1 if best is None else best - 2
        sub = _min_cover(rest, allowed, cap, bud)
        if sub is not None:
            best = sub + 1
        # covers containing v are explored; drop it from later branches
        allowed &= ~bit
        if best == 1:
            break
    return best


def exact_mhs(H: Hypergraph, budget: int | None = None) -> tuple:
    """Minimum hitting set by branch and bound.

    Branches on the vertices of an uncovered edge with fewest candidates and
    prunes with a disjoint-edge packing bound.  Among minimum covers the
    lexicographically smallest (in the sorted vertex order) is returned.
    """
    _, masks = _index(H)
    if not masks:
        return ()
    bud = Budget(budget)
    nv = len(H.vertices)
    full = (1 << nv) - 1
    size = _min_cover(masks, full, nv, bud)
    assert size is not None
    chosen: list[int] = []
    remaining = masks
    last = -1
    for slot in range(size):
        for v in range(last + 1, nv):
            bit = 1 << v
            rest = [e for e in remaining if not e & bit]
            higher = full & ~((1 << (v + 1)) - 1)
            if _min_cover(rest, higher, size - slot - 1, bud) is not None:
                chosen.append(v)
                remaining, last = rest, v
                break
        else:  # pragma: no cover - size is attainable by construction
            raise RuntimeError("lexicographic reconstruction failed")
    return tuple(H.vertices[i] for i in chosen)


def sep_hypergraph(P: PathMatrix, u: int) -> Hypergraph:
    """Set system whose transversals are the covers of the paths through ``u``.

    Vertices are the nodes other than ``u`` sharing a path with it; there is
    one edge per path through ``u``, holding those vertices on that path.  A
    path touching only ``u`` gives an empty edge.
    """
    cols, rows = P.column_masks, P.row_masks
    target = cols[u]
    others = [v for v in range(P.n) if v != u and cols[v] & target]
    keep = ~(1 << u)
    edges = [bits_to_tuple(rows[p] & keep) for p in bits_to_tuple(target)]
    return Hypergraph(tuple(others), tuple(frozenset(e) for e in edges))


def has_private_path(P: PathMatrix, u: int) -> bool:
    """True when some path through ``u`` touches no other node."""
    bit = 1 << u
    return any(P.row_masks[p] == bit for p in bits_to_tuple(P.column_masks[u]))


def _witness(u: int, cover: Iterable[int]) -> SepWitness:
    cover = tuple(sorted(cover))
    return SepWitness(u, cover, len(cover))


def simple_sep(P: PathMatrix, u: int, order: Sequence[int] | None = None) -> SepWitness | None:
    """One HT sweep over the covering system of ``u``.

    ``order`` is a permutation of all nodes (default ascending); nodes
    outside the covering system are skipped.  Returns ``None`` if ``u`` has
    a private path, in which case it is k-separable for every k.
    """
    if has_private_path(P, u):
        return None
    H = sep_hypergraph(P, u)
    sweep = None
    if order is not None:
        if sorted(order) != list(range(P.n)):
            raise ValueError("order must be a permutation of the node indices")
        members = set(H.vertices)
        sweep = [v for v in order if v in members]
    return _witness(u, ht(H, sweep))


def zero_groups(P: PathMatrix, u: int) -> dict[int, tuple[int, ...]]:
    """Group the nodes other than ``u`` by how many paths through ``u`` they miss.

    Nodes missing all of them cannot help cover ``u`` and are left out.
    """
    cols = P.column_masks
    target = cols[u]
    total = bin(target).count("1")
    groups: dict[int, list[int]] = {}
    for v in range(P.n):
        if v == u:
            continue
        missed = bin(target & ~cols[v]).count("1")
        if missed < total:
            groups.setdefault(missed, []).append(v)
    return {i: tuple(vs) for i, vs in sorted(groups.items())}


def decr_sep(P: PathMatrix, u: int, direction: str = "largest_first") -> SepWitness | None:
    """Staged cover of the paths through ``u``, one zero-count group at a time.

    Groups of nodes sharing the same number of missed paths are processed in
    turn (``largest_first``: the groups missing most paths first; or
    ``smallest_first``).  Each group covers what is still uncovered as far
    as it can, and an HT sweep keeps a minimal subset of it for that part.
    A final HT sweep over the groups drops those that are not needed.

    The coverage vector of a group ORs the group members' own columns over
    the still-uncovered rows; an HT call on a group only asks it to cover
    the rows it actually touches.
    """
    if direction not in ("largest_first", "smallest_first"):
        raise ValueError("direction must be 'largest_first' or 'smallest_first'")
    if has_private_path(P, u):
        return None
    cols, rows = P.column_masks, P.row_masks
    groups = zero_groups(P, u)
    index = list(groups)
    if direction == "largest_first":
        index.reverse()
    uncovered = cols[u]
    coverage: dict[int, int] = {}
    chosen: dict[int, tuple[int, ...]] = {}
    for i in index:
        members = groups[i]
        reach = 0
        for v in members:
            reach |= cols[v]
        y = uncovered & reach
        coverage[i] = y
        member_mask = 0
        for v in members:
            member_mask |= 1 << v
        edges = [bits_to_tuple(rows[p] & member_mask) for p in bits_to_tuple(y)]
        chosen[i] = ht(Hypergraph(members, tuple(frozenset(e) for e in edges)))
        uncovered &= ~y
    assert uncovered == 0, "every path through u is touched by some group"
    group_edges = []
    for p in bits_to_tuple(cols[u]):
        group_edges.append(frozenset(i for i in groups if coverage[i] >> p & 1))
    needed = ht(Hypergraph(tuple(groups), tuple(group_edges)))
    cover: set[int] = set()
    for i in needed:
        cover.update(chosen[i])
    return _witness(u, cover)


def mns(P: PathMatrix, u: int, budget: int | None = None) -> int | None:
    """Least k such that ``u`` is not k-separable; ``None`` if no such k
    exists (``u`` has a private path)."""
    if has_private_path(P, u):
        return None
    return len(exact_mhs(sep_hypergraph(P, u), budget))


def mns_witness(P: PathMatrix, u: int, budget: int | None = None) -> SepWitness | None:
    if has_private_path(P, u):
        return None
    return _witness(u, exact_mhs(sep_hypergraph(P, u), budget))


def mhs_to_mns_instance(H: Hypergraph) -> tuple[PathMatrix, int]:
    """Encode a hitting-set instance as a separability question.

    Node ``i`` is the ``i``-th vertex of ``H`` in sorted order and the extra
    node ``u = len(H.vertices)`` lies on every path; path ``j`` is edge ``j``.
    The matrix is built with relaxed validation, since vertices with equal
    edge memberships produce equal columns.
    """
    if not H.edges:
        raise EmptyHypergraph("a hypergraph without edges has no separability encoding")
    pos, _ = _index(H)
    nv = len(H.vertices)
    grid = [[0] * (nv + 1) for _ in H.edges]
    for j, e in enumerate(H.edges):
        for v in e:
            grid[j][pos[v]] = 1
        grid[j][nv] = 1
    P = validate(grid, allow_duplicate_columns=True, allow_zero_columns=True)
    return P, nv
