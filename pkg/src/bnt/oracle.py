"""Exact, enumeration-based decisions for identifiability, separability and
distinguishability of nodes, plus failure localization.

Everything here is exponential in ``k`` by design: these routines are the
ground truth the faster heuristics and bounds are checked against.  Each
call takes an optional ``budget`` (number of candidate node sets examined);
running out raises :class:`~bnt.errors.BudgetExceeded` rather than returning
an approximate answer.

Candidate sets are enumerated by size (0, 1, ..., k) and lexicographically
within a size, so witnesses are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from ._budget import Budget
from .errors import KTooLarge
from .pathmatrix import NodeSet, PathMatrix, bits_to_tuple


def _check_k(P: PathMatrix, k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > P.n:
        raise KTooLarge(f"k={k} exceeds the number of nodes n={P.n}")


def _check_node(P: PathMatrix, u: int) -> None:
    if not 0 <= u < P.n:
        raise IndexError(f"node {u} out of range for n={P.n}")


def _sets_upto(pool: Sequence[int], k: int, budget: Budget, start: int = 0) -> Iterator[tuple[int, ...]]:
    for size in range(start, min(k, len(pool)) + 1):
        for combo in combinations(pool, size):
            budget.spend()
            yield combo


def _union(cols: Sequence[int], nodes: Sequence[int]) -> int:
    mask = 0
    for v in nodes:
        mask |= cols[v]
    return mask


# -- per-node witnesses ------------------------------------------------------

def identifiability_witness(P: PathMatrix, u: int, k: int, budget: int | None = None):
    """Return ``(U, W)`` with ``u in U``, ``u not in W``, ``|U|,|W| <= k`` and
    equal path sets, or ``None`` when ``u`` is k-identifiable."""
    _check_k(P, k)
    _check_node(P, u)
    bud = Budget(budget)
    cols = P.column_masks
    others = [v for v in range(P.n) if v != u]
    without_u: dict[int, tuple[int, ...]] = {}
    for W in _sets_upto(others, k, bud):
        without_u.setdefault(_union(cols, W), W)
    for rest in _sets_upto(others, k - 1, bud):
        mask = cols[u] | _union(cols, rest)
        if mask in without_u:
            U = tuple(sorted((u,) + rest))
            return U, without_u[mask]
    return None


def is_node_identifiable(P: PathMatrix, u: int, k: int, budget: int | None = None) -> bool:
    """True iff no two sets of size <= k that disagree on ``u`` cover the same paths.

    Searches only pairs with ``u`` in the first set and not in the second;
    any pair disagreeing on ``u`` has this shape up to swapping.
    """
    return identifiability_witness(P, u, k, budget) is None


def is_node_identifiable_literal(P: PathMatrix, u: int, k: int, budget: int | None = None) -> bool:
    """Same decision as :func:`is_node_identifiable`, by the raw quantifier
    over all ordered pairs of sets.  Quadratic in the number of sets; used to
    cross-check the restricted search."""
    _check_k(P, k)
    _check_node(P, u)
    bud = Budget(budget)
    cols = P.column_masks
    sets = list(_sets_upto(range(P.n), k, bud))
    masks = [_union(cols, S) for S in sets]
    for i, U in enumerate(sets):
        for j, W in enumerate(sets):
            bud.spend()
            if (u in U) != (u in W) and masks[i] == masks[j]:
                return False
    return True


def is_k_identifiable(P: PathMatrix, k: int, budget: int | None = None) -> bool:
    """Whole-matrix identifiability: all distinct node sets of size <= k
    have distinct path sets."""
    _check_k(P, k)
    bud = Budget(budget)
    cols = P.column_masks
    seen: set[int] = set()
    for S in _sets_upto(range(P.n), k, bud):
        mask = _union(cols, S)
        if mask in seen:
            return False
        seen.add(mask)
    return True


def separability_witness(P: PathMatrix, u: int, k: int, budget: int | None = None) -> NodeSet | None:
    """Smallest-first set ``U`` (``u not in U``, ``|U| <= k``) covering every
    path through ``u``, or ``None`` when ``u`` is k-separable."""
    _check_k(P, k)
    _check_node(P, u)
    bud = Budget(budget)
    cols = P.column_masks
    target = cols[u]
    # only nodes sharing a path with u can help cover P(u)
    pool = [v for v in range(P.n) if v != u and cols[v] & target]
    for U in _sets_upto(pool, k, bud):
        if target & ~_union(cols, U) == 0:
            return U
    return None


def is_node_separable(P: PathMatrix, u: int, k: int, budget: int | None = None) -> bool:
    return separability_witness(P, u, k, budget) is None


def distinguishability_witness(P: PathMatrix, u: int, k: int, budget: int | None = None) -> NodeSet | None:
    """A set ``U`` with ``u not in U``, ``|U| <= k`` and exactly ``u``'s paths."""
    _check_k(P, k)
    _check_node(P, u)
    bud = Budget(budget)
    cols = P.column_masks
    target = cols[u]
    # a node touching a path outside P(u) can never be part of such a U
    pool = [v for v in range(P.n) if v != u and cols[v] & ~target == 0]
    for U in _sets_upto(pool, k, bud):
        if _union(cols, U) == target:
            return U
    return None


def is_node_distinguishable(P: PathMatrix, u: int, k: int, budget: int | None = None) -> bool:
    return distinguishability_witness(P, u, k, budget) is None


# -- whole-matrix reports ----------------------------------------------------

@dataclass(frozen=True)
class IdentifiabilityReport:
    k: int
    sep_nodes: NodeSet
    id_nodes: NodeSet
    dis_nodes: NodeSet

    def to_dict(self) -> dict:
        return {"k": self.k, "sep": list(self.sep_nodes), "id": list(self.id_nodes), "dis": list(self.dis_nodes)}


def report(P: PathMatrix, k: int, budget: int | None = None) -> IdentifiabilityReport:
    """SEP_k, ID_k and DIS_k of ``P`` from a single pass over node sets.

    All sets of size <= k are grouped by the path set they cover.  For each
    group we keep the AND and OR of its members (as node bitmasks):

    * ``u`` is not k-ID iff some group holds a set with ``u`` and one without,
      i.e. ``u`` is in the group's OR but not its AND;
    * ``u`` is not k-DIS iff the group of ``P(u)`` has a member without ``u``;
    * ``u`` is not k-SEP iff some group covering ``P(u)`` has a member
      without ``u``.
    """
    _check_k(P, k)
    bud = Budget(budget)
    cols = P.column_masks
    n = P.n
    full = (1 << n) - 1
    groups: dict[int, list[int]] = {}
    for S in _sets_upto(range(n), k, bud):
        mask = _union(cols, S)
        nodes = 0
        for v in S:
            nodes |= 1 << v
        g = groups.get(mask)
        if g is None:
            groups[mask] = [nodes, nodes]
        else:
            g[0] &= nodes
            g[1] |= nodes

    not_id = 0
    for and_, or_ in groups.values():
        not_id |= or_ & ~and_
    id_nodes = bits_to_tuple(full & ~not_id)

    dis, sep = [], []
    for u in range(n):
        target = cols[u]
        bit = 1 << u
        and_, _ = groups[target]
        if and_ & bit:
            dis.append(u)
        # a group's AND lacks u iff some member lacks u
        separable = True
        for mask, (and_, _) in groups.items():
            if target & ~mask == 0 and not and_ & bit:
                separable = False
                break
        if separable:
            sep.append(u)
    return IdentifiabilityReport(k, tuple(sep), id_nodes, tuple(dis))


@dataclass(frozen=True)
class Thresholds:
    """Largest k at which every node is k-ID (mu), k-SEP (sigma), k-DIS (delta)."""

    mu: int
    sigma: int
    delta: int
    k_max: int
    capped: bool

    def to_dict(self) -> dict:
        return {"mu": self.mu, "sigma": self.sigma, "delta": self.delta, "capped": self.capped}


def mu_sigma_delta(P: PathMatrix, k_max: int | None = None, budget: int | None = None) -> Thresholds:
    """Compute mu, sigma and delta up to ``k_max`` (default: n).

    ``capped`` is set when a value reached ``k_max < n``, i.e. the true
    value might be larger.  Raises ``RuntimeError`` if the ordering
    sigma <= mu <= delta is ever violated.
    """
    n = P.n
    if k_max is None:
        k_max = n
    _check_k(P, k_max)
    mu = sigma = delta = None
    for k in range(1, k_max + 1):
        rep = report(P, k, budget)
        if mu is None and len(rep.id_nodes) < n:
            mu = k - 1
        if sigma is None and len(rep.sep_nodes) < n:
            sigma = k - 1
        if delta is None and len(rep.dis_nodes) < n:
            delta = k - 1
        if mu is not None and sigma is not None and delta is not None:
            break
    mu = k_max if mu is None else mu
    sigma = k_max if sigma is None else sigma
    delta = k_max if delta is None else delta
    if not sigma <= mu <= delta:
        raise RuntimeError(f"threshold ordering violated: sigma={sigma}, mu={mu}, delta={delta}")
    capped = k_max < n and max(mu, sigma, delta) == k_max
    return Thresholds(mu, sigma, delta, k_max, capped)


def localize(P: PathMatrix, measurement: Sequence[bool], k: int, budget: int | None = None) -> list[NodeSet]:
    """All node sets of size <= k whose paths are exactly the failing ones.

    Sorted by size, then lexicographically.  When ``mu(P) >= k`` the list
    has at most one entry.
    """
    _check_k(P, k)
    if len(measurement) != P.m:
        raise ValueError(f"measurement has {len(measurement)} outcomes, matrix has {P.m} paths")
    fail = 0
    for p, bad in enumerate(measurement):
        if bad:
            fail |= 1 << p
    cols = P.column_masks
    bud = Budget(budget)
    # a failing node can only sit on failing paths
    pool = [v for v in range(P.n) if cols[v] & ~fail == 0]
    return [W for W in _sets_upto(pool, k, bud) if _union(cols, W) == fail]
