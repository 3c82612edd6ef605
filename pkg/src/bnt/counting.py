"""Closed-form upper bounds on identifiability from counting arguments.

``mu_lt_1`` and ``id1_upper`` are rigorous pigeonhole bounds.  ``mu_lt_k``,
``m_threshold`` and ``idk_upper`` rest on an extremal bound for regular
k-union-free families whose constants (``C``, ``m0``) are not known
explicitly; with the default ``C=1`` they are heuristics, and every result
dict says so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ._budget import Budget
from .errors import MBelowThreshold
from .pathmatrix import PathMatrix
from .transversal import Hypergraph


@dataclass(frozen=True)
class BoundParams:
    C: float = 1.0
    epsilon: float = 0.01
    m0: int = 1

    def __post_init__(self):
        if not self.C > 0:
            raise ValueError("C must be positive")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.m0 < 1:
            raise ValueError("m0 must be >= 1")

    @property
    def heuristic(self) -> bool:
        # the true constant is unknown, so any choice is unproven
        return True


def _check_nm(n: int, m: int) -> None:
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")


def mu_lt_1(n: int, m: int) -> bool:
    """True iff ``m < log2(n + 1)``, which forces two equal columns."""
    _check_nm(n, m)
    # m < log2(n+1)  <=>  2**m < n + 1
    return 2**m < n + 1


def id1_upper(n: int, m: int) -> int:
    """``min(n, 2**m - 1)``."""
    _check_nm(n, m)
    if m >= n.bit_length():
        return n
    return min(n, 2**m - 1)


def union_free_sum(m: int, k: int) -> int:
    """``sum_{r=1..m} m ** ceil(r / (k - 1))`` as an exact integer."""
    return sum(m ** -(-r // (k - 1)) for r in range(1, m + 1))


def mu_lt_k(n: int, m: int, k: int, params: BoundParams = BoundParams()) -> bool:
    """True iff ``n > C * sum_{r=1..m} m ** ceil(r / (k - 1))``.

    The sum is evaluated as an exact integer and compared against ``n``
    with ``C`` as an exact rational, so no overflow or rounding occurs.
    """
    _check_nm(n, m)
    if k < 2:
        raise ValueError("k must be >= 2 (use mu_lt_1 for k = 1)")
    if m < params.m0:
        raise MBelowThreshold(f"m={m} is below the threshold m0={params.m0}")
    return n > Fraction(params.C) * union_free_sum(m, k)


def m_threshold(n: int, k: int, params: BoundParams = BoundParams()) -> float:
    """Right-hand side of the closed-form path-count condition for ``mu < k``:
    ``((k-1)/k * (log2 n - log2 C)) ** (1/(1+eps)) - (k-1)``.

    Returns ``-inf`` when the base is not positive (no ``m`` qualifies).
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    base = (k - 1) / k * (math.log2(n) - math.log2(params.C))
    if base <= 0:
        return -math.inf
    return base ** (1.0 / (1.0 + params.epsilon)) - (k - 1)


def _capped_power_of_two(exponent: Fraction, n: int) -> int:
    # min(n, floor(2**exponent)) without materialising huge powers
    if exponent >= n.bit_length():
        return n
    return min(n, math.floor(2.0 ** float(exponent)))


def idk_exponent(m: int, k: int) -> Fraction:
    """``k (m + 2k - 2)**2 / (k - 1)``, the exponent in the stated bound."""
    return Fraction(k * (m + 2 * k - 2) ** 2, k - 1)


def idk_exponent_proof(m: int, k: int) -> Fraction:
    """``k (m + k - 1)**2 / (k - 1)``, the exponent used in the bound's derivation."""
    return Fraction(k * (m + k - 1) ** 2, k - 1)


def idk_upper(n: int, m: int, k: int) -> int:
    """``min(n, 2 ** (k (m + 2k - 2)**2 / (k - 1)))`` with an exact exponent."""
    _check_nm(n, m)
    if not 2 <= k <= n:
        raise ValueError("idk_upper needs 2 <= k <= n")
    return _capped_power_of_two(idk_exponent(m, k), n)


def idk_upper_proof_variant(n: int, m: int, k: int) -> int:
    """Same as :func:`idk_upper` with the ``(m + k - 1)**2`` exponent."""
    _check_nm(n, m)
    if not 2 <= k <= n:
        raise ValueError("idk_upper needs 2 <= k <= n")
    return _capped_power_of_two(idk_exponent_proof(m, k), n)


def all_bounds(n: int, m: int, k: int, params: BoundParams = BoundParams()) -> dict:
    """Every counting bound for ``(n, m, k)`` with applicability flags."""
    out: dict = {
        "n": n,
        "m": m,
        "k": k,
        "params": {"C": params.C, "epsilon": params.epsilon, "m0": params.m0},
        "mu_lt_1": mu_lt_1(n, m),
        "id1_upper": id1_upper(n, m),
    }
    if k >= 2:
        if m >= params.m0:
            out["mu_lt_k"] = {"value": mu_lt_k(n, m, k, params), "applicable": True, "heuristic": params.heuristic}
        else:
            out["mu_lt_k"] = {"value": None, "applicable": False, "heuristic": params.heuristic}
        thr = m_threshold(n, k, params)
        out["m_threshold"] = {
            "value": None if math.isinf(thr) else thr,
            "condition_met": m < thr,
            "heuristic": params.heuristic,
        }
    else:
        out["mu_lt_k"] = {"value": None, "applicable": False, "heuristic": params.heuristic}
        out["m_threshold"] = {"value": None, "condition_met": False, "heuristic": params.heuristic}
    if 2 <= k <= n:
        out["idk_upper"] = {
            "value": idk_upper(n, m, k),
            "value_proof_exponent": idk_upper_proof_variant(n, m, k),
            "applicable": True,
            "heuristic": True,
        }
    else:
        out["idk_upper"] = {"value": None, "value_proof_exponent": None, "applicable": False, "heuristic": True}
    return out


# -- union-free families -----------------------------------------------------

def path_family(P: PathMatrix) -> Hypergraph:
    """The family of column supports: edge ``i`` is the set of paths through node ``i``."""
    return Hypergraph(tuple(range(P.m)), tuple(frozenset(P.paths(u)) for u in range(P.n)))


def regular_parts(H: Hypergraph) -> dict[int, list[int]]:
    """Split the edges of ``H`` by size; returns ``{size: [edge indices]}``."""
    parts: dict[int, list[int]] = {}
    for i, e in enumerate(H.edges):
        parts.setdefault(len(e), []).append(i)
    assert sum(len(v) for v in parts.values()) == len(H.edges)
    return dict(sorted(parts.items()))


def is_k_union_free(H: Hypergraph, k: int, budget: int | None = None) -> bool:
    """True iff no two distinct subfamilies of 1..k edges have the same union.

    Edges are compared by position, so a repeated edge already breaks
    union-freeness at ``k = 1``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    regular_parts(H)
    bud = Budget(budget)
    seen: set[frozenset] = set()
    idx = range(len(H.edges))
    for size in range(1, min(k, len(H.edges)) + 1):
        for combo in combinations(idx, size):
            bud.spend()
            union = frozenset().union(*(H.edges[i] for i in combo))
            if union in seen:
                return False
            seen.add(union)
    return True
