"""Binomial random model of path matrices and separability estimators.

Each node ``i`` independently lies on each of the ``m`` paths with
probability ``lambda_i``.  In this model

* the chance that no path separates ``u`` from a set ``W`` (the pair is
  *bad*) is ``(1 - lambda_u * prod_{w in W} (1 - lambda_w)) ** m``;
* :func:`prob_sep` multiplies the complementary probabilities over every
  ``W`` of 1..k nodes other than ``u``.

Note that :func:`prob_sep` treats the events for different ``W`` as
independent, which they are not (they share ``u``'s column), so it is a
model estimate rather than the exact probability; :func:`montecarlo_sep`
measures the latter.

:func:`chi` and :func:`chi2` estimate ``|SEP_k|`` of a concrete matrix by
plugging per-node frequencies (the binomial maximum-likelihood estimates)
into those products.

All products are accumulated as sums of logs; ``(1 - x) ** m`` is computed
as ``exp(m * log1p(-x))``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from ._budget import Budget
from .errors import KTooLarge, NodeInW, RetryCapExceeded
from .pathmatrix import PathMatrix, validate

MC_BLOCK = 4096


def as_lambdas(lambdas: Sequence[float] | float, n: int | None = None) -> np.ndarray:
    """Validate a per-node probability vector (a scalar is broadcast to ``n``)."""
    arr = np.asarray(lambdas, dtype=float)
    if arr.ndim == 0:
        if n is None:
            raise ValueError("scalar lambda needs n")
        arr = np.full(n, float(arr))
    if arr.ndim != 1:
        raise ValueError("lambdas must be one-dimensional")
    if n is not None and arr.size != n:
        raise ValueError(f"expected {n} lambdas, got {arr.size}")
    if not np.all((arr >= 0) & (arr <= 1)):
        raise ValueError("every lambda must lie in [0, 1]")
    return arr


@dataclass
class EstimateReport:
    mode: str
    k: int
    per_node: list[float]
    total: float
    stderr: list[float] | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"mode": self.mode, "k": self.k, "per_node": self.per_node, "total": self.total}
        if self.stderr is not None:
            out["stderr"] = self.stderr
        out.update(self.extra)
        return out


# -- sampling ----------------------------------------------------------------

def sample_unconditioned(n: int, m: int, lambdas, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Raw Bernoulli draws, shape ``(m, n)`` or ``(size, m, n)``; no validity checks."""
    lam = as_lambdas(lambdas, n)
    shape = (m, n) if size is None else (size, m, n)
    return rng.random(shape) < lam


def sample(n: int, m: int, lambdas, seed: int, retry_cap: int = 1000) -> tuple[PathMatrix, int]:
    """Draw a valid path matrix from the binomial model.

    Zero columns and columns equal to an earlier one are redrawn until the
    matrix is valid.  Returns the matrix and the number of column redraws.
    All-zero rows are allowed (they carry no information but are a normal
    outcome of the model).
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    lam = as_lambdas(lambdas, n)
    rng = np.random.default_rng(seed)
    X = rng.random((m, n)) < lam
    redraws = 0
    while True:
        bad = []
        seen: set[bytes] = set()
        for u in range(n):
            col = X[:, u]
            key = col.tobytes()
            if not col.any() or key in seen:
                bad.append(u)
            else:
                seen.add(key)
        if not bad:
            break
        redraws += len(bad)
        if redraws > retry_cap:
            raise RetryCapExceeded(f"gave up after {redraws} column redraws (cap {retry_cap})")
        for u in bad:
            X[:, u] = rng.random(m) < lam[u]
    return validate(X, allow_empty_paths=True), redraws


# -- closed forms ------------------------------------------------------------

def _log_good(lam_u: float, miss_prob: float, m: int) -> float:
    """log(1 - (1 - lam_u * miss_prob) ** m)."""
    x = lam_u * miss_prob
    if x <= 0.0:
        return -math.inf
    if x >= 1.0:
        return 0.0
    good = -math.expm1(m * math.log1p(-x))
    return math.log(good) if good > 0.0 else -math.inf


def prob_bad(u: int, W: Sequence[int], m: int, lambdas) -> float:
    """Probability that no path contains ``u`` while avoiding all of ``W``."""
    lam = as_lambdas(lambdas)
    if u in W:
        raise NodeInW(f"node {u} belongs to W")
    miss = 1.0
    for w in W:
        miss *= 1.0 - lam[w]
    x = lam[u] * miss
    if x >= 1.0:
        return 0.0
    return float(min(1.0, max(0.0, math.exp(m * math.log1p(-x)))))


def _check_level(n: int, k: int) -> None:
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > n - 1 and n > 1:
        raise KTooLarge(f"k={k} exceeds n-1={n - 1}")


def _log_prob_sep(u: int, k: int, n: int, m: int, lam: np.ndarray, bud: Budget) -> float:
    others = [w for w in range(n) if w != u]
    keep = 1.0 - lam
    total = 0.0
    lam_u = float(lam[u])
    for size in range(1, min(k, len(others)) + 1):
        for W in combinations(others, size):
            bud.spend()
            miss = 1.0
            for w in W:
                miss *= keep[w]
            lg = _log_good(lam_u, miss, m)
            if lg == -math.inf:
                return -math.inf
            total += lg
    return total


def prob_sep(u: int, k: int, n: int, m: int, lambdas, budget: int | None = None) -> float:
    """Product over all 1..k-subsets ``W`` of the other nodes of
    ``1 - prob_bad(u, W)``, evaluated in the log domain."""
    lam = as_lambdas(lambdas, n)
    _check_level(n, k)
    if not 0 <= u < n:
        raise IndexError(f"node {u} out of range")
    value = math.exp(_log_prob_sep(u, k, n, m, lam, Budget(budget)))
    return min(1.0, max(0.0, value))


def mle(P: PathMatrix) -> np.ndarray:
    """Per-node fraction of paths through the node."""
    return P.bits.sum(axis=0) / P.m


def _clean(values: Sequence[float]) -> list[float]:
    return [float(v) for v in values]


def chi(P_hat: PathMatrix, k: int, budget: int | None = None) -> EstimateReport:
    """Estimate ``|SEP_k|`` by summing :func:`prob_sep` under fitted lambdas.

    Costs ``n * C(n-1, <=k)`` terms, charged against ``budget``.
    """
    n, m = P_hat.n, P_hat.m
    _check_level(n, k)
    lam = mle(P_hat)
    bud = Budget(budget)
    per = [min(1.0, max(0.0, math.exp(_log_prob_sep(u, k, n, m, lam, bud)))) for u in range(n)]
    return EstimateReport("exact", k, _clean(per), float(math.fsum(per)), extra={"lambda_hat": _clean(lam)})


def _log_comb(a: int, b: int) -> float:
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


def chi2_node(lam_u: float, lam_max: float, n: int, m: int, k: int) -> float:
    """``prod_{j=1..k} (1 - (1 - lam_u (1 - lam_max)**j)**m) ** C(n-1, j)``."""
    total = 0.0
    for j in range(1, min(k, n - 1) + 1):
        lg = _log_good(lam_u, (1.0 - lam_max) ** j, m)
        if lg == -math.inf:
            return 0.0
        if lg == 0.0:
            continue
        total += math.exp(_log_comb(n - 1, j)) * lg
    return min(1.0, max(0.0, math.exp(total)))


def chi2(P_hat: PathMatrix, k: int) -> EstimateReport:
    """Cheaper estimate using a single shared ``lambda_max`` for the avoided nodes."""
    n, m = P_hat.n, P_hat.m
    _check_level(n, k)
    lam = mle(P_hat)
    lam_max = float(lam.max())
    per = [chi2_node(float(lam[u]), lam_max, n, m, k) for u in range(n)]
    return EstimateReport(
        "chi2", k, _clean(per), float(math.fsum(per)),
        extra={"lambda_hat": _clean(lam), "lambda_max": lam_max},
    )


# -- Monte Carlo -------------------------------------------------------------

def separable_batch(X: np.ndarray, k: int) -> np.ndarray:
    """k-separability of every node in a batch of raw matrices.

    ``X`` has shape ``(B, m, n)``; returns a ``(B, n)`` boolean array.  The
    empty set counts as a candidate cover, so a node on no path is never
    separable.
    """
    B, m, n = X.shape
    out = X.any(axis=1)  # W = {} is covered iff P(u) is empty
    for u in range(n):
        xu = X[:, :, u]
        others = [w for w in range(n) if w != u]
        ok = out[:, u].copy()
        for size in range(1, min(k, len(others)) + 1):
            for W in combinations(others, size):
                hit = X[:, :, list(W)].any(axis=2)
                ok &= (xu & ~hit).any(axis=1)
        out[:, u] = ok
    return out


def montecarlo_sep(
    n: int,
    m: int,
    lambdas,
    k: int,
    trials: int,
    seed: int,
    threads: int = 1,
    budget: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Empirical frequency (and its standard error) of each node being
    k-separable in unconditioned draws from the model.

    Trials are drawn in fixed blocks of ``MC_BLOCK``; block ``b`` uses the
    generator seeded with ``(seed, b)``, so results do not depend on
    ``threads``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    lam = as_lambdas(lambdas, n)
    _check_level(n, k)
    per_trial = n * sum(math.comb(n - 1, j) for j in range(1, min(k, n - 1) + 1))
    Budget(budget).spend(per_trial * trials)
    blocks = [(b, min(MC_BLOCK, trials - b * MC_BLOCK)) for b in range(-(-trials // MC_BLOCK))]

    def run(block):
        b, size = block
        rng = np.random.default_rng([seed, b])
        X = sample_unconditioned(n, m, lam, rng, size=size)
        return separable_batch(X, k).sum(axis=0)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            counts = list(pool.map(run, blocks))
    else:
        counts = [run(b) for b in blocks]
    freq = np.sum(counts, axis=0) / trials
    stderr = np.sqrt(freq * (1 - freq) / trials)
    return freq, stderr


def montecarlo_estimate(P_hat: PathMatrix, k: int, trials: int, seed: int, threads: int = 1) -> EstimateReport:
    lam = mle(P_hat)
    freq, err = montecarlo_sep(P_hat.n, P_hat.m, lam, k, trials, seed, threads)
    return EstimateReport(
        "montecarlo", k, _clean(freq), float(math.fsum(freq)), stderr=_clean(err),
        extra={"lambda_hat": _clean(lam), "trials": trials, "seed": seed},
    )
