from itertools import product

import numpy as np
import pytest

import brute
from bnt import oracle
from bnt.errors import BudgetExceeded, KTooLarge
from bnt.pathmatrix import indicator, validate


# toy network, 0-based: 1-based node 5 -> 4, node 6 -> 5, nodes {2, 6} -> (1, 5)

def test_node5_not_2_identifiable(toy):
    assert not oracle.is_node_identifiable(toy, 4, 2)
    U, W = oracle.identifiability_witness(toy, 4, 2)
    assert 4 in U and 4 not in W and toy.mask_of(U) == toy.mask_of(W)


def test_all_nodes_1_identifiable(toy):
    assert all(oracle.is_node_identifiable(toy, u, 1) for u in range(7))


def test_private_path_identifiable_at_every_k():
    P = validate([[1, 0, 0], [1, 1, 0], [0, 1, 1]])
    assert oracle.is_node_identifiable(P, 0, 3)
    assert oracle.is_node_separable(P, 0, 3)


def test_node5_separability(toy):
    assert oracle.is_node_separable(toy, 4, 1)
    assert not oracle.is_node_separable(toy, 4, 2)
    W = oracle.separability_witness(toy, 4, 2)
    assert len(W) == 2 and set(toy.paths(4)) <= set(toy.paths(W[0]) + toy.paths(W[1]))


def test_node5_distinguishability(toy):
    assert not oracle.is_node_distinguishable(toy, 4, 2)
    assert oracle.distinguishability_witness(toy, 4, 2) == (1, 5)
    assert oracle.is_node_distinguishable(toy, 4, 1)


def test_single_node_matrix():
    P = validate([[1]])
    assert oracle.is_node_distinguishable(P, 0, 1)
    assert oracle.is_node_identifiable(P, 0, 1)


def test_report_toy_level1(toy):
    rep = oracle.report(toy, 1)
    assert 5 not in rep.sep_nodes
    assert rep.id_nodes == tuple(range(7)) == rep.dis_nodes
    assert set(rep.sep_nodes) < set(rep.id_nodes)


def test_thresholds_toy(toy):
    th = oracle.mu_sigma_delta(toy)
    assert (th.mu, th.sigma, th.delta) == (1, 0, 1)
    assert not th.capped


def test_thresholds_cap():
    P = validate(np.eye(4, dtype=int))
    th = oracle.mu_sigma_delta(P, k_max=2)
    assert (th.mu, th.sigma, th.delta, th.capped) == (2, 2, 2, True)
    assert oracle.mu_sigma_delta(P).mu == 4


def test_private_paths_everywhere():
    P = validate(np.eye(5, dtype=int))
    rep = oracle.report(P, 5)
    assert rep.sep_nodes == rep.id_nodes == rep.dis_nodes == tuple(range(5))


def test_localize_toy(toy):
    assert oracle.localize(toy, (1, 0, 1, 1), 1) == [(4,)]
    # brute force over all sets of size <= 2 finds four consistent sets
    cols = brute.columns(toy)
    expected = brute.localize(cols, {0, 2, 3}, 2)
    assert oracle.localize(toy, (1, 0, 1, 1), 2) == expected == [(4,), (1, 4), (1, 5), (4, 5)]


def test_localize_all_zero(toy):
    assert oracle.localize(toy, (0, 0, 0, 0), 3) == [()]


def test_k_range(toy):
    with pytest.raises(KTooLarge):
        oracle.report(toy, 8)
    with pytest.raises(ValueError):
        oracle.is_node_separable(toy, 0, 0)


def test_budget(toy):
    with pytest.raises(BudgetExceeded):
        oracle.report(toy, 3, budget=10)


def test_budget_env(toy, monkeypatch):
    monkeypatch.setenv("BNT_BUDGET", "5")
    with pytest.raises(BudgetExceeded):
        oracle.is_k_identifiable(toy, 2)


def _all_small():
    for m in range(1, 4):
        for n in range(1, 5):
            yield from brute.valid_matrices(m, n)


def test_pointwise_agrees_with_literal_definitions():
    for arr in _all_small():
        P = validate(arr)
        cols = brute.columns(arr)
        for k in range(1, P.n + 1):
            rep = oracle.report(P, k)
            for u in range(P.n):
                s, i, d = brute.is_sep(cols, u, k), brute.is_id(cols, u, k), brute.is_dis(cols, u, k)
                assert oracle.is_node_separable(P, u, k) == s
                assert oracle.is_node_identifiable(P, u, k) == i
                assert oracle.is_node_identifiable_literal(P, u, k) == i
                assert oracle.is_node_distinguishable(P, u, k) == d
                assert (u in rep.sep_nodes, u in rep.id_nodes, u in rep.dis_nodes) == (s, i, d)


def test_whole_matrix_identifiability_iff_every_node(rng):
    mats = list(_all_small())
    for _ in range(100):
        m, n = brute.random_shape(rng, (2, 6), 5)
        mats.append(brute.random_valid(rng, m, n))
    for arr in mats:
        P = validate(arr)
        for k in range(1, P.n + 1):
            assert oracle.is_k_identifiable(P, k) == all(oracle.is_node_identifiable(P, u, k) for u in range(P.n))


def test_thresholds_match_brute(rng):
    for _ in range(60):
        m, n = brute.random_shape(rng, (2, 6), 5)
        arr = brute.random_valid(rng, m, n)
        cols = brute.columns(arr)
        th = oracle.mu_sigma_delta(validate(arr))
        assert th.mu == brute.threshold(cols, brute.is_id)
        assert th.sigma == brute.threshold(cols, brute.is_sep)
        assert th.delta == brute.threshold(cols, brute.is_dis)


def test_localize_matches_brute(rng):
    for _ in range(60):
        m, n = brute.random_shape(rng, (2, 6), 5)
        arr = brute.random_valid(rng, m, n)
        P = validate(arr)
        cols = brute.columns(arr)
        meas = tuple(bool(b) for b in rng.integers(0, 2, m))
        k = int(rng.integers(1, n + 1))
        fail = {p for p in range(m) if meas[p]}
        assert oracle.localize(P, meas, k) == brute.localize(cols, fail, k)


def test_failure_injection_roundtrip(rng):
    checked = 0
    while checked < 40:
        arr = brute.random_valid(rng, int(rng.integers(4, 8)), int(rng.integers(2, 6)))
        P = validate(arr)
        mu = oracle.mu_sigma_delta(P).mu
        if mu == 0:
            continue
        checked += 1
        for F in brute.subsets(range(P.n), mu):
            assert oracle.localize(P, indicator(P, F), mu) == [F]
