import itertools
import random

import pytest
from hypothesis import given, settings

from ldstab.invariant import CapExceededError
from ldstab.model import Lds, trajectory
from ldstab.oracle import (
    MonteCarloEstimate,
    enumerate_pattern_counts,
    monte_carlo_ratio,
    simulate_random,
    verify_counts,
)
from ldstab.reach import count_matrix, count_matrix_power
from ldstab.sets import StateSet
from ldstab.stability import ratio

from conftest import lds_strategy


@pytest.mark.parametrize("name", ["e1", "e2", "e3"])
def test_fixtures_agree(name, request):
    lds = request.getfixturevalue(name).lds
    assert enumerate_pattern_counts(lds, 1) == count_matrix(lds)
    for k in range(1, 7):
        report = verify_counts(lds, k)
        assert report.equal and report.first_mismatch is None


@settings(max_examples=60)
@given(lds_strategy(max_n=5, max_m=3))
def test_enumeration_matches_naive_replay(lds):
    k = 3
    naive = [[0] * lds.n for _ in range(lds.n)]
    for j in range(1, lds.n + 1):
        for word in itertools.product(range(1, lds.m + 1), repeat=k):
            naive[trajectory(lds, j, word, k).final - 1][j - 1] += 1
    counts = enumerate_pattern_counts(lds, k)
    assert counts.to_rows() == naive
    assert counts.column_sums() == (lds.m ** k,) * lds.n


def test_deterministic_system_columns():
    lds = Lds.from_lists([[3, 1, 2, 4]])
    counts = enumerate_pattern_counts(lds, 5)
    for j in range(1, 5):
        col = [counts.entry(i, j) for i in range(1, 5)]
        assert sorted(col) == [0, 0, 0, 1]


def test_cap(e1):
    with pytest.raises(CapExceededError):
        enumerate_pattern_counts(e1.lds, 40)
    with pytest.raises(CapExceededError):
        verify_counts(e1.lds, 4, cap=15)
    assert verify_counts(e1.lds, 4, cap=16).equal


def test_workers_equal_sequential(e3):
    assert enumerate_pattern_counts(e3.lds, 6, workers=3) == enumerate_pattern_counts(e3.lds, 6)


def test_report_text(e1):
    text = verify_counts(e1.lds, 2).render_text()
    assert text == "k = 2: enumeration and Q^k agree"


def test_simulate_basics(e1):
    assert simulate_random(e1.lds, 4).states == (4,)
    a = simulate_random(e1.lds, 1, horizon=30, seed=3)
    assert a == simulate_random(e1.lds, 1, horizon=30, seed=3)
    assert trajectory(e1.lds, 1, a.signal, 30).states == a.states
    det = Lds.from_lists([[2, 3, 1]])
    assert simulate_random(det, 1, horizon=5, seed=1).states == simulate_random(det, 1, horizon=5, seed=99).states


def test_simulate_golden(e1):
    assert simulate_random(e1.lds, 1, horizon=10, seed=7).states == (1, 2, 3, 4, 3, 5, 6, 7, 7, 7, 6)


def test_simulate_respects_pdv(e1):
    traj = simulate_random(e1.lds, 1, pdv=["1/1000", "999/1000"], horizon=200, seed=2)
    assert traj.signal.count(2) > 190


def test_simulate_rejects_bad_input(e1):
    with pytest.raises(ValueError):
        simulate_random(e1.lds, 1, pdv=["1/2", "1/4"], horizon=3)
    with pytest.raises(ValueError):
        simulate_random(e1.lds, 1, horizon=-1)
    with pytest.raises(ValueError):
        simulate_random(e1.lds, 9, horizon=1)


def test_monte_carlo_exact_cases(e2, e1):
    est = monte_carlo_ratio(e2.lds, 1, e2.target, 20, 2000, seed=1)
    assert est.estimate == 1 and est.stderr == 0
    # 6, 7 and 8 never lead back to 1
    assert monte_carlo_ratio(e1.lds, 6, StateSet(8, {1}), 5, 500).estimate == 0


@pytest.mark.parametrize("seed", range(5))
def test_monte_carlo_within_three_stderr(e3, seed):
    exact = float(ratio(e3.lds, 1, e3.target, 20))
    est = monte_carlo_ratio(e3.lds, 1, e3.target, 20, 10_000, seed=seed)
    assert abs(est.estimate - exact) <= 3 * est.stderr


def test_monte_carlo_validation(e3):
    with pytest.raises(ValueError):
        monte_carlo_ratio(e3.lds, 1, e3.target, 3, 0)
    with pytest.raises(ValueError):
        monte_carlo_ratio(e3.lds, 0, e3.target, 3, 10)


def test_estimate_arithmetic():
    est = MonteCarloEstimate(25, 100)
    assert est.estimate == 0.25
    assert abs(est.stderr - (0.25 * 0.75 / 100) ** 0.5) < 1e-15
