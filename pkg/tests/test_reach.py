import itertools
import random
from collections import deque
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings

from ldstab.model import Lds, trajectory
from ldstab.oracle import enumerate_pattern_counts
from ldstab.reach import (
    count_matrix,
    count_matrix_power,
    find_path,
    is_reachable,
    path_states,
    reachability_matrix_bool,
    reachability_matrix_weighted,
    self_reachable_set,
    stg,
    stg_dot,
)
from ldstab.sets import StateSet

from conftest import lds_strategy, random_lds


def bfs_reach(lds, source):
    """States reachable from ``source`` in one or more steps."""
    seen = set()
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for mp in lds.maps:
            y = mp.cols[x - 1]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def replay_counts(lds, k):
    n = lds.n
    counts = [[0] * n for _ in range(n)]
    for j in range(1, n + 1):
        for word in itertools.product(range(1, lds.m + 1), repeat=k):
            counts[trajectory(lds, j, word, k).final - 1][j - 1] += 1
    return counts


def test_count_matrix_e1(e1):
    q = count_matrix(e1.lds)
    assert q.entry(2, 1) == 1 and q.entry(5, 1) == 1 and q.entry(3, 4) == 2
    assert q.column_sums() == (2,) * 8


def test_count_matrix_single_subnetwork():
    lds = Lds.from_lists([[2, 3, 1]])
    assert count_matrix(lds) == lds.maps[0].to_dense()


def test_count_matrix_power_e1(e1):
    assert count_matrix_power(e1.lds, 2).entry(3, 1) == 1
    assert count_matrix_power(e1.lds, 1) == count_matrix(e1.lds)
    with pytest.raises(ValueError):
        count_matrix_power(e1.lds, 0)


@settings(max_examples=50)
@given(lds_strategy(max_n=6, max_m=3))
def test_count_power_matches_replay(lds):
    for k in range(1, 5):
        power = count_matrix_power(lds, k)
        assert power.to_rows() == replay_counts(lds, k)
        assert power.column_sums() == (lds.m ** k,) * lds.n


def test_count_power_equals_repeated_product(e3):
    q = count_matrix(e3.lds)
    acc = q
    for k in range(2, 12):
        acc = q @ acc
        assert count_matrix_power(e3.lds, k) == acc


def test_count_power_beyond_64_bits():
    # 3**45 overflows int64, so this exercises the unbounded fallback
    lds = Lds.from_lists([[1, 1], [2, 2], [1, 2]])
    power = count_matrix_power(lds, 45)
    assert power.column_sums() == (3 ** 45, 3 ** 45)
    assert power.entry(1, 1) == (3 ** 45 + 1) // 2


def test_reachability_e1(e1):
    r = reachability_matrix_bool(e1.lds)
    assert r.get(5, 3) and r.get(5, 4)
    assert not r.get(1, 1)
    assert not any(r.to_rows()[0])


def test_reachability_identity():
    r = reachability_matrix_bool(Lds.from_lists([[1, 2, 3, 4]]))
    assert r.to_rows() == [[int(i == j) for j in range(4)] for i in range(4)]


@settings(max_examples=80)
@given(lds_strategy(max_n=10, max_m=3))
def test_reachability_matches_bfs(lds):
    r = reachability_matrix_bool(lds)
    for j in range(1, lds.n + 1):
        assert set(r.reachable_from(j)) == bfs_reach(lds, j)


@settings(max_examples=80)
@given(lds_strategy(max_n=10, max_m=3))
def test_self_reachable_iff_on_cycle(lds):
    g = nx.DiGraph()
    g.add_nodes_from(range(1, lds.n + 1))
    g.add_edges_from((x, y) for (x, y) in stg(lds).edges)
    on_cycle = set()
    for comp in nx.strongly_connected_components(g):
        if len(comp) > 1 or any(g.has_edge(x, x) for x in comp):
            on_cycle |= comp
    assert set(self_reachable_set(lds)) == on_cycle


def test_self_reachable_examples(e1, e2, e3):
    assert self_reachable_set(e1.lds) == StateSet(8, {3, 4, 6, 7})
    assert self_reachable_set(e2.lds) == StateSet(8, {6, 7})
    assert self_reachable_set(e3.lds) == StateSet(8, {2, 3, 6, 7})


R_E1_TWO_DECIMALS = [
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0.50, 0, 0, 0, 0, 0, 0, 0],
    [0.47, 0.94, 0.94, 1.88, 0, 0, 0, 0],
    [0.22, 0.47, 0.94, 0.94, 0, 0, 0, 0],
    [0.97, 0.97, 0.94, 0.94, 0, 0, 0, 0],
    [2.06, 1.98, 1.84, 1.51, 2.78, 2.45, 2.78, 2.78],
    [3.30, 3.18, 2.88, 2.30, 4.72, 5.55, 5.22, 5.22],
    [0.48, 0.47, 0.47, 0.44, 0.50, 0, 0, 0],
]


def test_weighted_reachability_e1(e1):
    rows = reachability_matrix_weighted(e1.lds)
    assert rows[1][0] == Fraction(1, 2)
    for got, rounded in zip(rows, R_E1_TWO_DECIMALS):
        for v, p in zip(got, rounded):
            assert abs(float(v) - p) <= 0.005


@settings(max_examples=40)
@given(lds_strategy(max_n=7, max_m=3))
def test_weighted_pattern_matches_bool_and_is_power_n_sufficient(lds):
    r = reachability_matrix_bool(lds)
    short = reachability_matrix_weighted(lds)
    long = reachability_matrix_weighted(lds, horizon=2 * lds.n)
    for i in range(lds.n):
        for j in range(lds.n):
            assert (short[i][j] > 0) == (long[i][j] > 0) == r.get(i + 1, j + 1)


def test_weighted_zero_rows_without_incoming_paths(e1):
    assert all(v == 0 for v in reachability_matrix_weighted(e1.lds)[0])


def test_is_reachable(e1):
    assert is_reachable(e1.lds, 1, 3, k=2)
    assert not is_reachable(e1.lds, 1, 3, k=1)
    assert not is_reachable(e1.lds, 6, 5)
    assert is_reachable(Lds.from_lists([[1, 2]]), 2, 2, k=5)
    with pytest.raises(ValueError):
        is_reachable(e1.lds, 0, 3)


@settings(max_examples=40)
@given(lds_strategy(max_n=6, max_m=3))
def test_k_step_reachability_matches_power(lds):
    for k in (1, 2, 3):
        p = count_matrix_power(lds, k)
        for i in range(1, lds.n + 1):
            for j in range(1, lds.n + 1):
                assert is_reachable(lds, j, i, k) == (p.entry(i, j) > 0)


def test_find_path_e1(e1):
    path = find_path(e1.lds, 1, 4)
    assert path_states(path) == (1, 2, 3, 4)
    assert [e.subnetwork for e in path] == [1, 1, 1]
    assert find_path(e1.lds, 6, 5) is None


def test_find_path_fixed_point_self_loop(e1):
    path = find_path(e1.lds, 7, 7)
    assert len(path) == 1 and path[0] == (7, 2, 7)


@settings(max_examples=60)
@given(lds_strategy(max_n=8, max_m=3))
def test_find_path_is_shortest_and_replays(lds):
    for a in range(1, lds.n + 1):
        reach = bfs_reach(lds, a)
        for b in range(1, lds.n + 1):
            path = find_path(lds, a, b)
            assert (path is not None) == (b in reach)
            if path is None:
                continue
            word = [e.subnetwork for e in path]
            assert trajectory(lds, a, word, len(word)).states == path_states(path)
            shortest = next(k for k in range(1, lds.n + 1) if is_reachable(lds, a, b, k))
            assert len(path) == shortest


def test_stg_edges_match_count_pattern(e1):
    g = stg(e1.lds)
    q = count_matrix(e1.lds)
    assert set(g.edges) == {(x, y) for x in range(1, 9) for y in range(1, 9) if q.entry(y, x) > 0}
    assert g.edges[(4, 3)] == (1, 2)


def test_stg_dot_e1(e1):
    dot = stg_dot(e1.lds)
    assert dot.startswith('digraph "e1" {')
    assert '  1 -> 2 [label="1"];' in dot.splitlines()
    assert '  4 -> 3 [label="1,2"];' in dot.splitlines()
    nodes = [ln for ln in dot.splitlines() if ln.strip().rstrip(";").isdigit()]
    assert len(nodes) == 8
    assert "peripheries" not in dot and "fillcolor" not in dot


def test_stg_dot_highlights_target(e1):
    dot = stg_dot(e1.lds, target=e1.target)
    marked = {int(ln.split()[0]) for ln in dot.splitlines() if "peripheries=2" in ln}
    assert marked == {3, 4, 6, 7, 8}


def test_stg_dot_is_deterministic(e3):
    assert stg_dot(e3.lds) == stg_dot(e3.lds)
    edges = [ln for ln in stg_dot(e3.lds).splitlines() if "->" in ln]
    keys = [tuple(int(t) for t in ln.split("[")[0].split("->")) for ln in edges]
    assert keys == sorted(keys)
