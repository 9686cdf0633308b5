import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ldstab.stp import (
    IntMatrix,
    LogicMatrix,
    LogicValueMap,
    decode_state,
    encode_state,
    khatri_rao,
    kron,
    stp,
    structural_matrix,
)


def delta(n, i):
    return LogicMatrix(n, (i,))


def np_stp(a, b):
    """Independent STP straight from the definition, via numpy object arrays."""
    a = np.array(a.to_rows(), dtype=object)
    b = np.array(b.to_rows(), dtype=object)
    t = np.lcm(a.shape[1], b.shape[0])
    left = np.kron(a, np.eye(t // a.shape[1], dtype=int).astype(object))
    right = np.kron(b, np.eye(t // b.shape[0], dtype=int).astype(object))
    return (left @ right).tolist()


small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.integers(-3, 3), min_size=r * c, max_size=r * c).map(
            lambda e: IntMatrix(r, c, tuple(e))
        )
    )
)


def test_kron_identity_scalar():
    assert kron(IntMatrix.identity(2), IntMatrix.from_rows([[5]])).to_rows() == [[5, 0], [0, 5]]


def test_kron_row_by_column():
    # [1 2] (x) [3; 4] = [[1*3, 2*3], [1*4, 2*4]]
    assert kron(IntMatrix.from_rows([[1, 2]]), IntMatrix.from_rows([[3], [4]])).to_rows() == [[3, 6], [4, 8]]


@given(small_matrices)
def test_kron_with_one_is_identity(a):
    assert kron(a, IntMatrix.identity(1)) == a


@given(small_matrices, small_matrices)
def test_kron_matches_numpy(a, b):
    expected = np.kron(np.array(a.to_rows(), dtype=object), np.array(b.to_rows(), dtype=object))
    assert kron(a, b).to_rows() == expected.tolist()


def test_stp_compatible_case_is_ordinary_product():
    a = IntMatrix.from_rows([[1, 2], [3, 4], [5, 6]])
    b = IntMatrix.from_rows([[7, 8, 9], [10, 11, 12]])
    assert stp(a, b) == a @ b
    assert stp(a, b).to_rows() == [[27, 30, 33], [61, 68, 75], [95, 106, 117]]


def test_stp_of_basis_vectors():
    assert LogicMatrix.from_dense(stp(delta(2, 1), delta(2, 1))) == delta(4, 1)
    assert LogicMatrix.from_dense(stp(delta(2, 2), delta(2, 1))) == delta(4, 3)


def test_stp_identity_with_longer_vector():
    v = IntMatrix.column([3, -1, 4, 1])
    assert stp(IntMatrix.identity(2), v) == v


@given(small_matrices, small_matrices)
def test_stp_matches_definition(a, b):
    assert stp(a, b).to_rows() == np_stp(a, b)


@settings(max_examples=60)
@given(small_matrices, small_matrices, small_matrices)
def test_stp_associative(a, b, c):
    assert stp(stp(a, b), c) == stp(a, stp(b, c))


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(1, n), min_size=1, max_size=6))))
def test_stp_logic_matrix_selects_column(args):
    n, cols = args
    lm = LogicMatrix(n, tuple(cols))
    for j in range(1, len(cols) + 1):
        assert stp(lm, delta(len(cols), j)) == lm.to_dense().col(j)


def test_khatri_rao_logic():
    a = LogicMatrix(2, (1, 2))
    b = LogicMatrix(2, (1, 1))
    assert khatri_rao(a, b) == LogicMatrix(4, (1, 3))


def test_khatri_rao_with_ones_row():
    a = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert khatri_rao(a, IntMatrix.from_rows([[1, 1, 1]])) == a


def test_khatri_rao_column_mismatch():
    with pytest.raises(ValueError):
        khatri_rao(LogicMatrix(2, (1, 2)), LogicMatrix(2, (1,)))
    with pytest.raises(ValueError):
        khatri_rao(IntMatrix.identity(2), IntMatrix.identity(3))


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 5), st.randoms(use_true_random=False))
def test_khatri_rao_logic_matches_dense(n, p, c, rnd):
    a = LogicMatrix(n, tuple(rnd.randint(1, n) for _ in range(c)))
    b = LogicMatrix(p, tuple(rnd.randint(1, p) for _ in range(c)))
    fast = khatri_rao(a, b)
    assert fast.cols == tuple((i - 1) * p + k for i, k in zip(a.cols, b.cols))
    assert fast.to_dense() == khatri_rao(a.to_dense(), b.to_dense())


def test_value_map_convention():
    vm = LogicValueMap(2)
    assert vm.to_index(1) == 1 and vm.to_index(0) == 2
    assert [LogicValueMap(3).to_index(a) for a in range(3)] == [3, 2, 1]
    for n in range(1, 6):
        vm = LogicValueMap(n)
        assert sorted(vm.to_index(a) for a in range(n)) == list(range(1, n + 1))
        assert all(vm.to_value(vm.to_index(a)) == a for a in range(n))
    with pytest.raises(ValueError):
        LogicValueMap(2).to_index(2)


def test_encode_matches_stp_of_vectors():
    domains = (2, 3, 2)
    for values in itertools.product(*(range(d) for d in domains)):
        vec = LogicValueMap(domains[0]).vector(values[0])
        for v, d in zip(values[1:], domains[1:]):
            vec = stp(vec, LogicValueMap(d).vector(v))
        idx = encode_state(values, domains)
        assert LogicMatrix.from_dense(vec).cols == (idx,)
        assert decode_state(idx, domains) == values


def test_structural_matrix_xor():
    lf = structural_matrix((2, 2), 2, {(a, b): a ^ b for a in range(2) for b in range(2)})
    assert lf == LogicMatrix(2, (2, 1, 1, 2))


def test_structural_matrix_constant_and_identity():
    assert structural_matrix((2, 2), 2, lambda a, b: 0) == LogicMatrix(2, (2, 2, 2, 2))
    assert structural_matrix((3,), 3, lambda a: a) == LogicMatrix(3, (1, 2, 3))


def test_structural_matrix_errors():
    with pytest.raises(ValueError, match="no entry"):
        structural_matrix((2,), 2, {(0,): 1})
    with pytest.raises(ValueError, match="codomain"):
        structural_matrix((2,), 2, lambda a: 2)


@settings(max_examples=40)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(1, 3), st.randoms(use_true_random=False))
def test_structural_matrix_round_trip(domains, codomain, rnd):
    table = {args: rnd.randrange(codomain) for args in itertools.product(*(range(d) for d in domains))}
    lf = structural_matrix(domains, codomain, table)
    for args, value in table.items():
        vec = lf.to_dense()
        for a, d in zip(args, domains):
            vec = stp(vec, LogicValueMap(d).vector(a))
        assert LogicValueMap(codomain).to_value(LogicMatrix.from_dense(vec).cols[0]) == value


def test_logic_matrix_validation():
    with pytest.raises(ValueError):
        LogicMatrix(3, (1, 4))
    with pytest.raises(ValueError):
        LogicMatrix.from_dense(IntMatrix.from_rows([[1, 1], [1, 0]]))
    assert LogicMatrix(3, (2, 3)).to_dense().to_rows() == [[0, 0], [1, 0], [0, 1]]
    assert str(LogicMatrix(8, (2, 3))) == "delta_8[2,3]"
