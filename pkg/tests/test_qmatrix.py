from fractions import Fraction

import pytest

from hypothesis import given, settings, strategies as st

from commands.utils import qmatrix as qm
from commands.utils.errors import DimensionError, InputError
from commands.utils.qmatrix import QMatrix


small_matrices = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 2 ** 32)).map(
    lambda t: qm.random_matrix(qm.make_rng(t[2]), t[0], t[1], -3, 3))


def test_rank_of_a_singular_matrix():
    M = QMatrix.from_rows([[1, 2], [2, 4]])
    assert M.rank() == 1
    assert not M.is_iso()

def test_fraction_entries():
    M = qm.from_json(1, 2, [['1/2', 3]])
    assert M[0, 0] == Fraction(1, 2)
    assert M.to_strings() == [['1/2', '3']]

def test_floats_are_rejected():
    with pytest.raises(InputError):
        qm.from_json(1, 1, [[0.5]])

def test_shape_mismatch():
    with pytest.raises(DimensionError):
        QMatrix.identity(2) @ QMatrix.identity(3)
    with pytest.raises(DimensionError):
        QMatrix(2, 2, [[1, 2]])

def test_inverse_of_unitriangular():
    U = qm.random_unitriangular(qm.make_rng(7), 4)
    assert U @ U.inverse() == QMatrix.identity(4)

def test_solve_inconsistent():
    A = QMatrix.from_rows([[1], [1]])
    B = QMatrix.from_rows([[1], [2]])
    with pytest.raises(DimensionError):
        A.solve(B)

def test_empty_shapes():
    Z = QMatrix(0, 3)
    assert Z.rank() == 0
    assert Z.kernel().shape == (3, 3)
    assert QMatrix(3, 0).cokernel_projection().shape == (3, 3)

def test_block_diag_and_stacks():
    A = QMatrix.identity(1)
    B = QMatrix.from_rows([[2, 0], [0, 3]])
    D = qm.block_diag([A, B])
    assert D.shape == (3, 3)
    assert D.rank() == 3
    assert qm.hstack([A, A]).shape == (1, 2)
    assert qm.vstack([A, A]).shape == (2, 1)

@given(small_matrices)
@settings(max_examples=80, deadline=None)
def test_rank_nullity(M):
    assert M.rank() + M.kernel().cols == M.cols
    assert (M @ M.kernel()).is_zero()

@given(small_matrices)
@settings(max_examples=80, deadline=None)
def test_cokernel_kills_the_image(M):
    Q = M.cokernel_projection()
    assert (Q @ M).is_zero()
    assert Q.rows == M.rows - M.rank()
    assert Q.is_surjective()

@given(small_matrices)
@settings(max_examples=80, deadline=None)
def test_bareiss_rank_matches_rref(M):
    _, pivots = M.rref()
    assert M.rank() == len(pivots)
    assert M.transpose().rank() == M.rank()
