import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import NaiveField, independent_brute

from mrlrc import SingularSystemError
from mrlrc.gf import field_make
from mrlrc.linalg import (
    det,
    inverse,
    is_invertible,
    matmul,
    matvec,
    nullspace,
    rank,
    rref,
    solve,
    transpose,
)

F3 = field_make(3, 1)
F4 = field_make(2, 2)
N4 = NaiveField(2, F4.modulus)


def matrices(rows, cols, q=4):
    return st.lists(st.lists(st.integers(0, q - 1), min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows)


def _brute_det(F, M):
    """Leibniz expansion (characteristic-free sign handling via F.neg)."""
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i, j in enumerate(perm):
            term = F.mul(term, M[i][j])
        total = F.add(total, F.neg(term) if inversions % 2 else term)
    return total


def test_small_examples():
    assert rank(F3, [[1, 2], [2, 1]]) == 1
    assert det(F3, [[1, 2], [0, 1]]) == 1
    assert det(F3, [[0, 1], [1, 0]]) == 2  # -1 mod 3
    assert rank(F3, []) == 0 and rank(F3, [[0, 0]]) == 0
    R, piv = rref(F3, [[2, 1, 0], [1, 2, 0]])
    assert piv == [0] and R[0] == [1, 2, 0]


@given(matrices(3, 4))
def test_rank_matches_brute_independence(M):
    rk = rank(F4, M)
    # rows are independent iff rank equals the row count
    assert (rk == 3) == independent_brute(N4, M)
    assert rk == rank(F4, transpose(M))


@given(matrices(3, 3, q=3))
def test_det_matches_leibniz(M):
    assert det(F3, M) == _brute_det(F3, M)
    assert (det(F3, M) != 0) == is_invertible(F3, M)


@given(matrices(3, 3), matrices(3, 3))
def test_det_is_multiplicative(A, B):
    assert det(F4, matmul(F4, A, B)) == F4.mul(det(F4, A), det(F4, B))


@given(matrices(3, 3))
def test_inverse_or_singular(M):
    if det(F4, M) == 0:
        with pytest.raises(SingularSystemError):
            inverse(F4, M)
        return
    inv = inverse(F4, M)
    assert matmul(F4, M, inv) == [[int(i == j) for j in range(3)] for i in range(3)]


@given(matrices(4, 3), st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_solve_tall_system(A, x):
    b = matvec(F4, A, x)
    if rank(F4, A) < 3:
        with pytest.raises(SingularSystemError):
            solve(F4, A, b)
    else:
        assert solve(F4, A, b) == x


def test_inconsistent_system_raises():
    with pytest.raises(SingularSystemError):
        solve(F3, [[1, 0], [0, 1], [1, 1]], [1, 1, 0])


@given(matrices(2, 5))
def test_nullspace_dimension_and_annihilation(M):
    basis = nullspace(F4, M, 5)
    assert len(basis) == 5 - rank(F4, M)
    for v in basis:
        assert matvec(F4, M, v) == [0, 0]
    if basis:
        assert rank(F4, basis) == len(basis)


def test_big_field_no_tables():
    F = field_make(2, 17)
    assert not F.has_tables
    rng = np.random.default_rng(5)
    M = rng.integers(0, F.q, size=(4, 4)).tolist()
    assert det(F, M) == _brute_det(F, M)
