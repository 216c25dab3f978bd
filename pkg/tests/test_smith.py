import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deficiency import kernels
from deficiency.smith import (determinant, invariant_factors, is_smith_form,
                              smith_normal_form)


def check_snf(A, D, U, V):
    A = np.asarray(A, dtype=object)
    assert (U.dot(A).dot(V) == D).all()
    assert determinant(U) in (1, -1)
    assert determinant(V) in (1, -1)
    assert is_smith_form(D)


@pytest.mark.parametrize("jit", [True, False])
@pytest.mark.parametrize("A,diag", [
    ([[2, -3], [-5, -2]], [1, 19]),
    ([[1, 0], [0, 1]], [1, 1]),
    ([[0, 3], [0, 2]], [1, 0]),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
])
def test_examples(A, diag, jit):
    D, U, V = smith_normal_form(A, jit=jit)
    check_snf(A, D, U, V)
    assert invariant_factors(A, jit=jit) == diag


def test_empty_and_zero():
    D, U, V = smith_normal_form(np.zeros((0, 3), dtype=object))
    assert D.shape == (0, 3) and U.shape == (0, 0) and V.shape == (3, 3)
    assert invariant_factors(np.zeros((2, 2), dtype=int)) == [0, 0]


def test_determinant_oracle():
    assert determinant(np.array([[2, -3], [-5, -2]], dtype=object)) == -19
    assert determinant(np.eye(4, dtype=int)) == 1


def test_overflow_promotes():
    big = 10 ** 12
    A = [[big, 1], [3, big + 7]]
    for jit in (True, False):
        D, U, V = smith_normal_form(A, jit=jit)
        check_snf(A, D, U, V)
        assert D[1, 1] == abs(big * (big + 7) - 3)


def test_int64_overflow_switches_backend():
    # entries near the promotion limit force the mixed path
    A = [[kernels.LIMIT - 1, kernels.LIMIT - 3], [kernels.LIMIT - 5, kernels.LIMIT - 11]]
    D, U, V = smith_normal_form(A, jit=True)
    check_snf(A, D, U, V)


matrices = st.integers(1, 6).flatmap(lambda m: st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n),
                       min_size=m, max_size=m)))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_unimodular_reconstruction(A):
    D, U, V = smith_normal_form(A)
    check_snf(A, D, U, V)
    # product of invariant factors equals det for square matrices
    if len(A) == len(A[0]):
        prod = 1
        for d in invariant_factors(A):
            prod *= d
        assert prod == abs(determinant(np.array(A, dtype=object)))
