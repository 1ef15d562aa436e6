import numpy as np
import pytest
import sympy
from hypothesis import given

from dnfuchs.detright import (
    AlmostTriangularMatrix,
    OperatorMatrix,
    detright_forward,
    detright_permutation,
    detright_reverse,
    entrywise_adjoint,
    right_principal_minors,
    sign_conjugate,
    tau,
)
from dnfuchs.errors import MalformedMatrix, SizeExceeded
from dnfuchs.sampling import random_almost_triangular
from dnfuchs.weyl import ONE, WeylElement, X, Y, adjoint
from strategies import almost_triangular, operator_matrices

Z = WeylElement()
M1 = WeylElement.scalar(-1)


def test_two_by_two_examples():
    a, b, d = Y, X * X + 1, Y * X
    M = AlmostTriangularMatrix(((a, b), (M1, d)))
    want = d * a + b
    assert detright_forward(M) == detright_reverse(M) == detright_permutation(M) == want
    c = Y + 3
    assert detright_permutation(OperatorMatrix(((a, b), (c, d)))) == d * a - b * c


@pytest.mark.parametrize("m", range(1, 6))
def test_identity_and_zero_row(m):
    eye = tuple(tuple(ONE if i == j else Z for j in range(m)) for i in range(m))
    assert detright_permutation(OperatorMatrix(eye)) == ONE
    rng = np.random.default_rng(m)
    M = random_almost_triangular(m, rng)
    rows = [list(r) for r in M.entries]
    rows[0] = [Z] * m
    Mz = AlmostTriangularMatrix(tuple(map(tuple, rows)))
    assert detright_forward(Mz) == detright_reverse(Mz) == detright_permutation(Mz) == Z


def test_almost_triangular_validation():
    with pytest.raises(MalformedMatrix):
        AlmostTriangularMatrix(((ONE, ONE), (ONE, ONE)))
    with pytest.raises(MalformedMatrix):
        AlmostTriangularMatrix(((ONE, ONE, ONE), (M1, ONE, ONE), (ONE, M1, ONE)))


def test_permutation_oracle_size_bound():
    M = OperatorMatrix(tuple(tuple(ONE for _ in range(8)) for _ in range(8)))
    with pytest.raises(SizeExceeded):
        detright_permutation(M)


@given(almost_triangular(max_size=5))
def test_three_algorithms_agree(M):
    f = detright_forward(M)
    assert f == detright_reverse(M)
    assert f == detright_permutation(M)


@given(almost_triangular(max_size=4))
def test_minors_recursion(M):
    P = right_principal_minors(M)
    for j in range(M.size):
        assert P[j + 1] == sum((M[i, j] * P[i] for i in range(j + 1)), Z)


def test_commutative_case_matches_sympy_det():
    # scalar entries commute, so the right determinant is the ordinary one
    rng = np.random.default_rng(7)
    for m in range(1, 6):
        vals = rng.integers(-4, 5, size=(m, m))
        M = OperatorMatrix(tuple(tuple(WeylElement.scalar(int(v)) for v in row) for row in vals))
        assert detright_permutation(M) == WeylElement.scalar(int(sympy.Matrix(vals.tolist()).det()))


@given(operator_matrices(max_size=4))
def test_tau_involution(M):
    assert tau(tau(M)) == M


def test_tau_reverses_diagonal():
    D = OperatorMatrix(((Y, Z, Z), (Z, X, Z), (Z, Z, ONE)))
    assert tau(D) == OperatorMatrix(((ONE, Z, Z), (Z, X, Z), (Z, Z, Y)))


@given(almost_triangular(max_size=5))
def test_tau_preserves_almost_triangular(M):
    assert isinstance(tau(M), AlmostTriangularMatrix)


@given(almost_triangular(max_size=5))
def test_anti_involution_identity(M):
    assert adjoint(detright_forward(M)) == detright_forward(entrywise_adjoint(tau(M)))


@given(operator_matrices(max_size=4))
def test_sign_conjugation_identity(M):
    sign = -1 if M.size % 2 else 1
    assert detright_permutation(sign_conjugate(M)) == detright_permutation(M) * sign


def test_sign_conjugation_one_by_one():
    M = OperatorMatrix(((Y + 2,),))
    assert sign_conjugate(M) == OperatorMatrix(((-(Y + 2),),))
