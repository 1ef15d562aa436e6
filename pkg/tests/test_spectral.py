from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings

from dnfuchs.dn import DNMatrix, irregular_example
from dnfuchs.errors import DegenerateSpectrum, NearSingularity, TruncationTooSmall
from dnfuchs.sampling import random_symmetric_dn
from dnfuchs.spectral import (
    J_matrix,
    T_matrix,
    TruncatedSeriesMatrix,
    analyze_spectrum,
    char_poly,
    connection_rhs,
    eigendecompose,
    first_model_connection,
    infinity_exponents,
    normalize_basis,
    partial_fraction_rhs,
    residue_matrices,
    residue_structure_errors,
)
from strategies import dn_matrices

EX1 = DNMatrix.from_rows([[0, 1], [1, 0]])


def symmetric_samples(n, count, seed=0):
    rng = np.random.default_rng(seed + 100 * n)
    out = []
    while len(out) < count:
        A = random_symmetric_dn(n, rng)
        try:
            out.append((A, analyze_spectrum(A)))
        except DegenerateSpectrum:
            continue
    return out


def test_two_by_two_eigenvalues():
    spec = eigendecompose(EX1)
    assert np.allclose(np.sort(spec.lambdas.real), [-1, 1])


def test_recovers_chosen_spectrum():
    """A companion-shaped matrix with chosen eigenvalues 1, -2, 3."""
    target = [1, -2, 3]
    # A = upper Hessenberg with unit subdiagonal; put the char poly in the last column
    coeffs = np.poly(target)  # x^3 + c1 x^2 + c2 x + c3
    rows = [[0, 0, -int(coeffs[3])], [1, 0, -int(coeffs[2])], [0, 1, -int(coeffs[1])]]
    A = DNMatrix.from_rows(rows)
    lam = np.sort(eigendecompose(A).lambdas.real)
    assert np.max(np.abs(lam - np.sort(target))) <= 1e-10
    assert sympy.Matrix(rows).charpoly().all_coeffs() == [1, *[-r[-1] for r in rows[::-1]]]


@given(dn_matrices(max_n=4))
@settings(max_examples=25)
def test_char_poly_against_sympy(A):
    M = sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in row]
                      for row in A.rows()])
    want = M.charpoly().all_coeffs()[::-1]
    got = char_poly(A).coeffs
    assert [sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in got] == want


def test_example_is_degenerate():
    with pytest.raises(DegenerateSpectrum):
        eigendecompose(irregular_example(1))


def test_last_coordinate_nonzero_and_eigen_residual():
    for A, spec in symmetric_samples(3, 5):
        assert np.all(np.abs(spec.C[-1]) > 0)
        assert np.max(np.abs(spec.A @ spec.C - spec.C * spec.lambdas)) <= 1e-9 * max(1, np.abs(spec.A).max())


def test_normalization_example():
    spec = normalize_basis(eigendecompose(EX1))
    order = np.argsort(spec.lambdas.real)
    u_minus, u_plus = spec.C[:, order[0]], spec.C[:, order[1]]
    assert np.allclose(np.abs(u_plus), [1 / np.sqrt(2)] * 2)
    assert np.allclose(u_plus[0] / u_plus[1], 1)
    assert np.allclose(u_minus[0] / u_minus[1], -1)
    assert np.allclose(u_minus @ J_matrix(1) @ u_minus, 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_normalized_gram(n):
    for _, spec in symmetric_samples(n, 5):
        assert np.max(np.abs(spec.C.T @ spec.J @ spec.C - np.eye(n + 1))) <= 1e-9


def test_normalize_idempotent_and_sign_invariance():
    _, spec = symmetric_samples(3, 1)[0]
    again = normalize_basis(spec)
    assert np.allclose(again.C, spec.C)
    flipped = spec.C.copy()
    flipped[:, 1] *= -1
    S1 = residue_matrices(spec).S
    S2 = residue_matrices(type(spec)(spec.A, spec.lambdas, flipped, spec.T, spec.J, None, True)).S
    for a, b in zip(S1, S2):
        assert np.allclose(a, b)


def test_residue_matrices_example():
    spec = analyze_spectrum(EX1)
    for S in spec.S:
        assert abs(np.trace(S) + 0.5) <= 1e-12
        assert np.allclose(np.sort(np.linalg.eigvals(S).real), [-0.5, 0])
    assert abs(np.trace(sum(spec.S)) + 1) <= 1e-12


@pytest.mark.parametrize("n", range(1, 6))
def test_residue_structure(n):
    for _, spec in symmetric_samples(n, 8):
        err = residue_structure_errors(spec)
        assert max(err.values()) <= 1e-9, err
        assert abs(np.trace(sum(spec.S)) + n * (n + 1) / 2) <= 1e-9


def test_residue_structure_detects_corruption():
    _, spec = symmetric_samples(2, 1)[0]
    bad = list(spec.S)
    bad[0] = bad[0] + 1e-3 * np.eye(3)
    err = residue_structure_errors(type(spec)(spec.A, spec.lambdas, spec.C, spec.T, spec.J, bad, True))
    assert err["trace"] > 1e-4 and err["rank_ratio"] > 1e-5


def test_connection_rhs_two_paths():
    spec = analyze_spectrum(EX1)
    direct = connection_rhs(EX1, 3.0)
    assert np.max(np.abs(direct - partial_fraction_rhs(spec, 3.0))) <= 1e-12
    assert np.all(direct[0] == 0)
    big = 1e7
    assert np.allclose(big * connection_rhs(EX1, big), -T_matrix(1), atol=1e-6)
    with pytest.raises(NearSingularity):
        connection_rhs(spec, 1.0 + 1e-13)


@pytest.mark.parametrize("n", range(1, 5))
def test_partial_fractions_random_points(n):
    rng = np.random.default_rng(n)
    for A, spec in symmetric_samples(n, 3):
        for _ in range(20):
            z = complex(*rng.normal(size=2)) * 4
            if np.min(np.abs(spec.lambdas - z)) < 0.05:
                continue
            lhs = connection_rhs(A, z)
            assert np.max(np.abs(lhs - partial_fraction_rhs(spec, z))) <= 1e-9 * max(1, np.abs(lhs).max())


def test_first_model_connection():
    A = DNMatrix.from_rows([[2, 5], [1, -1]])
    conn = first_model_connection(A)
    assert np.allclose(conn.residue, -np.diag([1, 2]))
    assert np.allclose(conn.constant, A.to_numpy())
    z = 0.7 + 0.2j
    assert np.allclose(conn(z), A.to_numpy() - np.diag([1, 2]) / z)
    scalar = first_model_connection(DNMatrix(0, {(0, 0): 4}))
    assert np.allclose(scalar(2.0), [[4 - 0.5]])


def test_geometric_series_against_inverse():
    A = random_symmetric_dn(3, np.random.default_rng(5)).to_numpy()
    G = TruncatedSeriesMatrix.geometric(T_matrix(3), A, 12)
    x = 0.01
    approx = sum(G.coefficient(k) * x ** k for k in range(12))
    assert np.allclose(approx, T_matrix(3) @ np.linalg.inv(np.eye(4) - A * x), atol=1e-14)


def test_infinity_example():
    cert = infinity_exponents(EX1)
    assert cert.exact and cert.index == 2 and cert.maximal
    assert any(x != 0 for x in cert.N.flat)
    assert np.all(np.diag(cert.G0) == np.arange(2))
    assert cert.negative_part_zero


@given(dn_matrices(max_n=5))
@settings(max_examples=30)
def test_shearing_certificate_exact(A):
    cert = infinity_exponents(A)
    assert cert.index == A.n + 1
    assert cert.negative_part_zero


def test_shearing_certificate_numeric():
    rng = np.random.default_rng(9)
    for n in range(1, 6):
        for _ in range(5):
            A = random_symmetric_dn(n, rng).to_numpy()
            cert = infinity_exponents(A)
            assert cert.maximal and not cert.exact


def test_truncation_too_small():
    with pytest.raises(TruncationTooSmall):
        infinity_exponents(EX1, truncation=2)


def test_spectrum_json_has_residue_fields():
    js = analyze_spectrum(EX1).to_json()
    assert [round(r["trace"][0], 12) for r in js["residue_matrices"]] == [-0.5, -0.5]
    assert all(r["rank"] == 1 for r in js["residue_matrices"])
