import math
from math import comb

import numpy as np
import pytest
import sympy
from scipy.linalg import expm
from scipy.stats import ortho_group

from dnfuchs.dn import DNMatrix, build_L_infinity, check_symmetry
from dnfuchs.errors import DegenerateSpectrum, NearSingularity
from dnfuchs.highprec import DDMatrix
from dnfuchs.monodromy import (
    brackets,
    det_series,
    expected_brackets,
    hypergeom_dn_matrix,
    hypergeom_form_check,
    hypergeom_operator,
    hypergeometric_monodromy,
    jordan_ranks,
    local_monodromy,
    monodromy_report,
    plan_loops,
    pseudoreflection_eigenvalues,
    rrv_check,
    solve_polarization,
)
from dnfuchs.sampling import random_symmetric_dn
from dnfuchs.spectral import eigendecompose
from dnfuchs.weyl import THETA, WeylElement, Y, to_canonical

EX1 = DNMatrix.from_rows([[0, 1], [1, 0]])
TOL = 1e-6


def samples(n, count, seed=0):
    rng = np.random.default_rng(1000 + n + seed)
    out = []
    while len(out) < count:
        A = random_symmetric_dn(n, rng)
        try:
            out.append((A, monodromy_report(A)))
        except (DegenerateSpectrum, NearSingularity):
            continue
    return out


# ---------------------------------------------------------------- loops


def test_plan_is_deterministic_and_clear():
    pts = [1, -1, 2j, -0.5 - 1j]
    a, b = plan_loops(pts), plan_loops(pts)
    assert a.base_point == b.base_point and a.order == b.order
    assert a.clearance > 0.25
    for loop in a.finite:
        for q in pts:
            assert loop.path.distance_to(q) > 0 or q == loop.center
    assert sorted(a.order) == list(range(4))
    assert a.infinity.radius > max(abs(complex(p)) for p in pts)


def test_plan_rejects_base_on_singularity():
    with pytest.raises(NearSingularity):
        plan_loops([1, -1], base=1.0)


# ---------------------------------------------------------------- n = 1 example


def test_first_order_example():
    rep = monodromy_report(EX1)
    for M in rep.M:
        assert np.allclose(np.sort(np.linalg.eigvals(M).real), [-1, 1], atol=1e-10)
    assert [np.round(R.real, 10).tolist() for R in rep.reduced] == [[[-1.0]], [[-1.0]]]
    assert np.allclose(rep.reduced_inf, [[1]])
    assert np.linalg.norm(np.linalg.matrix_power(rep.M_inf - np.eye(2), 2)) <= TOL
    assert rep.polarization.dimension == 1 and rep.polarization.symmetry == "symmetric"
    assert rep.checks["product_residual"] <= 1e-20


def test_local_monodromy_about_infinity():
    M = local_monodromy(EX1, "inf")
    assert np.linalg.norm((M - np.eye(2)) @ (M - np.eye(2))) <= TOL
    assert np.allclose(np.sort(np.linalg.eigvals(local_monodromy(EX1, 0)).real), [-1, 1])


# ---------------------------------------------------------------- random symmetric samples


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_monodromy_relations(n):
    eye = np.eye(n + 1)
    for A, rep in samples(n, 3):
        k = rep.checks
        assert k["product_residual"] <= TOL
        assert k["finite_eigenvalue_error"] <= TOL
        assert k["infinity_unipotency_residual"] <= TOL
        assert k["infinity_jordan_ranks"] == list(range(n, -1, -1))
        assert k["reduced_finite_eigenvalue_error"] <= TOL
        assert k["reduced_infinity_jordan_ranks"] == list(range(n - 1, -1, -1))
        assert rep.stats["dp5_relative_disagreement"] <= 1e-8
        # recompute the ordered product from the stored double-double matrices
        prod = rep.dd["M_inf"]
        for j in reversed(rep.plan.order):
            prod = prod @ rep.dd["M"][j]
        assert np.max(np.abs(prod.approx - eye)) <= TOL
        pol = rep.polarization
        assert pol.dimension == 1
        assert pol.symmetry == ("skew" if n % 2 == 0 else "symmetric")
        assert pol.residual <= TOL


def test_odd_n_has_one_dimensional_minus_one_eigenspace():
    for A, rep in samples(3, 2, seed=5):
        for R in rep.dd["reduced"]:
            D = (R + DDMatrix.eye(3)).approx
            sv = np.linalg.svd(D, compute_uv=False)
            assert np.sum(sv <= 1e-8 * max(1, sv[0])) == 1


def test_report_json_shape():
    js = monodromy_report(EX1).to_json()
    assert set(js) >= {"eigenvalues", "loops", "M", "M_inf", "reduced", "polarization", "checks"}
    assert js["loops"]["product_convention"].startswith("M_inf")


# ---------------------------------------------------------------- linear algebra helpers


def test_polarization_identity_and_scalars():
    p = solve_polarization([np.eye(3)])
    assert p.dimension == 9 and p.symmetry == "none"
    q = solve_polarization([np.array([[-1.0]]), np.array([[1.0]])])
    assert q.dimension == 1 and q.symmetry == "symmetric"


def test_polarization_orthogonal_and_symplectic_groups():
    rng = np.random.default_rng(0)
    Q = [ortho_group.rvs(4, random_state=s) for s in (1, 2)]
    p = solve_polarization(Q)
    assert p.dimension == 1 and p.symmetry == "symmetric"
    assert np.allclose(np.abs(p.G), np.eye(4) / 2, atol=1e-10)
    Jm = np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]])
    Sp = []
    for _ in range(2):
        Hs = rng.normal(size=(4, 4))
        Hs = Hs + Hs.T
        Sp.append(expm(Jm @ Hs * 0.3))
    s = solve_polarization(Sp)
    assert s.dimension == 1 and s.symmetry == "skew"
    for M in Sp:
        assert np.max(np.abs(M.T @ s.G @ M - s.G)) <= 1e-10


def test_jordan_ranks_single_block():
    for m in range(1, 6):
        N = DDMatrix.from_complex(np.diag(np.ones(m - 1), 1))
        assert jordan_ranks(N) == list(range(m - 1, -1, -1))
    two_blocks = DDMatrix.from_complex(np.diag([1.0, 0.0, 1.0], 1))
    assert jordan_ranks(two_blocks) == [2, 0, 0, 0]


def test_pseudoreflection_eigenvalues():
    v = np.array([1.0, 2.0, -1.0])
    w = np.array([0.5, 0.0, 1.0])
    M = np.eye(3) + np.outer(v, w)
    ev, how = pseudoreflection_eigenvalues(M)
    assert how == "pseudoreflection"
    assert np.allclose(sorted(ev.real), sorted([1, 1, 1 + w @ v]))
    ev2, how2 = pseudoreflection_eigenvalues(np.diag([2.0, 3.0, 1.0]))
    assert how2 == "eig" and np.allclose(sorted(ev2.real), [1, 2, 3])


# ---------------------------------------------------------------- RRV and brackets


def det_series_oracle(M, order):
    """det(1 - tM) from the characteristic polynomial."""
    c = np.poly(M)  # det(x - M), highest first; det(1 - tM) = t^m det(1/t - M)
    out = np.zeros(order + 1, dtype=complex)
    out[: min(order, len(c) - 1) + 1] = c[: order + 1]
    return out


def series_quotient(a, b):
    q = np.zeros_like(a)
    for k in range(len(a)):
        q[k] = (a[k] - np.dot(q[:k], b[k:0:-1])) / b[0]
    return q


def test_det_series_against_char_poly():
    rng = np.random.default_rng(3)
    for m in range(1, 6):
        M = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
        assert np.allclose(det_series(M, m + 2), det_series_oracle(M, m + 2), atol=1e-10)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_rrv_with_random_orthogonal(m):
    rng = np.random.default_rng(m)
    U = ortho_group.rvs(m, random_state=m)
    v = rng.normal(size=m)
    v *= math.sqrt(2) / np.linalg.norm(v)  # (v, v) = 2 makes S an honest reflection
    S = np.eye(m) - np.outer(v, v)
    order = 6
    ok, res = rrv_check(U, S, v, np.eye(m), order)
    assert ok and res <= 1e-8
    lhs = series_quotient(det_series_oracle(U @ S, order), det_series_oracle(U, order))
    br = [v @ np.linalg.matrix_power(U, i) @ v for i in range(1, order + 1)]
    assert np.allclose(lhs[1:], br, atol=1e-10)
    assert abs(lhs[0] - 1) <= 1e-14


def test_rrv_detects_wrong_vector():
    m = 3
    U = ortho_group.rvs(m, random_state=7)
    v = np.array([1.0, 1.0, 0.0])
    S = np.eye(m) - np.outer(v, v)
    ok, res = rrv_check(U, S, v + 0.1, np.eye(m), 5)
    assert not ok and res > 1e-4


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_expected_brackets_series(n):
    t = sympy.Symbol("t")
    ser = sympy.series((1 - t) ** (n + 1) / (1 - t ** (n + 1)), t, 0, n + 1).removeO()
    assert [ser.coeff(t, k) for k in range(1, n + 1)] == expected_brackets(n)
    assert [abs(b) for b in expected_brackets(n)] == [comb(n + 1, k) for k in range(1, n + 1)]


# ---------------------------------------------------------------- hypergeometric family


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hypergeometric_operator(n):
    prod = WeylElement.scalar(1)
    for l in range(1, n + 1):
        prod = prod * (THETA + l)
    assert hypergeom_operator(n) == THETA ** n - Y ** (n + 1) * prod
    c = to_canonical(hypergeom_operator(n), n, "w")
    assert all(g.is_zero() for g in c.g[:-1]) and c.g[-1].coeffs == (-1,)
    assert check_symmetry(c)
    assert all(hypergeom_form_check(n).values())


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hypergeometric_singularities_are_roots_of_unity(n):
    A = hypergeom_dn_matrix(n)
    assert A.is_symmetric()
    lam = eigendecompose(A).lambdas
    powers = lam ** (n + 1)
    assert np.allclose(powers, powers[0], atol=1e-9)
    assert np.allclose(np.abs(lam), np.abs(lam[0]), atol=1e-9)
    L = build_L_infinity(A)
    assert L.x_degree() == n


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hypergeometric_monodromy(n):
    h = hypergeometric_monodromy(n)
    assert h.product_residual <= 1e-8
    assert h.form.dimension == 1
    assert h.form.symmetry == ("skew" if n % 2 == 0 else "symmetric")
    assert h.reflection_residual <= 1e-8
    ok, res = rrv_check(h.U, h.S, h.v, h.form, n + 2)
    assert ok, res
    br = brackets(h.U, h.v, h.form.G, n)[1:]
    assert np.max(np.abs(np.abs(br) - [comb(n + 1, k) for k in range(1, n + 1)])) <= 1e-6
