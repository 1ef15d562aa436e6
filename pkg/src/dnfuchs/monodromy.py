"""Numerical monodromy of ``dPhi/dt = T (A - t)^-1 Phi`` and of the hypergeometric
companion system, plus the polarization and bracket checks built on them.

Conventions
-----------
* Continuing the fundamental solution (``Phi(b) = I``) around a loop returns
  ``Phi(b) = M``; following loop ``g1`` and then ``g2`` gives ``M2 @ M1``.
* Finite loops are lassos: a straight tail from the base point, one positive
  turn around a small circle, and the tail back. The loop at infinity runs
  radially out to the big circle and turns once clockwise.
* With the finite loops sorted by increasing angle of ``lambda_j - b``
  measured from the direction ``-b``, the product relation is
  ``M_inf @ M_last @ ... @ M_first = I``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .dn import DNMatrix, build_L_infinity, check_adjoint, check_symmetry, from_DN0, reconstruct
from .poly import Poly
from .errors import NearSingularity, QuotientIllConditioned
from .highprec import DDMatrix, _eliminate, kron, null_space, numerical_rank, transport
from .ode import DEFAULT_ODE_TOL, Arc, Path, Segment, integrate
from .spectral import DEFAULT_TOL, eigendecompose
from .weyl import THETA, WeylElement, Y, to_canonical

__all__ = [
    "Loop",
    "LoopPlan",
    "plan_loops",
    "continue_solution",
    "local_monodromy",
    "pseudoreflection_eigenvalues",
    "MonodromyReport",
    "monodromy_report",
    "operator_monodromy",
    "PolarizationForm",
    "solve_polarization",
    "hypergeom_operator",
    "hypergeom_dn_matrix",
    "hypergeom_form_check",
    "HypergeometricMonodromy",
    "hypergeometric_monodromy",
    "det_series",
    "rrv_check",
    "brackets",
    "DEFAULT_MONO_TOL",
    "jordan_ranks",
    "expected_brackets",
]

DEFAULT_MONO_TOL = 1e-6
LOOP_RADIUS_FRACTION = 0.4
BASE_RADIUS_FACTOR = 1.5
INFINITY_RADIUS_FACTOR = 2.0
_ANGLE_GRID = 720
MIN_CLEARANCE = 0.25


# ---------------------------------------------------------------- loops


@dataclass(frozen=True)
class Loop:
    label: str
    center: complex | None  # None for the point at infinity
    radius: float
    base_point: complex
    path: Path

    def to_json(self) -> dict:
        c = None if self.center is None else [self.center.real, self.center.imag]
        return {"label": self.label, "center": c, "radius": self.radius, "path": self.path.to_json()}


@dataclass(frozen=True)
class LoopPlan:
    base_point: complex
    finite: tuple
    infinity: Loop
    order: tuple  # indices of ``finite`` in increasing relative angle
    clearance: float

    def to_json(self) -> dict:
        return {
            "base_point": [self.base_point.real, self.base_point.imag],
            "order": list(self.order),
            "clearance": self.clearance,
            "product_convention": "M_inf @ M[order[-1]] @ ... @ M[order[0]] = I",
            "finite": [l.to_json() for l in self.finite],
            "infinity": self.infinity.to_json(),
        }


def _radii(points) -> list:
    pts = list(points)
    if len(pts) == 1:
        return [LOOP_RADIUS_FRACTION * max(1.0, abs(pts[0]))]
    return [
        LOOP_RADIUS_FRACTION * min(abs(p - q) for k, q in enumerate(pts) if k != j)
        for j, p in enumerate(pts)
    ]


def _entry(p: complex, r: float, b: complex) -> complex:
    return p + r * (b - p) / abs(b - p)


def _clearance(points, radii, b) -> float:
    """Smallest distance from a foreign singularity to a tail, in units of
    that singularity's loop radius. Each tail lies on the segment from ``b``
    to its own point, so any positive clearance fixes the homotopy classes;
    the margin only bounds how close the integrator gets."""
    score = math.inf
    for j, (p, r) in enumerate(zip(points, radii)):
        if abs(b - p) <= r:
            return 0.0
        tail = Segment(b, _entry(p, r, b))
        for k, (q, rq) in enumerate(zip(points, radii)):
            if k != j:
                score = min(score, tail.distance_to(q) / rq)
    return score


def plan_loops(points, base: complex | None = None) -> LoopPlan:
    """Deterministic lasso loops about every point and about infinity."""
    pts = [complex(p) for p in points]
    radii = _radii(pts)
    rho = max((abs(p) for p in pts), default=0.0) or 1.0
    if base is None:
        best = None
        for k in range(_ANGLE_GRID):
            phi = 2 * math.pi * k / _ANGLE_GRID + 0.1
            b = BASE_RADIUS_FACTOR * rho * complex(math.cos(phi), math.sin(phi))
            sc = _clearance(pts, radii, b)
            if best is None or sc > best[0] + 1e-12:
                best = (sc, b)
        clearance, base = best
    else:
        base = complex(base)
        clearance = _clearance(pts, radii, base)
    if clearance <= MIN_CLEARANCE:
        raise NearSingularity(f"no base point keeps the loop tails clear (clearance {clearance:.3f})")
    loops = []
    for j, (p, r) in enumerate(zip(pts, radii)):
        e = _entry(p, r, base)
        th = math.atan2((e - p).imag, (e - p).real)
        tail = Segment(base, e)
        path = Path([tail, Arc(p, r, th, th + 2 * math.pi), tail.reversed()])
        loops.append(Loop(f"lambda_{j}", p, r, base, path))
    R = max(INFINITY_RADIUS_FACTOR * rho, BASE_RADIUS_FACTOR * abs(base))
    out = R * base / abs(base)
    th = math.atan2(base.imag, base.real)
    tail = Segment(base, out)
    inf_path = Path([tail, Arc(0j, R, th, th - 2 * math.pi), tail.reversed()])
    inf_loop = Loop("infinity", None, R, base, inf_path)
    ref = -base
    order = sorted(range(len(pts)), key=lambda j: np.angle((pts[j] - base) / ref))
    return LoopPlan(base, tuple(loops), inf_loop, tuple(order), clearance)


# ---------------------------------------------------------------- integration


def _matrix(A) -> np.ndarray:
    return A.to_numpy() if isinstance(A, DNMatrix) else np.asarray(A, dtype=complex)


def continue_solution(A, path: Path, tol: float = DEFAULT_ODE_TOL, Phi0=None, richardson: bool = False):
    """Fundamental solution at the end of ``path`` (identity at its start)."""
    arr = _matrix(A)
    start = np.eye(arr.shape[0], dtype=complex) if Phi0 is None else Phi0
    return integrate(path, start, tol, A=arr, richardson=richardson).Phi


def local_monodromy(A, which, tol: float = DEFAULT_ODE_TOL, tol_spectral: float = DEFAULT_TOL) -> np.ndarray:
    """Monodromy about eigenvalue number ``which`` (sorted as in
    ``eigendecompose``) or about ``"inf"``."""
    spec = eigendecompose(A, tol_spectral)
    plan = plan_loops(spec.lambdas)
    loop = plan.infinity if which in ("inf", "infinity", None) else plan.finite[int(which)]
    return continue_solution(spec.A, loop.path, tol)


def pseudoreflection_eigenvalues(M, tol: float = 1e-8):
    """Eigenvalues of ``M`` (array or DDMatrix); when ``M - I`` has numerical
    rank <= 1 they are ``1`` (multiplicity m-1) and ``1 + trace(M - I)``,
    which avoids the ill-conditioning of a Jordan block."""
    M = _as_dd(M)
    m = M.shape[0]
    D = M - DDMatrix.eye(m)
    sv = np.linalg.svd(D.approx, compute_uv=False)
    if m == 1 or sv[1] <= tol * max(1.0, sv[0]):
        return np.array([1.0 + 0j] * (m - 1) + [1.0 + D.trace()]), "pseudoreflection"
    return np.linalg.eigvals(M.approx), "eig"


def _mpow(M, k):
    return np.linalg.matrix_power(M, k)


def _cj(z):
    z = complex(z)
    return [z.real, z.imag]


def _mj(M):
    return [[_cj(x) for x in row] for row in np.asarray(M)]


# ---------------------------------------------------------------- polarization

# Largest relative pivot that may still count as zero. Double-double inputs
# carry ~30 digits, double inputs about 12 after integration.
PIVOT_TOL_DD = 1e-16
PIVOT_TOL_DOUBLE = 1e-8


def _as_dd(M) -> DDMatrix:
    return M if isinstance(M, DDMatrix) else DDMatrix.from_complex(M)


@dataclass
class PolarizationForm:
    G: np.ndarray | None
    symmetry: str
    dimension: int
    residual: float | None
    pivots: list
    pivot_gap: float = math.inf
    G_dd: DDMatrix | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "symmetry": self.symmetry,
            "residual": self.residual,
            "G": None if self.G is None else _mj(self.G),
            "trailing_pivots": self.pivots,
            "pivot_gap": None if math.isinf(self.pivot_gap) else self.pivot_gap,
        }


def solve_polarization(Ms, tol: float = DEFAULT_MONO_TOL, pivot_tol: float | None = None) -> PolarizationForm:
    """Bilinear forms ``G`` with ``M^t G M = G`` for every ``M`` in ``Ms``.

    The stacked Kronecker system is eliminated with complete pivoting in
    double-double; the number of free columns, read off the largest drop in
    the pivot sequence, is the dimension of the solution space. A unique form is scaled to unit Frobenius norm with its
    first significant entry real positive."""
    if not len(Ms):
        raise ValueError("need at least one matrix")
    if pivot_tol is None:
        pivot_tol = PIVOT_TOL_DD if all(isinstance(M, DDMatrix) for M in Ms) else PIVOT_TOL_DOUBLE
    Ms = [_as_dd(M) for M in Ms]
    m = Ms[0].shape[0]
    eye = DDMatrix.eye(m * m)
    # row-major vec: vec(M^t G M) = kron(M^t, M^t) vec(G)
    blocks = [kron(M.T, M.T) - eye for M in Ms]
    system = DDMatrix(np.vstack([b.hi for b in blocks]), np.vstack([b.lo for b in blocks]))
    basis, pivots, gap = null_space(system, pivot_tol)
    dim = 0 if basis is None else basis.shape[1]
    tail = pivots[-3:]
    if dim != 1:
        return PolarizationForm(None, "none", dim, None, tail, gap)
    G = DDMatrix(basis.hi.reshape(m, m), basis.lo.reshape(m, m))
    flat = G.approx.ravel()
    first = flat[np.argmax(np.abs(flat) > math.sqrt(tol) * np.max(np.abs(flat)))]
    G = G.scale(abs(first) / first)
    G = G.scale(1.0 / np.linalg.norm(G.approx))
    res = max((M.T @ G @ M - G).max_abs() for M in Ms)
    sym = float(np.linalg.norm((G - G.T).approx))
    skew = float(np.linalg.norm((G + G.T).approx))
    if sym <= math.sqrt(tol):
        kind = "symmetric"
    elif skew <= math.sqrt(tol):
        kind = "skew"
    else:
        kind = "none"
    return PolarizationForm(G.approx, kind, 1, res, tail, gap, G)


# ---------------------------------------------------------------- monodromy report


@dataclass
class MonodromyReport:
    lambdas: np.ndarray
    plan: LoopPlan
    M: list
    M_inf: np.ndarray
    reduced: list
    reduced_inf: np.ndarray
    polarization: PolarizationForm
    checks: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)
    dd: dict = field(default_factory=dict, repr=False)  # the same matrices in double-double

    @property
    def n(self) -> int:
        return len(self.lambdas) - 1

    def to_json(self) -> dict:
        return {
            "eigenvalues": [_cj(l) for l in self.lambdas],
            "loops": self.plan.to_json(),
            "M": [_mj(M) for M in self.M],
            "M_inf": _mj(self.M_inf),
            "reduced": [_mj(M) for M in self.reduced],
            "reduced_inf": _mj(self.reduced_inf),
            "polarization": self.polarization.to_json(),
            "checks": self.checks,
            "integration": self.stats,
        }


def _reduce(M: DDMatrix, tol: float) -> DDMatrix:
    """Action on solutions modulo constants: lower-right block of ``M^-1``."""
    m = M.shape[0]
    row0 = float(np.max(np.abs((M - DDMatrix.eye(m)).approx[0])))
    if row0 > tol:
        raise QuotientIllConditioned(f"constants are not invariant: row-0 residual {row0:.3e}")
    return M.inverse().block(slice(1, None), slice(1, None))


def _relative_power(D: DDMatrix, k: int, scale: float) -> float:
    """``max|D^k| / scale^k``: scale-free test of nilpotency."""
    return D.power(k).max_abs() / scale ** k


def jordan_ranks(D: DDMatrix, rel_tol: float = PIVOT_TOL_DD) -> list:
    """Numerical ranks of ``D, D^2, ..., D^m`` (m = size) from double-double
    elimination. A single nilpotent Jordan block gives ``[m-1, ..., 1, 0]``."""
    out = []
    P = DDMatrix.eye(D.shape[0])
    for _ in range(D.shape[0]):
        P = P @ D
        *_, pivots = _eliminate(P)
        rank, _ = numerical_rank(pivots, max(1.0, P.max_abs()), rel_tol)
        out.append(rank)
    return out


def _dd_matrix(A, arr) -> DDMatrix:
    if isinstance(A, DNMatrix) and A.exact:
        return DDMatrix.from_exact(A.rows())
    return DDMatrix.from_complex(arr)


def operator_monodromy(A, tol_ode: float = DEFAULT_ODE_TOL, tol_mono: float = DEFAULT_MONO_TOL,
                       tol_spectral: float = DEFAULT_TOL):
    """Reduced n x n monodromy matrices (finite points, then infinity)."""
    rep = monodromy_report(A, tol_ode, tol_mono, tol_spectral)
    return rep.reduced, rep.reduced_inf


def monodromy_report(A, tol_ode: float = DEFAULT_ODE_TOL, tol_mono: float = DEFAULT_MONO_TOL,
                     tol_spectral: float = DEFAULT_TOL, base: complex | None = None,
                     cross_check: bool = True) -> MonodromyReport:
    """Monodromy about every eigenvalue and about infinity, with the checks
    of the product relation, local spectra, reduced action and polarization.

    The matrices come from the double-double Taylor transport; with
    ``cross_check`` every loop is also integrated by the adaptive DP5 solver
    at ``tol_ode`` and the relative disagreement is recorded."""
    spec = eigendecompose(A, tol_spectral)
    n = spec.A.shape[0] - 1
    plan = plan_loops(spec.lambdas, base)
    A_dd = _dd_matrix(A, spec.A)
    Ms, steps, terms, disagreement = [], 0, 0, 0.0
    for loop in list(plan.finite) + [plan.infinity]:
        M, st, used = transport(A_dd, loop.path, spec.lambdas)
        Ms.append(M)
        steps += st
        terms = max(terms, used)
        if cross_check:
            P = integrate(loop.path, np.eye(n + 1), tol_ode, A=spec.A).Phi
            disagreement = max(disagreement, float(np.max(np.abs(P - M.approx))) / max(1.0, M.max_abs()))
    M_inf = Ms.pop()
    eye = DDMatrix.eye(n + 1)

    prod = M_inf
    for j in reversed(plan.order):
        prod = prod @ Ms[j]
    target = np.array([1.0] * n + [(-1.0) ** n])
    finite_eigs, methods, eig_err = [], [], 0.0
    for M in Ms:
        ev, how = pseudoreflection_eigenvalues(M)
        methods.append(how)
        finite_eigs.append([_cj(x) for x in ev])
        eig_err = max(eig_err, _multiset_distance(ev, target))
    D_inf = M_inf - eye
    scale = max(1.0, D_inf.max_abs())
    reduced = [_reduce(M, tol_mono) for M in Ms]
    reduced_inf = _reduce(M_inf, tol_mono)
    if n >= 1:
        pol = solve_polarization(reduced + [reduced_inf], tol_mono)
    else:
        pol = PolarizationForm(None, "none", 0, None, [])
    checks = {
        "product_residual": (prod - eye).max_abs(),
        "finite_eigenvalues": finite_eigs,
        "finite_eigenvalue_method": methods,
        "finite_eigenvalue_error": eig_err,
        "infinity_unipotency_residual": _relative_power(D_inf, n + 1, scale),
        "infinity_unipotency_residual_abs": D_inf.power(n + 1).max_abs(),
        "infinity_index_witness": _relative_power(D_inf, n, scale) if n >= 1 else 1.0,
        "infinity_jordan_ranks": jordan_ranks(D_inf),
        **_reduced_checks(reduced, reduced_inf, n, tol_mono),
    }
    stats = {
        "method": "double-double Taylor series",
        "taylor_steps": steps,
        "max_series_terms": terms,
        "max_abs_entry": max(M.max_abs() for M in Ms + [M_inf]),
    }
    if cross_check:
        stats["dp5_relative_disagreement"] = disagreement
        stats["tol_ode"] = tol_ode
    dd = {"M": Ms, "M_inf": M_inf, "reduced": reduced, "reduced_inf": reduced_inf}
    return MonodromyReport(spec.lambdas, plan, [M.approx for M in Ms], M_inf.approx,
                           [R.approx for R in reduced], reduced_inf.approx, pol, checks, stats, dd)


def _multiset_distance(ev, target) -> float:
    ev = list(ev)
    worst = 0.0
    for t in target:
        k = min(range(len(ev)), key=lambda i: abs(ev[i] - t))
        worst = max(worst, abs(ev[k] - t))
        ev.pop(k)
    return worst


def _reduced_checks(reduced, reduced_inf, n, tol) -> dict:
    if n == 0:
        return {}
    eye = DDMatrix.eye(n)
    out = {}
    target = np.array([1.0] * (n - 1) + [-1.0]) if n % 2 else np.ones(n)
    err = 0.0
    dims = []
    for R in reduced:
        ev, _ = pseudoreflection_eigenvalues(R)
        err = max(err, _multiset_distance(ev, target))
        sv = np.linalg.svd((R - eye).approx, compute_uv=False)
        dims.append(int(n - np.sum(sv > math.sqrt(tol) * max(1.0, sv[0]))))
    out["reduced_finite_eigenvalue_error"] = err
    out["reduced_finite_eigenspace_dim_of_1"] = dims
    D = reduced_inf - eye
    scale = max(1.0, D.max_abs())
    out["reduced_infinity_unipotency_residual"] = _relative_power(D, n, scale)
    out["reduced_infinity_index_witness"] = _relative_power(D, n - 1, scale) if n >= 2 else 1.0
    out["reduced_infinity_jordan_ranks"] = jordan_ranks(D)
    return out


# ---------------------------------------------------------------- hypergeometric family


def hypergeom_operator(n: int) -> WeylElement:
    """``D^n - w^(n+1) (D+1)...(D+n)`` in the w-chart, ``D = w d/dw``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    prod = WeylElement.scalar(1)
    for l in range(1, n + 1):
        prod = prod * (THETA + l)
    return THETA ** n - (Y ** (n + 1)) * prod


def hypergeom_dn_matrix(n: int) -> DNMatrix:
    """The DN matrix whose operator is the t-chart form of ``hypergeom_operator(n)``."""
    c = to_canonical(hypergeom_operator(n), n, "w")
    return reconstruct(from_DN0(c))


def hypergeom_form_check(n: int) -> dict:
    """Exact DN_{0,0} check of ``hypergeom_operator(n)``: in the w-chart only
    the top coefficient is nonzero and equals -1, and the symmetry holds."""
    c = to_canonical(hypergeom_operator(n), n, "w")
    only_top = all(g.is_zero() for g in c.g[:-1]) and c.g[-1] == Poly((-1,))
    A = hypergeom_dn_matrix(n)
    return {
        "only_top_coefficient": only_top,
        "symmetry": check_symmetry(c),
        "matrix_symmetric": A.is_symmetric(),
        "adjoint": check_adjoint(build_L_infinity(A), n),
    }


def _companion(n: int):
    """Residues of ``dY/du = N0/u - E/(u-1)`` for ``D^n - u prod (D + l/(n+1))``."""
    alpha = [l / (n + 1) for l in range(1, n + 1)]
    e = np.poly([-a for a in alpha])[::-1]  # prod (D + a) low to high, monic
    N0 = np.diag(np.ones(n - 1), 1).astype(complex)
    E = np.zeros((n, n), dtype=complex)
    E[n - 1, :] = e[:n]
    return N0, -E


@dataclass
class HypergeometricMonodromy:
    n: int
    M0: np.ndarray
    M1: np.ndarray
    M_inf: np.ndarray
    product_residual: float
    form: PolarizationForm
    v: np.ndarray | None
    reflection_residual: float | None

    @property
    def U(self) -> np.ndarray:
        return self.M_inf

    @property
    def S(self) -> np.ndarray:
        return self.M1


def hypergeometric_monodromy(n: int, tol_ode: float = DEFAULT_ODE_TOL,
                             tol_mono: float = DEFAULT_MONO_TOL) -> HypergeometricMonodromy:
    """Monodromy of the Kummer quotient ``D^n - u prod (D + l/(n+1))`` of H
    (u = w^(n+1)), integrated as a first-order companion system."""
    N0, R1 = _companion(n)
    plan = plan_loops([0j, 1 + 0j], base=0.5 + 1j)
    eye = np.eye(n, dtype=complex)

    def run(loop):
        return integrate(loop.path, eye, tol_ode, residues=[N0, R1], poles=[0.0, 1.0]).Phi

    M0, M1 = run(plan.finite[0]), run(plan.finite[1])
    Minf = run(plan.infinity)
    prod = Minf.copy()
    for j in reversed(plan.order):
        prod = prod @ (M0, M1)[j]
    form = solve_polarization([Minf, M1], tol_mono)
    v, fit = (None, None)
    if form.G is not None:
        v, fit = _reflection_vector(M1, form.G)
    return HypergeometricMonodromy(n, M0, M1, Minf, float(np.max(np.abs(prod - eye))), form, v, fit)


def _reflection_vector(S: np.ndarray, F: np.ndarray):
    """``v`` with ``S x = x - (x, v) v`` where ``(x, y) = x^t F y``."""
    U_, sv, Vh = np.linalg.svd(S - np.eye(S.shape[0]))
    a = U_[:, 0] * sv[0]
    b = Vh[0]
    # S - I = a b^t must equal -v (F v)^t with v = c a
    Fa = F @ a
    k = int(np.argmax(np.abs(Fa)))
    c2 = -b[k] / Fa[k]
    v = np.sqrt(c2) * a
    fit = float(np.max(np.abs((S - np.eye(S.shape[0])) + np.outer(v, F @ v))))
    return v, fit


def det_series(M: np.ndarray, order: int) -> np.ndarray:
    """Coefficients of ``det(1 - t M)`` up to ``t^order`` (Newton identities)."""
    m = M.shape[0]
    p = [np.trace(_mpow(M, k)) for k in range(1, m + 1)]
    e = [1.0 + 0j]
    for k in range(1, m + 1):
        e.append(sum((-1) ** (i - 1) * e[k - i] * p[i - 1] for i in range(1, k + 1)) / k)
    c = np.zeros(order + 1, dtype=complex)
    for k in range(min(order, m) + 1):
        c[k] = (-1) ** k * e[k]
    return c


def _series_divide(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    q = np.zeros_like(a)
    for k in range(len(a)):
        q[k] = (a[k] - sum(q[i] * b[k - i] for i in range(k))) / b[0]
    return q


def brackets(U, v, F, kmax: int) -> np.ndarray:
    """``(U^k v, v) = (U^k v)^t F v`` for k = 0..kmax."""
    out = []
    w = np.asarray(v, dtype=complex)
    Fv = F @ v
    for _ in range(kmax + 1):
        out.append(w @ Fv)
        w = U @ w
    return np.array(out)


def rrv_check(U, S, v, form, order: int, tol: float = 1e-8):
    """Compare ``det(1 - tUS)/det(1 - tU)`` with ``1 + sum (U^i v, v) t^i``.

    Returns ``(ok, residual)``."""
    U = np.asarray(U, dtype=complex)
    S = np.asarray(S, dtype=complex)
    F = np.asarray(form.G if isinstance(form, PolarizationForm) else form, dtype=complex)
    lhs = _series_divide(det_series(U @ S, order), det_series(U, order))
    br = brackets(U, v, F, order)
    rhs = np.concatenate([[1.0], br[1:]])
    residual = float(np.max(np.abs(lhs - rhs)))
    return residual <= tol, residual


def expected_brackets(n: int) -> list:
    """Coefficients of ``(1 - t)^(n+1) / (1 - t^(n+1))`` for t^1..t^n."""
    return [(-1) ** k * comb(n + 1, k) for k in range(1, n + 1)]
