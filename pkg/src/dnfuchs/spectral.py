"""Spectral data of the connection ``dPhi/dt = T (A - t)^-1 Phi``.

Eigenvalues come from the characteristic polynomial (Aberth-Ehrlich), and
eigenvectors from back-substitution along the unit subdiagonal followed by
inverse iteration. The last coordinate of every eigenvector of a DN matrix
is nonzero, so it is fixed to 1 before normalization.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dn import DNMatrix
from .errors import (
    DegenerateSpectrum,
    MalformedMatrix,
    NearSingularity,
    NullVector,
    TruncationTooSmall,
)
from .poly import Poly
from .roots import aberth

__all__ = [
    "ConnectionSpectrum",
    "TruncatedSeriesMatrix",
    "NilpotencyCertificate",
    "FirstModelConnection",
    "T_matrix",
    "J_matrix",
    "char_poly",
    "eigendecompose",
    "normalize_basis",
    "residue_matrices",
    "analyze_spectrum",
    "residue_structure_errors",
    "connection_rhs",
    "partial_fraction_rhs",
    "first_model_connection",
    "infinity_exponents",
]

DEFAULT_TOL = 1e-10


def T_matrix(n: int, dtype=complex) -> np.ndarray:
    return np.diag(np.arange(n + 1)).astype(dtype)


def J_matrix(n: int, dtype=complex) -> np.ndarray:
    return np.fliplr(np.eye(n + 1)).astype(dtype)


def _as_array(A) -> np.ndarray:
    if isinstance(A, DNMatrix):
        return A.to_numpy()
    arr = np.asarray(A, dtype=complex)
    m = arr.shape[0]
    if arr.shape != (m, m):
        raise MalformedMatrix("matrix must be square")
    for i in range(m):
        for j in range(m):
            if i == j + 1 and arr[i, j] != 1:
                raise MalformedMatrix("DN matrix needs ones on the subdiagonal")
            if i > j + 1 and arr[i, j] != 0:
                raise MalformedMatrix("DN matrix must vanish below the subdiagonal")
    return arr


def char_poly(A) -> Poly:
    """``det(t - A)`` via the principal-minor recursion of the almost
    triangular matrix ``t - A``; exact when ``A`` is an exact DNMatrix."""
    if isinstance(A, DNMatrix) and A.exact:
        entry = lambda i, j: A[i, j]  # noqa: E731
        m = A.size
    else:
        arr = _as_array(A)
        entry = lambda i, j: complex(arr[i, j])  # noqa: E731
        m = arr.shape[0]
    P = [Poly((1,))]
    for j in range(m):
        acc = P[j] * Poly((-entry(j, j), 1))
        for i in range(j):
            a = entry(i, j)
            if a != 0:
                acc = acc - P[i] * a
        P.append(acc)
    return P[-1]


@dataclass
class ConnectionSpectrum:
    A: np.ndarray
    lambdas: np.ndarray
    C: np.ndarray
    T: np.ndarray
    J: np.ndarray
    S: list | None = None
    normalized: bool = False
    diagnostics: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.A.shape[0] - 1

    def to_json(self) -> dict:
        out = {
            "eigenvalues": [[complex(l).real, complex(l).imag] for l in self.lambdas],
            "C": _cmat_json(self.C),
            "normalized": self.normalized,
            "diagnostics": self.diagnostics,
        }
        if self.S is not None:
            out["residue_matrices"] = [
                {
                    "trace": _c_json(np.trace(S)),
                    "singular_values": [float(s) for s in np.linalg.svd(S, compute_uv=False)],
                    "rank": int(_numeric_rank(S)),
                    "eigenvalues": [_c_json(v) for v in _sorted_eigs(S)],
                }
                for S in self.S
            ]
        return out


def _c_json(z):
    z = complex(z)
    return [z.real, z.imag]


def _cmat_json(M):
    return [[_c_json(x) for x in row] for row in np.asarray(M)]


def _sorted_eigs(S):
    ev = np.linalg.eigvals(S)
    return sorted(ev, key=lambda z: (round(z.real, 9), round(z.imag, 9)))


def _numeric_rank(S, rtol=1e-9):
    sv = np.linalg.svd(S, compute_uv=False)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > rtol * sv[0]))


def _sort_key(z):
    return (round(z.real, 12), round(z.imag, 12))


def _eigvec(A: np.ndarray, lam: complex, steps: int = 2) -> np.ndarray:
    m = A.shape[0]
    v = np.zeros(m, dtype=complex)
    v[m - 1] = 1.0
    # row i (i >= 1):  v[i-1] + sum_{j>=i} a_ij v_j = lam v_i
    for i in range(m - 1, 0, -1):
        v[i - 1] = lam * v[i] - A[i, i:] @ v[i:]
    v /= v[m - 1]
    scale = max(1.0, np.max(np.abs(A)))
    shift = lam + 1e-14 * scale
    for _ in range(steps):
        try:
            w = np.linalg.solve(A - shift * np.eye(m), v)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(w)) or w[m - 1] == 0:
            break
        v = w / w[m - 1]
    return v


def eigendecompose(A, tol: float = DEFAULT_TOL) -> ConnectionSpectrum:
    """Distinct eigenvalues and eigenvectors (last coordinate 1)."""
    arr = _as_array(A)
    n = arr.shape[0] - 1
    chi = char_poly(A)
    if isinstance(A, DNMatrix) and A.exact and chi.degree > 0:
        if chi.gcd(chi.derivative()).degree > 0:
            raise DegenerateSpectrum("characteristic polynomial has a repeated root")
    lambdas = np.array(sorted(aberth(chi.coeffs), key=_sort_key), dtype=complex)
    if len(lambdas) > 1:
        gaps = np.abs(lambdas[:, None] - lambdas[None, :])
        np.fill_diagonal(gaps, np.inf)
        gap = float(gaps.min())
        if gap <= tol * max(1.0, float(np.max(np.abs(lambdas)))):
            raise DegenerateSpectrum(f"eigenvalues coincide within {gap:.3e}")
    else:
        gap = float("inf")
    C = np.column_stack([_eigvec(arr, lam) for lam in lambdas])
    residual = float(np.max(np.abs(arr @ C - C * lambdas[None, :])))
    return ConnectionSpectrum(
        A=arr,
        lambdas=lambdas,
        C=C,
        T=T_matrix(n),
        J=J_matrix(n),
        diagnostics={"min_gap": gap, "eigen_residual": residual},
    )


def normalize_basis(spec: ConnectionSpectrum, tol: float = DEFAULT_TOL) -> ConnectionSpectrum:
    """Scale columns so that ``u_j^t J u_j = 1`` (principal square root)."""
    C = spec.C.copy()
    J = spec.J
    for j in range(C.shape[1]):
        u = C[:, j]
        d = u @ J @ u
        if abs(d) <= tol * max(1.0, float(np.vdot(u, u).real)):
            raise NullVector(f"column {j} is isotropic: u^t J u = {d}")
        C[:, j] = u / np.sqrt(d)
    gram = C.T @ J @ C
    diag = dict(spec.diagnostics)
    diag["orthogonality_residual"] = float(np.max(np.abs(gram - np.eye(C.shape[0]))))
    return ConnectionSpectrum(spec.A, spec.lambdas, C, spec.T, spec.J, spec.S, True, diag)


def residue_matrices(spec: ConnectionSpectrum) -> ConnectionSpectrum:
    """``S_j = -T C E_j C^-1`` for every eigenvalue."""
    Cinv = np.linalg.inv(spec.C)
    S = [-spec.T @ np.outer(spec.C[:, j], Cinv[j, :]) for j in range(spec.C.shape[1])]
    return ConnectionSpectrum(spec.A, spec.lambdas, spec.C, spec.T, spec.J, S, spec.normalized, dict(spec.diagnostics))


def residue_structure_errors(spec: ConnectionSpectrum) -> dict:
    """Worst deviations of the ``S_j`` from their predicted structure.

    ``trace``: ``|tr S_j + n/2|``; ``rank_ratio``: second over first
    singular value; ``kernel``: ``|S_j u_i| / (|S_j| |u_i|)`` for i != j;
    ``eigen``: ``|S_j T u_j + (n/2) T u_j| / |T u_j|``."""
    if spec.S is None:
        spec = residue_matrices(spec)
    n = spec.n
    C, T = spec.C, spec.T
    out = {"trace": 0.0, "rank_ratio": 0.0, "kernel": 0.0, "eigen": 0.0}
    for j, S in enumerate(spec.S):
        out["trace"] = max(out["trace"], abs(np.trace(S) + n / 2))
        sv = np.linalg.svd(S, compute_uv=False)
        if len(sv) > 1:
            out["rank_ratio"] = max(out["rank_ratio"], float(sv[1] / sv[0]))
        nS = float(np.linalg.norm(S, 2))
        for i in range(C.shape[1]):
            u = C[:, i]
            if i != j:
                out["kernel"] = max(out["kernel"], float(np.linalg.norm(S @ u)) / (nS * float(np.linalg.norm(u))))
        w = T @ C[:, j]
        out["eigen"] = max(out["eigen"], float(np.linalg.norm(S @ w + (n / 2) * w) / np.linalg.norm(w)))
    return out


def analyze_spectrum(A, tol: float = DEFAULT_TOL) -> ConnectionSpectrum:
    return residue_matrices(normalize_basis(eigendecompose(A, tol), tol))


def connection_rhs(A, t: complex, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``T (A - t)^-1``; raises NearSingularity close to an eigenvalue."""
    if isinstance(A, ConnectionSpectrum):
        lam = A.lambdas
        arr = A.A
        if np.min(np.abs(lam - t)) <= tol:
            raise NearSingularity(f"t = {t} within {tol} of an eigenvalue")
    else:
        arr = _as_array(A)
        smin = np.linalg.svd(arr - t * np.eye(arr.shape[0]), compute_uv=False)[-1]
        if smin <= tol:
            raise NearSingularity(f"A - t is numerically singular at t = {t}")
    n = arr.shape[0] - 1
    return T_matrix(n) @ np.linalg.inv(arr - t * np.eye(n + 1))


def partial_fraction_rhs(spec: ConnectionSpectrum, t: complex) -> np.ndarray:
    """``sum_j S_j / (t - lambda_j)``."""
    if spec.S is None:
        spec = residue_matrices(spec)
    return sum(S / (t - lam) for S, lam in zip(spec.S, spec.lambdas))


@dataclass(frozen=True)
class FirstModelConnection:
    """The matrix-valued rational function ``A - (I + T)/z``."""

    constant: np.ndarray
    residue: np.ndarray

    def __call__(self, z: complex) -> np.ndarray:
        return self.constant + self.residue / z


def first_model_connection(A) -> FirstModelConnection:
    arr = _as_array(A)
    n = arr.shape[0] - 1
    return FirstModelConnection(arr, -(np.eye(n + 1) + T_matrix(n)))


# ---------------------------------------------------------------- shearing at infinity


class TruncatedSeriesMatrix:
    """Matrix Laurent series ``sum_k coeffs[k] x^(valuation + k) + O(x^order)``."""

    def __init__(self, coeffs, valuation: int, order: int):
        self.coeffs = list(coeffs)
        self.valuation = valuation
        self.order = order
        if valuation + len(self.coeffs) < order:
            raise ValueError("not enough coefficients for the stated order")
        self.coeffs = self.coeffs[: order - valuation]

    @property
    def shape(self):
        return self.coeffs[0].shape

    def coefficient(self, m: int):
        if m >= self.order:
            raise TruncationTooSmall(f"x^{m} lies beyond the truncation order {self.order}")
        if m < self.valuation:
            return _zeros_like(self.coeffs[0])
        return self.coeffs[m - self.valuation]

    @classmethod
    def geometric(cls, T, A, order: int) -> "TruncatedSeriesMatrix":
        """``T (I - A x)^-1 = T sum_k A^k x^k`` up to ``x^order``."""
        m = A.shape[0]
        power = _eye_like(A, m)
        coeffs = []
        for _ in range(order):
            coeffs.append(T @ power)
            power = power @ A
        return cls(coeffs, 0, order)

    def gauge(self, exponents) -> "TruncatedSeriesMatrix":
        """``G_[H] = (DH) H^-1 + H G H^-1`` with ``H = diag(x^e_i)``."""
        e = list(exponents)
        m = len(e)
        shifts = [[e[i] - e[j] for j in range(m)] for i in range(m)]
        lo = min(min(r) for r in shifts)
        new_val = self.valuation + lo
        new_order = self.order + lo
        count = new_order - new_val
        template = self.coeffs[0]
        out = [_zeros_like(template) for _ in range(count)]
        for k, Ck in enumerate(self.coeffs):
            deg = self.valuation + k
            for i in range(m):
                for j in range(m):
                    d = deg + shifts[i][j]
                    if d < new_order:
                        out[d - new_val][i, j] = out[d - new_val][i, j] + Ck[i, j]
        if new_val <= 0 < new_order:
            D = out[-new_val]
            for i in range(m):
                D[i, i] = D[i, i] + e[i]
        return TruncatedSeriesMatrix(out, new_val, new_order)


def _zeros_like(M):
    if M.dtype == object:
        return np.array([[0] * M.shape[1] for _ in range(M.shape[0])], dtype=object)
    return np.zeros_like(M)


def _eye_like(M, m):
    if M.dtype == object:
        return np.array([[int(i == j) for j in range(m)] for i in range(m)], dtype=object)
    return np.eye(m, dtype=M.dtype)


@dataclass
class NilpotencyCertificate:
    N: np.ndarray
    index: int | None
    exact: bool
    G0: np.ndarray
    power_norms: list
    negative_part_zero: bool

    @property
    def n(self) -> int:
        return self.N.shape[0] - 1

    @property
    def maximal(self) -> bool:
        return self.index == self.n + 1

    def to_json(self) -> dict:
        def entry(x):
            if self.exact:
                return str(x)
            return _c_json(x)
        return {
            "N": [[entry(x) for x in row] for row in self.N],
            "nilpotency_index": self.index,
            "maximal": self.maximal,
            "exact": self.exact,
            "power_norms": self.power_norms,
            "G0_is_T": bool(np.all(np.diag(self.G0) == np.arange(self.n + 1))),
        }


def infinity_exponents(A, truncation: int | None = None, tol: float = DEFAULT_TOL) -> NilpotencyCertificate:
    """Shear ``G = T (I - A x)^-1`` (x = 1/t) by ``H = diag(1, x^-1, ..., x^-n)``
    and certify that ``G_[H](0)`` is nilpotent of index exactly n+1."""
    if isinstance(A, DNMatrix) and A.exact:
        arr = np.array(A.rows(), dtype=object)
        n = A.n
        T = np.array([[i if i == j else 0 for j in range(n + 1)] for i in range(n + 1)], dtype=object)
        exact = True
    else:
        arr = _as_array(A)
        n = arr.shape[0] - 1
        T = T_matrix(n)
        exact = False
    if truncation is None:
        truncation = n + 2
    if truncation < n + 2:
        raise TruncationTooSmall(f"truncation {truncation} < n + 2 = {n + 2}")
    G = TruncatedSeriesMatrix.geometric(T, arr, truncation)
    G0 = G.coefficient(0)
    GH = G.gauge([-i for i in range(n + 1)])
    neg_zero = True
    for m in range(GH.valuation, 0):
        block = GH.coefficient(m)
        if exact:
            neg_zero &= all(x == 0 for x in block.flat)
        else:
            neg_zero &= bool(np.max(np.abs(block)) <= tol)
    N = GH.coefficient(0)
    norms = []
    power = _eye_like(N, n + 1)
    index = None
    for k in range(1, n + 2):
        power = power @ N
        if exact:
            zero = all(x == 0 for x in power.flat)
            norms.append(float(max(abs(complex(x)) for x in power.flat)))
        else:
            mag = float(np.max(np.abs(power)))
            norms.append(mag)
            zero = mag <= tol * max(1.0, float(np.max(np.abs(N)))) ** k
        if zero and index is None:
            index = k
    return NilpotencyCertificate(N, index, exact, G0, norms, neg_zero)
