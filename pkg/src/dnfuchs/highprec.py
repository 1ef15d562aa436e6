"""Double-double matrices and Taylor-series transport of the resolvent system.

Monodromy generators of DN connections can have conjugation-invariant
quantities (traces of pairwise products) of size 1e9 and beyond, so checking
relations between them needs more than 16 digits. This module carries about
32 digits through the transport and the matrix algebra.

The compiled kernel is used when present; ``DNFUCHS_PURE_PYTHON=1`` selects
the mpmath fallback.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _dd_py
from .errors import NearSingularity
from .ode import Arc, Path
from .rational import GaussRat

BACKEND = "python"
_impl = _dd_py
if os.environ.get("DNFUCHS_PURE_PYTHON") != "1":
    try:
        from . import _ddtaylor as _compiled
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        _impl = _compiled
        BACKEND = "cython"

STEP_RATIO = 0.35
SERIES_EPS = 1e-32

__all__ = ["DDMatrix", "taylor_points", "transport", "BACKEND", "implementation", "cdd_mul", "cdd_div",
           "kron", "null_space", "numerical_rank"]


def implementation(backend: str | None = None):
    if backend is None:
        return _impl
    if backend == "python":
        return _dd_py
    if backend == "cython":
        from . import _ddtaylor

        return _ddtaylor
    raise ValueError(f"unknown backend {backend!r}")


def _split(x: Fraction):
    hi = float(x)
    return hi, float(x - Fraction(hi))


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _dd_add(ahi, alo, bhi, blo):
    """Elementwise double-double sum of real arrays (error-free transforms)."""
    s, e = _two_sum(ahi, bhi)
    t, f = _two_sum(alo, blo)
    s, e = _quick_two_sum(s, e + t)
    return _quick_two_sum(s, e + f)


@dataclass(frozen=True)
class DDMatrix:
    """Complex matrix stored as ``hi + lo``."""

    hi: np.ndarray
    lo: np.ndarray

    @classmethod
    def from_complex(cls, M) -> "DDMatrix":
        M = np.asarray(M, dtype=complex)
        return cls(M.copy(), np.zeros_like(M))

    @classmethod
    def from_exact(cls, rows) -> "DDMatrix":
        m, k = len(rows), len(rows[0])
        hi = np.zeros((m, k), dtype=complex)
        lo = np.zeros((m, k), dtype=complex)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if isinstance(x, GaussRat):
                    re, im = x.re, x.im
                elif isinstance(x, (int, Fraction)):
                    re, im = Fraction(x), Fraction(0)
                else:
                    z = complex(x)
                    hi[i, j] = z
                    continue
                rh, rl = _split(re)
                ih, il = _split(im)
                hi[i, j] = complex(rh, ih)
                lo[i, j] = complex(rl, il)
        return cls(hi, lo)

    @classmethod
    def eye(cls, m: int) -> "DDMatrix":
        return cls.from_complex(np.eye(m))

    @property
    def shape(self):
        return self.hi.shape

    @property
    def approx(self) -> np.ndarray:
        return self.hi + self.lo

    def __matmul__(self, other: "DDMatrix") -> "DDMatrix":
        return DDMatrix(*_impl.dd_matmul(self.hi, self.lo, other.hi, other.lo))

    def __neg__(self) -> "DDMatrix":
        return DDMatrix(-self.hi, -self.lo)

    def __add__(self, other: "DDMatrix") -> "DDMatrix":
        re_hi, re_lo = _dd_add(self.hi.real, self.lo.real, other.hi.real, other.lo.real)
        im_hi, im_lo = _dd_add(self.hi.imag, self.lo.imag, other.hi.imag, other.lo.imag)
        return DDMatrix(re_hi + 1j * im_hi, re_lo + 1j * im_lo)

    def __sub__(self, other: "DDMatrix") -> "DDMatrix":
        return self + (-other)

    def solve(self, rhs: "DDMatrix") -> "DDMatrix":
        return DDMatrix(*_impl.dd_solve(self.hi, self.lo, rhs.hi, rhs.lo))

    def inverse(self) -> "DDMatrix":
        return self.solve(DDMatrix.eye(self.shape[0]))

    def block(self, rows: slice, cols: slice) -> "DDMatrix":
        return DDMatrix(self.hi[rows, cols].copy(), self.lo[rows, cols].copy())

    @property
    def T(self) -> "DDMatrix":
        return DDMatrix(self.hi.T.copy(), self.lo.T.copy())

    def power(self, k: int) -> "DDMatrix":
        out = DDMatrix.eye(self.shape[0])
        for _ in range(k):
            out = out @ self
        return out

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.approx))) if self.hi.size else 0.0

    def trace(self) -> complex:
        """Trace summed in double-double, rounded to complex."""
        acc = DDMatrix.from_complex(np.zeros(1))
        for k in range(min(self.shape)):
            acc = acc + DDMatrix(self.hi[k, k:k + 1], self.lo[k, k:k + 1])
        return complex(acc.approx[0])

    def scale(self, c: complex) -> "DDMatrix":
        """Product with the double scalar ``c``."""
        return cdd_mul(self, DDMatrix.from_complex(np.full((1, 1), c)))


def taylor_points(path: Path, singularities, ratio: float = STEP_RATIO) -> np.ndarray:
    """Polygon through ``path`` whose every chord has length at most
    ``ratio`` times the distance from its start to the nearest singularity."""
    sing = np.asarray(singularities, dtype=complex)
    pts = []
    pieces = path.pieces
    for idx, piece in enumerate(pieces):
        end = pieces[idx + 1].start if idx + 1 < len(pieces) else piece.end
        s = 0.0
        z = piece.start
        while True:
            pts.append(z)
            R = float(np.min(np.abs(sing - z))) if sing.size else math.inf
            if R == 0.0:
                raise NearSingularity(f"path passes through a singular point near {z}")
            L = ratio * R
            if isinstance(piece, Arc):
                ds = L / (piece.radius * abs(piece.theta1 - piece.theta0))
            else:
                ds = L / max(abs(piece.end - piece.start), 1e-300)
            s = s + ds
            if s >= 1.0:
                break
            z = piece.point(s)
        if idx + 1 == len(pieces):
            pts.append(end)
    return np.array(pts, dtype=complex)


def transport(A: DDMatrix, path: Path, singularities, Phi0: DDMatrix | None = None,
              backend: str | None = None):
    """Continue the fundamental solution of ``dPhi/dt = T (A - t)^-1 Phi`` along
    ``path``; returns ``(DDMatrix, steps, max_terms)``."""
    impl = implementation(backend)
    m = A.shape[0]
    start = Phi0 if Phi0 is not None else DDMatrix.eye(m)
    pts = taylor_points(path, singularities)
    hi, lo, steps, used, status = impl.taylor_transport(A.hi, A.lo, pts, start.hi, start.lo, SERIES_EPS)
    if status == 1:
        raise NearSingularity("path hits a singular point")
    if status == 2:
        raise NearSingularity("Taylor series did not converge; step too long")
    return DDMatrix(hi, lo), steps, used


# ---------------------------------------------------------------- vectorized dd arithmetic

_SPLITTER = 134217729.0  # 2^27 + 1


def _split_real(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split_real(a)
    bh, bl = _split_real(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_mul(ahi, alo, bhi, blo):
    p, e = _two_prod(ahi, bhi)
    return _quick_two_sum(p, e + (ahi * blo + alo * bhi))


def _cdd_parts(z):
    return z.hi.real, z.lo.real, z.hi.imag, z.lo.imag


def cdd_mul(a: DDMatrix, b: DDMatrix) -> DDMatrix:
    """Elementwise (broadcasting) double-double complex product."""
    ar, arl, ai, ail = _cdd_parts(a)
    br, brl, bi, bil = _cdd_parts(b)
    rr = _dd_add(*_dd_mul(ar, arl, br, brl), *(-x for x in _dd_mul(ai, ail, bi, bil)))
    ii = _dd_add(*_dd_mul(ar, arl, bi, bil), *_dd_mul(ai, ail, br, brl))
    return DDMatrix(rr[0] + 1j * ii[0], rr[1] + 1j * ii[1])


def cdd_div(a: DDMatrix, b: DDMatrix) -> DDMatrix:
    """Elementwise quotient: a double estimate refined by one Newton step."""
    q = DDMatrix.from_complex(a.approx / b.approx)
    r = a - cdd_mul(q, b)
    return q + DDMatrix.from_complex(r.approx / b.approx)


def kron(a: DDMatrix, b: DDMatrix) -> DDMatrix:
    m, n = a.shape
    p, q = b.shape
    A = DDMatrix(a.hi[:, None, :, None] * np.ones((1, p, 1, q)), a.lo[:, None, :, None] * np.ones((1, p, 1, q)))
    B = DDMatrix(np.broadcast_to(b.hi[None, :, None, :], (m, p, n, q)).copy(),
                 np.broadcast_to(b.lo[None, :, None, :], (m, p, n, q)).copy())
    out = cdd_mul(A, B)
    return DDMatrix(out.hi.reshape(m * p, n * q), out.lo.reshape(m * p, n * q))


MIN_PIVOT_GAP = 1e6


def _eliminate(K: DDMatrix):
    """Gaussian elimination with complete pivoting, run until the remaining
    block is exactly zero. Returns ``(hi, lo, column permutation, pivots)``."""
    hi, lo = K.hi.copy(), K.lo.copy()
    rows, cols = hi.shape
    perm = list(range(cols))
    pivots = []
    for k in range(min(rows, cols)):
        sub = np.abs(hi[k:, k:])
        r, c = np.unravel_index(int(np.argmax(sub)), sub.shape)
        piv = float(sub[r, c])
        if piv == 0.0:
            break
        pivots.append(piv)
        r += k
        c += k
        hi[[k, r]] = hi[[r, k]]
        lo[[k, r]] = lo[[r, k]]
        hi[:, [k, c]] = hi[:, [c, k]]
        lo[:, [k, c]] = lo[:, [c, k]]
        perm[k], perm[c] = perm[c], perm[k]
        pivot = DDMatrix(hi[k:k + 1, k:k + 1], lo[k:k + 1, k:k + 1])
        below = DDMatrix(hi[k + 1:, k:k + 1], lo[k + 1:, k:k + 1])
        factors = cdd_div(below, pivot)
        row = DDMatrix(hi[k:k + 1, k:], lo[k:k + 1, k:])
        upd = DDMatrix(hi[k + 1:, k:], lo[k + 1:, k:]) - cdd_mul(factors, row)
        hi[k + 1:, k:], lo[k + 1:, k:] = upd.hi, upd.lo
    return hi, lo, perm, pivots


def numerical_rank(pivots, scale: float, rel_tol: float, min_gap: float = MIN_PIVOT_GAP):
    """Rank read off a pivot sequence: the split at the largest drop
    ``p_k / p_(k+1) >= min_gap`` whose lower side is below ``rel_tol * scale``
    (the scale acts as a virtual leading pivot). Returns ``(rank, gap)``;
    ``gap`` is ``inf`` when no pivot was dropped."""
    rel = [1.0] + [p / scale for p in pivots]
    best = None
    for k in range(len(rel) - 1):
        if rel[k + 1] <= rel_tol:
            ratio = rel[k] / rel[k + 1]
            if ratio >= min_gap and (best is None or ratio > best[0]):
                best = (ratio, k)
    if best is None:
        return len(pivots), math.inf
    return best[1], best[0]


def null_space(K: DDMatrix, rel_tol: float, min_gap: float = MIN_PIVOT_GAP):
    """Null space of ``K`` by complete-pivoting elimination in double-double.

    Returns ``(basis columns as DDMatrix or None, relative pivots, gap)``,
    with the rank chosen by ``numerical_rank``."""
    hi, lo, perm, pivots = _eliminate(K)
    cols = hi.shape[1]
    scale = max(1.0, float(np.max(np.abs(K.approx)))) if K.hi.size else 1.0
    rank, gap = numerical_rank(pivots, scale, rel_tol, min_gap)
    rel = [p / scale for p in pivots]
    free = cols - rank
    if free == 0:
        return None, rel, gap
    basis_hi = np.zeros((cols, free), dtype=complex)
    basis_lo = np.zeros((cols, free), dtype=complex)
    zero = DDMatrix.from_complex(np.zeros((1, 1)))
    for f in range(free):
        x = [zero] * cols
        x[rank + f] = DDMatrix.from_complex(np.ones((1, 1)))
        for i in range(rank - 1, -1, -1):
            acc = zero
            for j in range(i + 1, cols):
                if x[j].hi[0, 0] != 0:
                    acc = acc + cdd_mul(DDMatrix(hi[i:i + 1, j:j + 1], lo[i:i + 1, j:j + 1]), x[j])
            x[i] = cdd_div(-acc, DDMatrix(hi[i:i + 1, i:i + 1], lo[i:i + 1, i:i + 1]))
        for i in range(cols):
            basis_hi[perm[i], f] = x[i].hi[0, 0]
            basis_lo[perm[i], f] = x[i].lo[0, 0]
    return DDMatrix(basis_hi, basis_lo), rel, gap
