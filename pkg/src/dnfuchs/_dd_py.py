"""mpmath fallback for the double-double kernel (same API as ``_ddtaylor``).

Values travel as ``(hi, lo)`` pairs of complex128 arrays; internally they are
lifted to mpmath at 34 decimal digits, which is at least double-double
accuracy.
"""
from __future__ import annotations

import mpmath
import numpy as np

_DPS = 34


def _lift(hi, lo):
    hi = np.atleast_2d(np.asarray(hi, dtype=complex))
    lo = np.atleast_2d(np.asarray(lo, dtype=complex))
    M = mpmath.matrix(hi.shape[0], hi.shape[1])
    for i in range(hi.shape[0]):
        for j in range(hi.shape[1]):
            h, l = hi[i, j], lo[i, j]
            M[i, j] = mpmath.mpc(mpmath.mpf(h.real) + mpmath.mpf(l.real), mpmath.mpf(h.imag) + mpmath.mpf(l.imag))
    return M


def _drop(M):
    rows, cols = M.rows, M.cols
    hi = np.empty((rows, cols), dtype=complex)
    lo = np.empty((rows, cols), dtype=complex)
    for i in range(rows):
        for j in range(cols):
            z = M[i, j]
            hr, hm = float(z.real), float(z.imag)
            hi[i, j] = complex(hr, hm)
            lo[i, j] = complex(float(z.real - hr), float(z.imag - hm))
    return hi, lo


def dd_matmul(Ahi, Alo, Bhi, Blo):
    with mpmath.workdps(_DPS):
        return _drop(_lift(Ahi, Alo) * _lift(Bhi, Blo))


def dd_solve(Ahi, Alo, Bhi, Blo):
    with mpmath.workdps(_DPS):
        return _drop(mpmath.inverse(_lift(Ahi, Alo)) * _lift(Bhi, Blo))


def taylor_transport(Ahi, Alo, points, Phi_hi, Phi_lo, eps=1e-32, max_terms=400):
    pts = np.asarray(points, dtype=complex)
    with mpmath.workdps(_DPS):
        A = _lift(Ahi, Alo)
        Y = _lift(Phi_hi, Phi_lo)
        m = A.rows
        used = 0
        for step in range(len(pts) - 1):
            t0 = mpmath.mpc(pts[step].real, pts[step].imag)
            h = mpmath.mpc(pts[step + 1].real, pts[step + 1].imag) - t0
            B = A - t0 * mpmath.eye(m)
            try:
                Binv = mpmath.inverse(B)
            except ZeroDivisionError:
                return (*_drop(Y), step, used, 1)
            ymax = max(abs(Y[i, j]) for i in range(m) for j in range(m))
            psi = Y.copy()
            acc = Y.copy()
            eta = mpmath.zeros(m, m)
            small = 0
            k = 0
            while k < max_terms:
                eta = h * (Binv * (psi + eta))
                psi = mpmath.matrix([[eta[i, j] * i / (k + 1) for j in range(m)] for i in range(m)])
                acc += psi
                k += 1
                scale = max(abs(psi[i, j]) for i in range(m) for j in range(m))
                if scale <= eps * ymax:
                    small += 1
                    if small >= 3:
                        break
                else:
                    small = 0
            used = max(used, k)
            if k >= max_terms:
                return (*_drop(acc), step, used, 2)
            Y = acc
        return (*_drop(Y), len(pts) - 1, used, 0)
