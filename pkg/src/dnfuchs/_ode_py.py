"""Pure numpy Dormand-Prince 5(4) integrator (fallback for the compiled kernel).

The system is ``dPhi/ds = t'(s) F(t(s)) Phi`` along consecutive path pieces,
each parametrized by ``s in [0, 1]``. ``pieces`` is a float array of rows

    (0, re z0, im z0, re z1, im z1, 0)          straight segment z0 -> z1
    (1, re c, im c, r, theta0, theta1)           arc c + r exp(i theta)

``mode`` selects the coefficient matrix:

    0  F(t) = T (A - t)^-1 with T = diag(0, 1, ..., m-1)
    1  F(t) = sum_k R[k] / (t - poles[k])

Returns ``(Phi_end, accepted, rejected, status)`` with status 0 on success,
1 when the step size underflows, 2 when the step budget runs out and 3 on a
singular linear solve.
"""
from __future__ import annotations

import numpy as np

_C = (1 / 5, 3 / 10, 4 / 5, 8 / 9)
_A = (
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
)
_B = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84)
_BSTAR = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)
_E = tuple(b - bs for b, bs in zip(_B + (0.0,), _BSTAR))

MIN_STEP = 1e-14


def piece_eval(pc, s: float):
    if pc[0] == 0.0:
        z0 = complex(pc[1], pc[2])
        z1 = complex(pc[3], pc[4])
        return z0 + s * (z1 - z0), z1 - z0
    ctr = complex(pc[1], pc[2])
    ang = pc[4] + s * (pc[5] - pc[4])
    e = np.exp(1j * ang)
    return ctr + pc[3] * e, 1j * (pc[5] - pc[4]) * pc[3] * e


class _Rhs:
    def __init__(self, mode, A, R, poles, m):
        self.mode = mode
        self.A = np.asarray(A, dtype=complex)
        self.R = np.asarray(R, dtype=complex)
        self.poles = np.asarray(poles, dtype=complex)
        self.scale = np.arange(m, dtype=float)[:, None]
        self.eye = np.eye(m)

    def __call__(self, t, dt, y):
        if self.mode == 0:
            try:
                sol = np.linalg.solve(self.A - t * self.eye, y)
            except np.linalg.LinAlgError:
                return None
            return (dt * self.scale) * sol
        out = np.zeros_like(y)
        for Rk, pk in zip(self.R, self.poles):
            out += (dt / (t - pk)) * (Rk @ y)
        return out


def integrate_pieces(mode, A, R, poles, pieces, Phi0, tol, h0=0.05, max_steps=2_000_000):
    y = np.array(Phi0, dtype=complex, copy=True)
    m = y.shape[0]
    f = _Rhs(mode, A, R, poles, m)
    accepted = rejected = 0
    status = 0
    for pc in np.asarray(pieces, dtype=float):
        s = 0.0
        h = h0
        k1 = None
        while s < 1.0:
            if accepted + rejected >= max_steps:
                status = 2
                break
            if h < MIN_STEP:
                status = 1
                break
            h = min(h, 1.0 - s)
            if k1 is None:
                k1 = f(*piece_eval(pc, s), y)
                if k1 is None:
                    status = 3
                    break
            ks = [k1]
            for stage, row in enumerate(_A):
                node = _C[stage] if stage < 4 else 1.0
                ys = y + h * sum(a * k for a, k in zip(row, ks))
                k = f(*piece_eval(pc, s + node * h), ys)
                if k is None:
                    break
                ks.append(k)
            if len(ks) < 6:
                status = 3
                break
            t_end, dt_end = piece_eval(pc, s + h)
            yn = y + h * sum(b * k for b, k in zip(_B, ks) if b)
            k7 = f(t_end, dt_end, yn)
            if k7 is None:
                status = 3
                break
            ks.append(k7)
            delta = h * sum(e * k for e, k in zip(_E, ks) if e)
            scale = tol + tol * np.maximum(np.abs(y), np.abs(yn))
            err = float(np.max(np.abs(delta) / scale))
            if err <= 1.0:
                s += h
                accepted += 1
                y = yn
                k1 = k7
            else:
                rejected += 1
            fac = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
            h *= fac
        if status:
            break
    return y, accepted, rejected, status
