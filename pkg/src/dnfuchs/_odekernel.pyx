# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Dormand-Prince 5(4) integrator for ``dPhi/ds = t'(s) F(t(s)) Phi``.

Mirror of ``_ode_py.integrate_pieces``; see that module for the argument
conventions. All state lives in C buffers, one allocation per call.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, sqrt, pow
from libc.stdlib cimport malloc, free

ctypedef double complex cplx

cdef double C2 = 1.0 / 5.0, C3 = 3.0 / 10.0, C4 = 4.0 / 5.0, C5 = 8.0 / 9.0
cdef double A21 = 1.0 / 5.0
cdef double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0
cdef double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0
cdef double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0, A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0
cdef double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0, A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0
cdef double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0, B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0
cdef double E1 = 35.0 / 384.0 - 5179.0 / 57600.0
cdef double E3 = 500.0 / 1113.0 - 7571.0 / 16695.0
cdef double E4 = 125.0 / 192.0 - 393.0 / 640.0
cdef double E5 = -2187.0 / 6784.0 + 92097.0 / 339200.0
cdef double E6 = 11.0 / 84.0 - 187.0 / 2100.0
cdef double E7 = -1.0 / 40.0


cdef inline double cabs2(cplx z) noexcept nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


cdef struct Ctx:
    int mode
    int m
    int k
    cplx* A
    cplx* R
    cplx* poles
    cplx* lu


cdef inline void piece_eval(double* pc, double s, cplx* t, cplx* dt) noexcept nogil:
    cdef double ang, c, sn
    cdef cplx z0, z1, ctr
    if pc[0] == 0.0:
        z0 = pc[1] + 1j * pc[2]
        z1 = pc[3] + 1j * pc[4]
        t[0] = z0 + s * (z1 - z0)
        dt[0] = z1 - z0
    else:
        ctr = pc[1] + 1j * pc[2]
        ang = pc[4] + s * (pc[5] - pc[4])
        c = cos(ang)
        sn = sin(ang)
        t[0] = ctr + pc[3] * (c + 1j * sn)
        dt[0] = 1j * (pc[5] - pc[4]) * pc[3] * (c + 1j * sn)


cdef int rhs(Ctx* ctx, cplx t, cplx dt, cplx* y, cplx* out) noexcept nogil:
    """out = dt * F(t) y; returns nonzero on a singular solve."""
    cdef int m = ctx.m
    cdef int i, j, c, r, piv
    cdef double best, mag
    cdef cplx f, sw, inv
    cdef cplx* lu = ctx.lu
    if ctx.mode == 0:
        for i in range(m * m):
            lu[i] = ctx.A[i]
            out[i] = y[i]
        for i in range(m):
            lu[i * m + i] = lu[i * m + i] - t
        for c in range(m):
            piv = c
            best = cabs2(lu[c * m + c])
            for r in range(c + 1, m):
                mag = cabs2(lu[r * m + c])
                if mag > best:
                    best = mag
                    piv = r
            if best == 0.0:
                return 1
            if piv != c:
                for j in range(m):
                    sw = lu[c * m + j]
                    lu[c * m + j] = lu[piv * m + j]
                    lu[piv * m + j] = sw
                    sw = out[c * m + j]
                    out[c * m + j] = out[piv * m + j]
                    out[piv * m + j] = sw
            inv = 1.0 / lu[c * m + c]
            for r in range(c + 1, m):
                f = lu[r * m + c] * inv
                if f != 0:
                    for j in range(c, m):
                        lu[r * m + j] = lu[r * m + j] - f * lu[c * m + j]
                    for j in range(m):
                        out[r * m + j] = out[r * m + j] - f * out[c * m + j]
        for c in range(m - 1, -1, -1):
            inv = 1.0 / lu[c * m + c]
            for j in range(m):
                f = out[c * m + j]
                for r in range(c + 1, m):
                    f = f - lu[c * m + r] * out[r * m + j]
                out[c * m + j] = f * inv
        for i in range(m):
            for j in range(m):
                out[i * m + j] = out[i * m + j] * (i * dt)
    else:
        for i in range(m * m):
            out[i] = 0
        for c in range(ctx.k):
            f = dt / (t - ctx.poles[c])
            for i in range(m):
                for j in range(m):
                    sw = 0
                    for r in range(m):
                        sw = sw + ctx.R[c * m * m + i * m + r] * y[r * m + j]
                    out[i * m + j] = out[i * m + j] + f * sw
    return 0


def integrate_pieces(int mode, A, R, poles, pieces, Phi0, double tol,
                     double h0=0.05, long max_steps=2000000):
    """See ``_ode_py.integrate_pieces``."""
    cdef cnp.ndarray[cplx, ndim=2, mode="c"] Ac = np.ascontiguousarray(A, dtype=complex)
    cdef cnp.ndarray[cplx, ndim=3, mode="c"] Rc = np.ascontiguousarray(R, dtype=complex)
    cdef cnp.ndarray[cplx, ndim=1, mode="c"] Pc = np.ascontiguousarray(poles, dtype=complex)
    cdef cnp.ndarray[double, ndim=2, mode="c"] pcs = np.ascontiguousarray(pieces, dtype=float)
    cdef cnp.ndarray[cplx, ndim=2, mode="c"] Y = np.array(Phi0, dtype=complex, order="C", copy=True)
    cdef int m = Y.shape[0]
    cdef int mm = m * m
    cdef Ctx ctx
    ctx.mode = mode
    ctx.m = m
    ctx.k = Pc.shape[0]
    ctx.A = &Ac[0, 0]
    ctx.R = &Rc[0, 0, 0] if Rc.shape[0] > 0 else NULL
    ctx.poles = &Pc[0] if Pc.shape[0] > 0 else NULL
    cdef cplx* buf = <cplx*> malloc(10 * mm * sizeof(cplx))
    if buf == NULL:
        raise MemoryError()
    ctx.lu = buf
    cdef cplx* k1 = buf + 1 * mm
    cdef cplx* k2 = buf + 2 * mm
    cdef cplx* k3 = buf + 3 * mm
    cdef cplx* k4 = buf + 4 * mm
    cdef cplx* k5 = buf + 5 * mm
    cdef cplx* k6 = buf + 6 * mm
    cdef cplx* k7 = buf + 7 * mm
    cdef cplx* ys = buf + 8 * mm
    cdef cplx* yn = buf + 9 * mm
    cdef cplx* y = &Y[0, 0]
    cdef long accepted = 0, rejected = 0
    cdef int status = 0, p, i, fresh
    cdef double s, h, err, sc, e, fac, a1, a2
    cdef cplx t, dt, d
    cdef cplx* sw
    cdef double* pc
    with nogil:
        for p in range(pcs.shape[0]):
            pc = &pcs[p, 0]
            s = 0.0
            h = h0
            fresh = 1
            while s < 1.0:
                if accepted + rejected >= max_steps:
                    status = 2
                    break
                if h < 1e-14:
                    status = 1
                    break
                if s + h > 1.0:
                    h = 1.0 - s
                if fresh:
                    piece_eval(pc, s, &t, &dt)
                    if rhs(&ctx, t, dt, y, k1):
                        status = 3
                        break
                    fresh = 0
                for i in range(mm):
                    ys[i] = y[i] + h * (A21 * k1[i])
                piece_eval(pc, s + C2 * h, &t, &dt)
                if rhs(&ctx, t, dt, ys, k2):
                    status = 3
                    break
                for i in range(mm):
                    ys[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i])
                piece_eval(pc, s + C3 * h, &t, &dt)
                if rhs(&ctx, t, dt, ys, k3):
                    status = 3
                    break
                for i in range(mm):
                    ys[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i])
                piece_eval(pc, s + C4 * h, &t, &dt)
                if rhs(&ctx, t, dt, ys, k4):
                    status = 3
                    break
                for i in range(mm):
                    ys[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i])
                piece_eval(pc, s + C5 * h, &t, &dt)
                if rhs(&ctx, t, dt, ys, k5):
                    status = 3
                    break
                for i in range(mm):
                    ys[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i])
                piece_eval(pc, s + h, &t, &dt)
                if rhs(&ctx, t, dt, ys, k6):
                    status = 3
                    break
                for i in range(mm):
                    yn[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i])
                if rhs(&ctx, t, dt, yn, k7):
                    status = 3
                    break
                err = 0.0
                for i in range(mm):
                    d = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i])
                    a1 = cabs2(y[i])
                    a2 = cabs2(yn[i])
                    sc = tol + tol * (a1 if a1 > a2 else a2)
                    e = cabs2(d) / sc
                    if e > err:
                        err = e
                if err <= 1.0:
                    s = s + h
                    accepted += 1
                    for i in range(mm):
                        y[i] = yn[i]
                    sw = k1
                    k1 = k7
                    k7 = sw
                else:
                    rejected += 1
                if err == 0.0:
                    fac = 5.0
                else:
                    fac = 0.9 * pow(err, -0.2)
                    if fac > 5.0:
                        fac = 5.0
                    if fac < 0.2:
                        fac = 0.2
                h = h * fac
            if status != 0:
                break
    free(buf)
    return Y, int(accepted), int(rejected), status
