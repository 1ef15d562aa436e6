# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Double-double (about 32 significant digits) Taylor transport for
``dPhi/dt = T (A - t)^-1 Phi`` and small dense double-double helpers.

A double-double complex array is passed as a pair ``(hi, lo)`` of complex128
arrays whose sum is the value. Mirror of ``_dd_py``.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport fma, sqrt
from libc.stdlib cimport malloc, free


cdef struct dd:
    double hi
    double lo


cdef struct cdd:
    dd re
    dd im


cdef inline dd two_sum(double a, double b) noexcept nogil:
    cdef dd r
    cdef double bb
    r.hi = a + b
    bb = r.hi - a
    r.lo = (a - (r.hi - bb)) + (b - bb)
    return r


cdef inline dd quick_two_sum(double a, double b) noexcept nogil:
    cdef dd r
    r.hi = a + b
    r.lo = b - (r.hi - a)
    return r


cdef inline dd dd_add(dd a, dd b) noexcept nogil:
    cdef dd s = two_sum(a.hi, b.hi)
    cdef dd t = two_sum(a.lo, b.lo)
    s.lo += t.hi
    s = quick_two_sum(s.hi, s.lo)
    s.lo += t.lo
    return quick_two_sum(s.hi, s.lo)


cdef inline dd dd_neg(dd a) noexcept nogil:
    cdef dd r
    r.hi = -a.hi
    r.lo = -a.lo
    return r


cdef inline dd dd_sub(dd a, dd b) noexcept nogil:
    return dd_add(a, dd_neg(b))


cdef inline dd dd_mul(dd a, dd b) noexcept nogil:
    cdef double p = a.hi * b.hi
    cdef double e = fma(a.hi, b.hi, -p)
    e += a.hi * b.lo + a.lo * b.hi
    return quick_two_sum(p, e)


cdef inline dd dd_mul_d(dd a, double b) noexcept nogil:
    cdef double p = a.hi * b
    cdef double e = fma(a.hi, b, -p)
    e += a.lo * b
    return quick_two_sum(p, e)


cdef inline dd dd_div(dd a, dd b) noexcept nogil:
    cdef double q1 = a.hi / b.hi
    cdef dd r = dd_sub(a, dd_mul_d(b, q1))
    cdef double q2 = r.hi / b.hi
    r = dd_sub(r, dd_mul_d(b, q2))
    cdef double q3 = r.hi / b.hi
    cdef dd q = quick_two_sum(q1, q2)
    return dd_add(q, dd_from(q3))


cdef inline dd dd_from(double a) noexcept nogil:
    cdef dd r
    r.hi = a
    r.lo = 0.0
    return r


cdef inline cdd c_add(cdd a, cdd b) noexcept nogil:
    cdef cdd r
    r.re = dd_add(a.re, b.re)
    r.im = dd_add(a.im, b.im)
    return r


cdef inline cdd c_sub(cdd a, cdd b) noexcept nogil:
    cdef cdd r
    r.re = dd_sub(a.re, b.re)
    r.im = dd_sub(a.im, b.im)
    return r


cdef inline cdd c_mul(cdd a, cdd b) noexcept nogil:
    cdef cdd r
    r.re = dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im))
    r.im = dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))
    return r


cdef inline cdd c_mul_d(cdd a, double b) noexcept nogil:
    cdef cdd r
    r.re = dd_mul_d(a.re, b)
    r.im = dd_mul_d(a.im, b)
    return r


cdef inline cdd c_div(cdd a, cdd b) noexcept nogil:
    cdef dd den = dd_add(dd_mul(b.re, b.re), dd_mul(b.im, b.im))
    cdef cdd r
    r.re = dd_div(dd_add(dd_mul(a.re, b.re), dd_mul(a.im, b.im)), den)
    r.im = dd_div(dd_sub(dd_mul(a.im, b.re), dd_mul(a.re, b.im)), den)
    return r


cdef inline double c_abs(cdd a) noexcept nogil:
    return sqrt(a.re.hi * a.re.hi + a.im.hi * a.im.hi)


cdef inline cdd c_zero() noexcept nogil:
    cdef cdd r
    r.re.hi = 0.0
    r.re.lo = 0.0
    r.im.hi = 0.0
    r.im.lo = 0.0
    return r


cdef inline cdd c_make(double complex hi, double complex lo) noexcept nogil:
    cdef cdd r
    r.re = two_sum(hi.real, lo.real)
    r.im = two_sum(hi.imag, lo.imag)
    return r


# ---------------------------------------------------------------- array glue


cdef cdd* load(hi, lo, Py_ssize_t count) except NULL:
    cdef cnp.ndarray[double complex, ndim=1] h = np.ascontiguousarray(hi, dtype=complex).ravel()
    cdef cnp.ndarray[double complex, ndim=1] l = np.ascontiguousarray(lo, dtype=complex).ravel()
    if h.shape[0] != count or l.shape[0] != count:
        raise ValueError("shape mismatch")
    cdef cdd* out = <cdd*> malloc(count * sizeof(cdd))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(count):
        out[i] = c_make(h[i], l[i])
    return out


cdef store(cdd* buf, Py_ssize_t rows, Py_ssize_t cols):
    cdef cnp.ndarray[double complex, ndim=2] h = np.empty((rows, cols), dtype=complex)
    cdef cnp.ndarray[double complex, ndim=2] l = np.empty((rows, cols), dtype=complex)
    cdef Py_ssize_t i, j
    cdef cdd v
    for i in range(rows):
        for j in range(cols):
            v = buf[i * cols + j]
            h[i, j] = v.re.hi + 1j * v.im.hi
            l[i, j] = v.re.lo + 1j * v.im.lo
    return h, l


# ---------------------------------------------------------------- linear algebra


cdef int lu_factor(cdd* a, int* piv, int m) noexcept nogil:
    cdef int c, r, j, p
    cdef double best, mag
    cdef cdd f, sw
    for c in range(m):
        p = c
        best = c_abs(a[c * m + c])
        for r in range(c + 1, m):
            mag = c_abs(a[r * m + c])
            if mag > best:
                best = mag
                p = r
        if best == 0.0:
            return 1
        piv[c] = p
        if p != c:
            for j in range(m):
                sw = a[c * m + j]
                a[c * m + j] = a[p * m + j]
                a[p * m + j] = sw
        for r in range(c + 1, m):
            f = c_div(a[r * m + c], a[c * m + c])
            a[r * m + c] = f
            for j in range(c + 1, m):
                a[r * m + j] = c_sub(a[r * m + j], c_mul(f, a[c * m + j]))
    return 0


cdef void lu_solve(cdd* a, int* piv, int m, cdd* b, int ncol) noexcept nogil:
    """Solve in place for ``ncol`` right-hand sides stored row-major (m x ncol)."""
    cdef int c, r, j
    cdef cdd sw, acc
    for c in range(m):
        if piv[c] != c:
            for j in range(ncol):
                sw = b[c * ncol + j]
                b[c * ncol + j] = b[piv[c] * ncol + j]
                b[piv[c] * ncol + j] = sw
    for r in range(1, m):
        for c in range(r):
            for j in range(ncol):
                b[r * ncol + j] = c_sub(b[r * ncol + j], c_mul(a[r * m + c], b[c * ncol + j]))
    for r in range(m - 1, -1, -1):
        for j in range(ncol):
            acc = b[r * ncol + j]
            for c in range(r + 1, m):
                acc = c_sub(acc, c_mul(a[r * m + c], b[c * ncol + j]))
            b[r * ncol + j] = c_div(acc, a[r * m + r])


def dd_matmul(Ahi, Alo, Bhi, Blo):
    """Double-double product of two complex matrices."""
    cdef int m = np.shape(Ahi)[0], k = np.shape(Ahi)[1], n = np.shape(Bhi)[1]
    if np.shape(Bhi)[0] != k:
        raise ValueError("inner dimensions differ")
    cdef cdd* a = load(Ahi, Alo, m * k)
    cdef cdd* b = load(Bhi, Blo, k * n)
    cdef cdd* c = <cdd*> malloc(m * n * sizeof(cdd))
    cdef int i, j, l
    cdef cdd acc
    for i in range(m):
        for j in range(n):
            acc = c_zero()
            for l in range(k):
                acc = c_add(acc, c_mul(a[i * k + l], b[l * n + j]))
            c[i * n + j] = acc
    out = store(c, m, n)
    free(a)
    free(b)
    free(c)
    return out


def dd_solve(Ahi, Alo, Bhi, Blo):
    """Double-double solution of ``A X = B`` (B a matrix)."""
    cdef int m = np.shape(Ahi)[0], n = np.shape(Bhi)[1]
    cdef cdd* a = load(Ahi, Alo, m * m)
    cdef cdd* b = load(Bhi, Blo, m * n)
    cdef int* piv = <int*> malloc(m * sizeof(int))
    cdef int bad = lu_factor(a, piv, m)
    if not bad:
        lu_solve(a, piv, m, b, n)
    out = store(b, m, n)
    free(a)
    free(b)
    free(piv)
    if bad:
        raise ZeroDivisionError("singular matrix")
    return out


# ---------------------------------------------------------------- Taylor transport


def taylor_transport(Ahi, Alo, points, Phi_hi, Phi_lo, double eps=1e-32, int max_terms=400):
    """Continue ``Phi`` along the polygon ``points[0] -> points[1] -> ...``.

    Each chord must lie well inside the disk of convergence around its start
    (the caller picks the points). Returns ``(hi, lo, steps, max_terms_used,
    status)`` with status 0 on success, 1 for a singular point on the path and
    2 when the series fails to converge within ``max_terms``.
    """
    cdef cnp.ndarray[double complex, ndim=1] pts = np.ascontiguousarray(points, dtype=complex)
    cdef int m = np.shape(Ahi)[0]
    cdef int mm = m * m
    cdef cdd* A = load(Ahi, Alo, mm)
    cdef cdd* Y = load(Phi_hi, Phi_lo, mm)
    cdef cdd* B = <cdd*> malloc(mm * sizeof(cdd))
    cdef cdd* psi = <cdd*> malloc(mm * sizeof(cdd))
    cdef cdd* eta = <cdd*> malloc(mm * sizeof(cdd))
    cdef cdd* acc = <cdd*> malloc(mm * sizeof(cdd))
    cdef int* piv = <int*> malloc(m * sizeof(int))
    cdef int step, i, j, k, small, used = 0, status = 0
    cdef cdd t0, h
    cdef dd kdiv
    cdef double scale, mag, ymax
    cdef Py_ssize_t npts = pts.shape[0]
    with nogil:
        for step in range(npts - 1):
            t0 = c_make(pts[step], 0)
            h = c_sub(c_make(pts[step + 1], 0), t0)
            for i in range(mm):
                B[i] = A[i]
            for i in range(m):
                B[i * m + i] = c_sub(B[i * m + i], t0)
            if lu_factor(B, piv, m):
                status = 1
                break
            ymax = 0.0
            for i in range(mm):
                psi[i] = Y[i]
                acc[i] = Y[i]
                eta[i] = c_zero()
                mag = c_abs(Y[i])
                if mag > ymax:
                    ymax = mag
            small = 0
            k = 0
            while k < max_terms:
                # eta_k = h B^-1 (psi_k + eta_{k-1});  psi_{k+1} = T eta_k / (k+1)
                for i in range(mm):
                    eta[i] = c_add(psi[i], eta[i])
                lu_solve(B, piv, m, eta, m)
                for i in range(mm):
                    eta[i] = c_mul(eta[i], h)
                scale = 0.0
                kdiv = dd_from(<double> (k + 1))
                for i in range(m):
                    for j in range(m):
                        psi[i * m + j].re = dd_div(dd_mul_d(eta[i * m + j].re, <double> i), kdiv)
                        psi[i * m + j].im = dd_div(dd_mul_d(eta[i * m + j].im, <double> i), kdiv)
                        acc[i * m + j] = c_add(acc[i * m + j], psi[i * m + j])
                        mag = c_abs(psi[i * m + j])
                        if mag > scale:
                            scale = mag
                k += 1
                if scale <= eps * ymax:
                    small += 1
                    if small >= 3:
                        break
                else:
                    small = 0
            if k > used:
                used = k
            if k >= max_terms:
                status = 2
                break
            for i in range(mm):
                Y[i] = acc[i]
    out = store(Y, m, m)
    free(A)
    free(Y)
    free(B)
    free(psi)
    free(eta)
    free(acc)
    free(piv)
    return out[0], out[1], int(npts - 1), used, status
