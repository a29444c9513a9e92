# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: rotation composition, scale-and-double residuals, defect matching.

Mirrors _pyfallback.py operation for operation; keep both in sync.
"""

from libc.math cimport cos, sin, sqrt, fabs

import numpy as np
cimport numpy as cnp

cnp.import_array()

COMPILED = True

ctypedef double complex dc


cdef inline void _rotation(long axis, double half, dc* g) nogil:
    cdef double c = cos(half)
    cdef double s = sin(half)
    if axis == 0:  # X
        g[0] = c
        g[1] = -s * 1j
        g[2] = -s * 1j
        g[3] = c
    elif axis == 1:  # Y
        g[0] = c
        g[1] = -s
        g[2] = s
        g[3] = c
    else:  # Z
        g[0] = c - s * 1j
        g[1] = 0
        g[2] = 0
        g[3] = c + s * 1j


cdef inline void _compose(const long* axes, const double* angles, Py_ssize_t n,
                          double scale, dc* m) nogil:
    cdef dc g[4]
    cdef dc na, nb, nc, nd
    cdef Py_ssize_t i
    m[0] = 1
    m[1] = 0
    m[2] = 0
    m[3] = 1
    for i in range(n):
        _rotation(axes[i], 0.5 * scale * angles[i], g)
        na = g[0] * m[0] + g[1] * m[2]
        nb = g[0] * m[1] + g[1] * m[3]
        nc = g[2] * m[0] + g[3] * m[2]
        nd = g[2] * m[1] + g[3] * m[3]
        m[0] = na
        m[1] = nb
        m[2] = nc
        m[3] = nd


cdef inline void _double(const dc* b, dc* r) nogil:
    r[0] = b[0] * b[0] + b[1] * b[2]
    r[1] = b[0] * b[1] + b[1] * b[3]
    r[2] = b[2] * b[0] + b[3] * b[2]
    r[3] = b[2] * b[1] + b[3] * b[3]


cdef inline double _residual(const dc* u, const dc* r) nogil:
    cdef dc va = r[0] * u[0] + r[1] * u[2]
    cdef dc vb = r[0] * u[1] + r[1] * u[3]
    cdef dc vc = r[2] * u[0] + r[3] * u[2]
    cdef dc vd = r[2] * u[1] + r[3] * u[3]
    va = va - 1.0
    vd = vd - 1.0
    cdef double norm_sq = (
        va.real * va.real + va.imag * va.imag
        + vb.real * vb.real + vb.imag * vb.imag
        + vc.real * vc.real + vc.imag * vc.imag
        + vd.real * vd.real + vd.imag * vd.imag
    )
    return 0.5 * sqrt(norm_sq)


def compose_rotations(axes, angles, double scale=1.0):
    """Product G_L ... G_1 with every angle multiplied by `scale`."""
    cdef cnp.ndarray[long, ndim=1] ax = np.ascontiguousarray(axes, dtype=np.int64)
    cdef cnp.ndarray[double, ndim=1] an = np.ascontiguousarray(angles, dtype=np.float64)
    cdef dc m[4]
    _compose(&ax[0] if ax.shape[0] else NULL, &an[0] if an.shape[0] else NULL,
             ax.shape[0], scale, m)
    return np.array([[m[0], m[1]], [m[2], m[3]]], dtype=complex)


def reset_residual(axes, angles, double lam):
    """Frobenius residual ||R(lam) U - I||_F / 2 for the doubled scaled block."""
    cdef cnp.ndarray[long, ndim=1] ax = np.ascontiguousarray(axes, dtype=np.int64)
    cdef cnp.ndarray[double, ndim=1] an = np.ascontiguousarray(angles, dtype=np.float64)
    cdef dc u[4]
    cdef dc b[4]
    cdef dc r[4]
    cdef Py_ssize_t n = ax.shape[0]
    _compose(&ax[0] if n else NULL, &an[0] if n else NULL, n, 1.0, u)
    _compose(&ax[0] if n else NULL, &an[0] if n else NULL, n, lam, b)
    _double(b, r)
    return _residual(u, r)


def lambda_residuals(axes, angles, lams):
    """Residual at every scale factor in `lams` (base unitary computed once)."""
    cdef cnp.ndarray[long, ndim=1] ax = np.ascontiguousarray(axes, dtype=np.int64)
    cdef cnp.ndarray[double, ndim=1] an = np.ascontiguousarray(angles, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] ls = np.ascontiguousarray(lams, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] out = np.empty(ls.shape[0], dtype=np.float64)
    cdef dc u[4]
    cdef dc b[4]
    cdef dc r[4]
    cdef Py_ssize_t n = ax.shape[0]
    cdef Py_ssize_t k
    _compose(&ax[0] if n else NULL, &an[0] if n else NULL, n, 1.0, u)
    with nogil:
        for k in range(ls.shape[0]):
            _compose(&ax[0] if n else NULL, &an[0] if n else NULL, n, ls[k], b)
            _double(b, r)
            out[k] = _residual(u, r)
    return out


# ---------------------------------------------------------------------------
# Space-time defect matching (same sweep DP as the fallback; dict-based memo).

_OPEN_CAP = 16


cdef inline tuple _boundary(long x, long d):
    cdef long left = x + 1
    cdef long right = d - 1 - x
    if left <= right:
        return left, -1
    return right, -2


def match_defects(times, xs, long d):
    """Minimum-weight pairing of syndrome-change defects (see fallback docstring)."""
    cdef cnp.ndarray[long, ndim=1] t = np.ascontiguousarray(times, dtype=np.int64)
    cdef cnp.ndarray[long, ndim=1] x = np.ascontiguousarray(xs, dtype=np.int64)
    cdef Py_ssize_t n = t.shape[0]
    partners = np.full(n, -3, dtype=np.int64)
    if n == 0:
        return 0, partners
    cdef list bcost = [0] * n
    cdef list bside = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        bcost[i], bside[i] = _boundary(x[i], d)
    cdef long max_b = max(bcost)

    states = {(): (0, None, None)}
    layers = []
    cdef long w
    for i in range(n):
        nxt = {}
        for open_key in sorted(states):
            cost = states[open_key][0]
            open_list = []
            flushed = []
            # j can never pair once every later defect is at least
            # bcost[j] + max_b away (boundary pair is then no worse)
            for j in open_key:
                if t[i] - t[j] >= bcost[j] + max_b:
                    cost += bcost[j]
                    flushed.append(j)
                else:
                    open_list.append(j)
            while len(open_list) > _OPEN_CAP:
                j = open_list.pop(0)
                cost += bcost[j]
                flushed.append(j)
            flushed = tuple(flushed)
            base = tuple(open_list)
            _push(nxt, base, cost + bcost[i], open_key, ("b", flushed))
            for j in open_list:
                w = (t[i] - t[j] if t[i] >= t[j] else t[j] - t[i]) + \
                    (x[i] - x[j] if x[i] >= x[j] else x[j] - x[i])
                if w < bcost[i] + bcost[j]:
                    key = tuple(k for k in open_list if k != j)
                    _push(nxt, key, cost + w, open_key, ("p", j, flushed))
            _push(nxt, base + (i,), cost, open_key, ("o", flushed))
        layers.append(nxt)
        states = nxt

    best_key = None
    best_cost = None
    for key in sorted(states):
        total = states[key][0] + sum(bcost[j] for j in key)
        if best_cost is None or total < best_cost:
            best_key, best_cost = key, total
    for j in best_key:
        partners[j] = bside[j]

    key = best_key
    for i in range(n - 1, -1, -1):
        _, parent, action = layers[i][key]
        if action[0] == "b":
            partners[i] = bside[i]
            flushed = action[1]
        elif action[0] == "p":
            j = action[1]
            partners[i] = j
            partners[j] = i
            flushed = action[2]
        else:
            flushed = action[1]
        for j in flushed:
            partners[j] = bside[j]
        key = parent
    return best_cost, partners


cdef inline void _push(dict nxt, tuple key, object cost, tuple parent, tuple action):
    cur = nxt.get(key)
    if cur is None or cost < cur[0]:
        nxt[key] = (cost, parent, action)
