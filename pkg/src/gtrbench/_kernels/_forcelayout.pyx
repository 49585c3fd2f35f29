# cython: language_level=3
"""Compiled force-displacement kernel, semantically equivalent to fallback.py:
repulsion k^2/d over all pairs (or grid-near pairs when cell > 0), attraction
d^2/k over edges, displacement capped by a linearly cooled temperature."""

from libc.math cimport floor, sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef double EPS = 1e-9


cdef Py_ssize_t _lower_bound(long long[::1] arr, long long value) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = arr.shape[0], mid
    while lo < hi:
        mid = (lo + hi) // 2
        if arr[mid] < value:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef Py_ssize_t _upper_bound(long long[::1] arr, long long value) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = arr.shape[0], mid
    while lo < hi:
        mid = (lo + hi) // 2
        if arr[mid] <= value:
            lo = mid + 1
        else:
            hi = mid
    return lo


def fr_steps(pos_in, edges_in, double k, double t0, int iters, double cell=0.0):
    pos_arr = np.array(pos_in, dtype=np.float64, copy=True, order="C")
    edges_arr = np.ascontiguousarray(np.asarray(edges_in, dtype=np.int64).reshape(-1, 2))
    cdef double[:, ::1] pos = pos_arr
    cdef long long[:, ::1] edges = edges_arr
    cdef Py_ssize_t n = pos.shape[0]
    cdef Py_ssize_t e = edges.shape[0]
    if n <= 1 or iters <= 0:
        return pos_arr

    disp_arr = np.zeros((n, 2), dtype=np.float64)
    cdef double[:, ::1] disp = disp_arr
    cdef long long[::1] cx = np.zeros(n, dtype=np.int64)
    cdef long long[::1] cy = np.zeros(n, dtype=np.int64)
    cdef long long[::1] key = np.zeros(n, dtype=np.int64)
    cdef long long[::1] skey = np.zeros(n, dtype=np.int64)
    cdef long long[::1] order = np.zeros(n, dtype=np.int64)

    cdef double k2 = k * k
    cdef double t, dx, dy, d2, d, coef, length, cap
    cdef Py_ssize_t it, i, j, a, b, idx, lo, hi
    cdef long long minx, miny, width, target
    cdef int ox, oy

    for it in range(iters):
        t = t0 * (1.0 - <double>it / <double>iters)
        for i in range(n):
            disp[i, 0] = 0.0
            disp[i, 1] = 0.0

        if cell > 0.0:
            minx = 0
            miny = 0
            for i in range(n):
                cx[i] = <long long>floor(pos[i, 0] / cell) + 1
                cy[i] = <long long>floor(pos[i, 1] / cell) + 1
                if i == 0 or cx[i] < minx:
                    minx = cx[i]
                if i == 0 or cy[i] < miny:
                    miny = cy[i]
            width = 0
            for i in range(n):
                cx[i] = cx[i] - minx + 1
                cy[i] = cy[i] - miny + 1
                if cy[i] > width:
                    width = cy[i]
            width = width + 3
            for i in range(n):
                key[i] = cx[i] * width + cy[i]
            order_arr = np.argsort(np.asarray(key), kind="stable").astype(np.int64)
            order = order_arr
            for i in range(n):
                skey[i] = key[order[i]]
            for i in range(n):
                for ox in range(-1, 2):
                    for oy in range(-1, 2):
                        target = (cx[i] + ox) * width + (cy[i] + oy)
                        lo = _lower_bound(skey, target)
                        hi = _upper_bound(skey, target)
                        for idx in range(lo, hi):
                            j = <Py_ssize_t>order[idx]
                            if j == i:
                                continue
                            dx = pos[i, 0] - pos[j, 0]
                            dy = pos[i, 1] - pos[j, 1]
                            d2 = dx * dx + dy * dy
                            if d2 < EPS * EPS:
                                d2 = EPS * EPS
                            coef = k2 / d2
                            disp[i, 0] += dx * coef
                            disp[i, 1] += dy * coef
        else:
            for i in range(n):
                for j in range(n):
                    if j == i:
                        continue
                    dx = pos[i, 0] - pos[j, 0]
                    dy = pos[i, 1] - pos[j, 1]
                    d2 = dx * dx + dy * dy
                    if d2 < EPS * EPS:
                        d2 = EPS * EPS
                    coef = k2 / d2
                    disp[i, 0] += dx * coef
                    disp[i, 1] += dy * coef

        for idx in range(e):
            a = <Py_ssize_t>edges[idx, 0]
            b = <Py_ssize_t>edges[idx, 1]
            dx = pos[a, 0] - pos[b, 0]
            dy = pos[a, 1] - pos[b, 1]
            d = sqrt(dx * dx + dy * dy)
            if d < EPS:
                d = EPS
            coef = d / k
            disp[a, 0] -= dx * coef
            disp[a, 1] -= dy * coef
            disp[b, 0] += dx * coef
            disp[b, 1] += dy * coef

        for i in range(n):
            length = sqrt(disp[i, 0] * disp[i, 0] + disp[i, 1] * disp[i, 1])
            if length < EPS:
                length = EPS
            cap = length if length < t else t
            pos[i, 0] += disp[i, 0] / length * cap
            pos[i, 1] += disp[i, 1] / length * cap

    return pos_arr
