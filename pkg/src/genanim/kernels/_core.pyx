# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled raster kernels: Zhang-Suen thinning, tolerance flood fill and an
exact Euclidean distance transform (Felzenszwalb-Huttenlocher lower-envelope
form). Mirrors genanim.kernels._purepy; the parity tests keep both honest."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def thin(mask):
    """Zhang-Suen two-subiteration thinning, iterated to fixpoint."""
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] src = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef Py_ssize_t h = src.shape[0], w = src.shape[1]
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] img = np.zeros((h + 2, w + 2), dtype=np.uint8)
    cdef Py_ssize_t y, x, i, n
    for y in range(h):
        for x in range(w):
            if src[y, x] != 0:
                img[y + 1, x + 1] = 1

    cdef cnp.ndarray[cnp.int32_t, ndim=1] kill_y = np.empty(h * w, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] kill_x = np.empty(h * w, dtype=np.int32)
    cdef int p2, p3, p4, p5, p6, p7, p8, p9, count, trans, step
    cdef bint changed = True

    while changed:
        changed = False
        for step in range(2):
            n = 0
            for y in range(1, h + 1):
                for x in range(1, w + 1):
                    if img[y, x] == 0:
                        continue
                    p2 = img[y - 1, x]
                    p3 = img[y - 1, x + 1]
                    p4 = img[y, x + 1]
                    p5 = img[y + 1, x + 1]
                    p6 = img[y + 1, x]
                    p7 = img[y + 1, x - 1]
                    p8 = img[y, x - 1]
                    p9 = img[y - 1, x - 1]
                    count = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9
                    if count < 2 or count > 6:
                        continue
                    trans = 0
                    if p2 == 0 and p3 == 1: trans += 1
                    if p3 == 0 and p4 == 1: trans += 1
                    if p4 == 0 and p5 == 1: trans += 1
                    if p5 == 0 and p6 == 1: trans += 1
                    if p6 == 0 and p7 == 1: trans += 1
                    if p7 == 0 and p8 == 1: trans += 1
                    if p8 == 0 and p9 == 1: trans += 1
                    if p9 == 0 and p2 == 1: trans += 1
                    if trans != 1:
                        continue
                    if step == 0:
                        if p2 * p4 * p6 != 0 or p4 * p6 * p8 != 0:
                            continue
                    else:
                        if p2 * p4 * p8 != 0 or p2 * p6 * p8 != 0:
                            continue
                    kill_y[n] = <cnp.int32_t>y
                    kill_x[n] = <cnp.int32_t>x
                    n += 1
            if n > 0:
                changed = True
                for i in range(n):
                    img[kill_y[i], kill_x[i]] = 0

    cdef cnp.ndarray[cnp.uint8_t, ndim=2] out = np.zeros((h, w), dtype=np.uint8)
    for y in range(h):
        for x in range(w):
            if img[y + 1, x + 1] != 0:
                out[y, x] = 1
    return out


def flood_fill_rgba(rgba, Py_ssize_t seed_x, Py_ssize_t seed_y, int tol):
    """4-connected region around the seed whose per-channel distance from the
    seed pixel's colour stays <= tol. Returns a uint8 mask (255 = inside)."""
    cdef cnp.ndarray[cnp.uint8_t, ndim=3] img = np.ascontiguousarray(rgba, dtype=np.uint8)
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1], c = img.shape[2]
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] out = np.zeros((h, w), dtype=np.uint8)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] stack = np.empty(h * w, dtype=np.int64)
    cdef int r0 = img[seed_y, seed_x, 0]
    cdef int g0 = img[seed_y, seed_x, 1] if c > 1 else 0
    cdef int b0 = img[seed_y, seed_x, 2] if c > 2 else 0
    cdef int a0 = img[seed_y, seed_x, 3] if c > 3 else 0
    cdef Py_ssize_t top = 0, y, x
    cdef int d

    out[seed_y, seed_x] = 255
    stack[top] = seed_y * w + seed_x
    top += 1
    while top > 0:
        top -= 1
        y = stack[top] // w
        x = stack[top] % w
        # 4-neighbours
        if x + 1 < w and out[y, x + 1] == 0 and _near(img, y, x + 1, c, r0, g0, b0, a0, tol):
            out[y, x + 1] = 255
            stack[top] = y * w + x + 1
            top += 1
        if x > 0 and out[y, x - 1] == 0 and _near(img, y, x - 1, c, r0, g0, b0, a0, tol):
            out[y, x - 1] = 255
            stack[top] = y * w + x - 1
            top += 1
        if y + 1 < h and out[y + 1, x] == 0 and _near(img, y + 1, x, c, r0, g0, b0, a0, tol):
            out[y + 1, x] = 255
            stack[top] = (y + 1) * w + x
            top += 1
        if y > 0 and out[y - 1, x] == 0 and _near(img, y - 1, x, c, r0, g0, b0, a0, tol):
            out[y - 1, x] = 255
            stack[top] = (y - 1) * w + x
            top += 1
    return out


cdef inline bint _near(const cnp.uint8_t[:, :, ::1] img, Py_ssize_t y, Py_ssize_t x,
                       Py_ssize_t c, int r0, int g0, int b0, int a0, int tol):
    cdef int d = img[y, x, 0] - r0
    if d < -tol or d > tol:
        return False
    if c > 1:
        d = img[y, x, 1] - g0
        if d < -tol or d > tol:
            return False
    if c > 2:
        d = img[y, x, 2] - b0
        if d < -tol or d > tol:
            return False
    if c > 3:
        d = img[y, x, 3] - a0
        if d < -tol or d > tol:
            return False
    return True


def distance_transform(mask):
    """Exact Euclidean distance from each foreground pixel to the nearest
    background pixel (0 on background)."""
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] src = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef Py_ssize_t h = src.shape[0], w = src.shape[1]
    cdef double INF = <double>(h + w) * 2.0
    cdef cnp.ndarray[cnp.float64_t, ndim=2] g = np.empty((h, w), dtype=np.float64)
    cdef Py_ssize_t x, y, q, k
    cdef double s

    # Column pass: vertical distance to the nearest background pixel.
    for x in range(w):
        if src[0, x] == 0:
            g[0, x] = 0.0
        else:
            g[0, x] = INF
        for y in range(1, h):
            if src[y, x] == 0:
                g[y, x] = 0.0
            else:
                g[y, x] = g[y - 1, x] + 1.0
        for y in range(h - 2, -1, -1):
            if g[y + 1, x] + 1.0 < g[y, x]:
                g[y, x] = g[y + 1, x] + 1.0

    # Row pass: lower envelope of the parabolas q -> (x - q)^2 + g[q]^2.
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.zeros((h, w), dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] v = np.empty(w, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] z = np.empty(w + 1, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] f = np.empty(w, dtype=np.float64)
    for y in range(h):
        for x in range(w):
            f[x] = g[y, x] * g[y, x]
        k = 0
        v[0] = 0
        z[0] = -INF * INF
        z[1] = INF * INF
        for q in range(1, w):
            while True:
                s = ((f[q] + <double>(q * q)) - (f[v[k]] + <double>(v[k] * v[k]))) / (2.0 * q - 2.0 * v[k])
                if s <= z[k]:
                    k -= 1
                else:
                    break
            k += 1
            v[k] = q
            z[k] = s
            z[k + 1] = INF * INF
        k = 0
        for q in range(w):
            while z[k + 1] < <double>q:
                k += 1
            if src[y, q] != 0:
                out[y, q] = ((q - v[k]) * (q - v[k]) + f[v[k]]) ** 0.5
    return out
