# cython: language_level=3
"""Compiled pixel-neighbourhood kernels (thinning, crossing numbers).

Mirrors ``_pykernels`` bit for bit.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.uint8_t u8


cdef inline void _ring(const u8[:, ::1] p, Py_ssize_t y, Py_ssize_t x, int* r) noexcept nogil:
    # padded coordinates; order N, NE, E, SE, S, SW, W, NW
    r[0] = p[y - 1, x]
    r[1] = p[y - 1, x + 1]
    r[2] = p[y, x + 1]
    r[3] = p[y + 1, x + 1]
    r[4] = p[y + 1, x]
    r[5] = p[y + 1, x - 1]
    r[6] = p[y, x - 1]
    r[7] = p[y - 1, x - 1]


cdef inline int _count(int* r) noexcept nogil:
    cdef int k, c = 0
    for k in range(8):
        c += r[k]
    return c


cdef inline int _transitions(int* r) noexcept nogil:
    cdef int k, t = 0
    for k in range(8):
        if r[k] == 0 and r[(k + 1) & 7] == 1:
            t += 1
    return t


cdef inline int _eight_components(int* r) noexcept nogil:
    cdef int m[8]
    cdef int k, t = 0, ones = 0
    for k in range(8):
        m[k] = r[k]
    for k in range(1, 8, 2):
        if m[k] == 0 and r[k - 1] and r[(k + 1) & 7]:
            m[k] = 1
    for k in range(8):
        ones += m[k]
    if ones == 8:
        return 1
    for k in range(8):
        if m[k] == 0 and m[(k + 1) & 7] == 1:
            t += 1
    return t


def crossing_numbers(skel):
    """Crossing number of every ridge pixel (0 elsewhere); outside pixels are 0."""
    src = np.ascontiguousarray(np.asarray(skel) != 0, dtype=np.uint8)
    cdef Py_ssize_t h = src.shape[0], w = src.shape[1]
    cdef u8[:, ::1] p = np.pad(src, 1)
    out_arr = np.zeros((h, w), dtype=np.int8)
    cdef cnp.int8_t[:, ::1] out = out_arr
    cdef int r[8]
    cdef int k, d
    cdef Py_ssize_t y, x
    with nogil:
        for y in range(1, h + 1):
            for x in range(1, w + 1):
                if p[y, x]:
                    _ring(p, y, x, r)
                    d = 0
                    for k in range(8):
                        d += r[k] - r[(k + 1) & 7] if r[k] > r[(k + 1) & 7] else r[(k + 1) & 7] - r[k]
                    out[y - 1, x - 1] = d // 2
    return out_arr


cdef bint _zs_pass(u8[:, ::1] p, u8[:, ::1] snap, Py_ssize_t h, Py_ssize_t w, bint first,
                   Py_ssize_t[::1] cy, Py_ssize_t[::1] cx) noexcept nogil:
    cdef Py_ssize_t y, x, n = 0, j
    cdef int r[8]
    cdef int c
    cdef bint changed = False
    # candidates from the snapshot (parallel Zhang-Suen decision)
    for y in range(1, h + 1):
        for x in range(1, w + 1):
            if not snap[y, x]:
                continue
            _ring(snap, y, x, r)
            c = _count(r)
            if c < 2 or c > 6 or _transitions(r) != 1:
                continue
            if first:
                if r[0] * r[2] * r[4] != 0 or r[2] * r[4] * r[6] != 0:
                    continue
            else:
                if r[0] * r[2] * r[6] != 0 or r[0] * r[4] * r[6] != 0:
                    continue
            cy[n] = y
            cx[n] = x
            n += 1
    # sequential deletion with topology re-check on the live image
    for j in range(n):
        y = cy[j]
        x = cx[j]
        _ring(p, y, x, r)
        c = _count(r)
        if 2 <= c <= 6 and _transitions(r) == 1:
            p[y, x] = 0
            changed = True
    return changed


cdef inline bint _in_block(u8[:, ::1] p, Py_ssize_t y, Py_ssize_t x) noexcept nogil:
    return ((p[y - 1, x] and p[y - 1, x + 1] and p[y, x + 1])
            or (p[y, x + 1] and p[y + 1, x + 1] and p[y + 1, x])
            or (p[y + 1, x] and p[y + 1, x - 1] and p[y, x - 1])
            or (p[y, x - 1] and p[y - 1, x - 1] and p[y - 1, x]))


cdef bint _block_pass(u8[:, ::1] p, u8[:, ::1] snap, Py_ssize_t h, Py_ssize_t w) noexcept nogil:
    cdef Py_ssize_t y, x
    cdef int r[8]
    cdef bint changed = False
    for y in range(1, h + 1):
        for x in range(1, w + 1):
            # membership decided on the snapshot, deletion on the live image
            if not snap[y, x] or not _in_block(snap, y, x):
                continue
            if not p[y, x] or not _in_block(p, y, x):
                continue
            _ring(p, y, x, r)
            if _count(r) >= 2 and _eight_components(r) == 1:
                p[y, x] = 0
                changed = True
    return changed


def thin(binary):
    """Zhang-Suen thinning with topology re-check and 2x2 block breaking."""
    src = np.ascontiguousarray(np.asarray(binary) != 0, dtype=np.uint8)
    cdef Py_ssize_t h = src.shape[0], w = src.shape[1]
    if not src.any():
        return src
    live_arr = np.pad(src, 1)
    snap_arr = live_arr.copy()
    cdef u8[:, ::1] live = live_arr
    cdef u8[:, ::1] snap = snap_arr
    cy_arr = np.empty(h * w, dtype=np.intp)
    cx_arr = np.empty(h * w, dtype=np.intp)
    cdef Py_ssize_t[::1] cy = cy_arr
    cdef Py_ssize_t[::1] cx = cx_arr
    cdef bint changed, step
    with nogil:
        while True:
            changed = False
            step = _zs_pass(live, snap, h, w, True, cy, cx)
            if step:
                changed = True
                snap[:, :] = live
            step = _zs_pass(live, snap, h, w, False, cy, cx)
            if step:
                changed = True
                snap[:, :] = live
            if not changed:
                if not _block_pass(live, snap, h, w):
                    break
                snap[:, :] = live
    return live_arr[1:-1, 1:-1].copy()
