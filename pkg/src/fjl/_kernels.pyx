# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the loops in ``_kernels_py``; same contracts."""

from libc.stdint cimport int64_t

FILL = 0
OUTLINE = 1
OP_WIDTH = 8


def min_box_gap(const int64_t[:] x_lo, const int64_t[:] x_hi,
                const int64_t[:] y_lo, const int64_t[:] y_hi):
    cdef Py_ssize_t n = x_lo.shape[0]
    cdef Py_ssize_t i, k, bi = -1, bk = -1
    cdef int64_t g, t, best = 0
    cdef int64_t axl, axh, ayl, ayh
    cdef bint have = False
    if n < 2:
        raise ValueError("need at least two boxes")
    for i in range(n - 1):
        axl = x_lo[i]; axh = x_hi[i]; ayl = y_lo[i]; ayh = y_hi[i]
        for k in range(i + 1, n):
            g = axl - x_hi[k]
            t = x_lo[k] - axh
            if t > g:
                g = t
            t = ayl - y_hi[k]
            if t > g:
                g = t
            t = y_lo[k] - ayh
            if t > g:
                g = t
            if not have or g < best:
                best = g; bi = i; bk = k; have = True
    return best, bi, bk


cdef inline void _put(unsigned char[:] buf, Py_ssize_t width, Py_ssize_t x,
                      Py_ssize_t y, int64_t rgb) noexcept nogil:
    cdef Py_ssize_t p = 3 * (y * width + x)
    buf[p] = (rgb >> 16) & 0xFF
    buf[p + 1] = (rgb >> 8) & 0xFF
    buf[p + 2] = rgb & 0xFF


def paint(unsigned char[:] buf, Py_ssize_t width, Py_ssize_t height,
          const int64_t[:] ops):
    cdef Py_ssize_t base, x, y, xa, xb, ya, yb
    cdef int64_t kind, x0, y0, x1, y1, rgb, on, off, period
    cdef Py_ssize_t n_ops = ops.shape[0] // 8
    with nogil:
        for base in range(0, n_ops * 8, 8):
            kind = ops[base]; x0 = ops[base + 1]; y0 = ops[base + 2]
            x1 = ops[base + 3]; y1 = ops[base + 4]; rgb = ops[base + 5]
            on = ops[base + 6]; off = ops[base + 7]
            if x1 < x0 or y1 < y0:
                continue
            xa = x0 if x0 > 0 else 0
            xb = x1 if x1 < width - 1 else width - 1
            ya = y0 if y0 > 0 else 0
            yb = y1 if y1 < height - 1 else height - 1
            if kind == 0:
                for y in range(ya, yb + 1):
                    for x in range(xa, xb + 1):
                        _put(buf, width, x, y, rgb)
                continue
            period = on + off
            for x in range(xa, xb + 1):
                if off == 0 or (x - x0) % period < on:
                    if 0 <= y0 < height:
                        _put(buf, width, x, y0, rgb)
                    if 0 <= y1 < height:
                        _put(buf, width, x, y1, rgb)
            for y in range(ya, yb + 1):
                if off == 0 or (y - y0) % period < on:
                    if 0 <= x0 < width:
                        _put(buf, width, x0, y, rgb)
                    if 0 <= x1 < width:
                        _put(buf, width, x1, y, rgb)
