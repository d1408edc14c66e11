"""Pure-Python reference implementations of the hot loops.

Semantics must match ``_kernels.pyx`` exactly; the test suite compares
the two whenever the compiled module is importable.
"""

FILL = 0
OUTLINE = 1
OP_WIDTH = 8


def min_box_gap(x_lo, x_hi, y_lo, y_hi):
    """All-pairs minimum sup-norm gap between integer boxes.

    Returns ``(gap, i, k)`` for the first pair attaining the minimum,
    scanning i < k lexicographically. Needs at least two boxes.
    """
    n = len(x_lo)
    if n < 2:
        raise ValueError("need at least two boxes")
    best = None
    bi = bk = -1
    for i in range(n - 1):
        axl, axh, ayl, ayh = x_lo[i], x_hi[i], y_lo[i], y_hi[i]
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
            if best is None or g < best:
                best, bi, bk = g, i, k
    return best, bi, bk


def _put(buf, width, x, y, rgb):
    p = 3 * (y * width + x)
    buf[p] = (rgb >> 16) & 0xFF
    buf[p + 1] = (rgb >> 8) & 0xFF
    buf[p + 2] = rgb & 0xFF


def paint(buf, width, height, ops):
    """Apply fill/outline ops (8 ints each) to an RGB byte buffer in order.

    Op layout: kind, x0, y0, x1, y1, rgb, dash_on, dash_off with inclusive
    pixel bounds; parts outside the image are clipped.
    """
    for base in range(0, len(ops), OP_WIDTH):
        kind, x0, y0, x1, y1, rgb, on, off = ops[base:base + OP_WIDTH]
        if x1 < x0 or y1 < y0:
            continue
        if kind == FILL:
            for y in range(max(y0, 0), min(y1, height - 1) + 1):
                for x in range(max(x0, 0), min(x1, width - 1) + 1):
                    _put(buf, width, x, y, rgb)
            continue
        period = on + off
        for x in range(max(x0, 0), min(x1, width - 1) + 1):
            if off == 0 or (x - x0) % period < on:
                if 0 <= y0 < height:
                    _put(buf, width, x, y0, rgb)
                if 0 <= y1 < height:
                    _put(buf, width, x, y1, rgb)
        for y in range(max(y0, 0), min(y1, height - 1) + 1):
            if off == 0 or (y - y0) % period < on:
                if 0 <= x0 < width:
                    _put(buf, width, x0, y, rgb)
                if 0 <= x1 < width:
                    _put(buf, width, x1, y, rgb)
