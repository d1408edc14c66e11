"""Backend selection for the hot loops.

The compiled ``_kernels`` extension is used when it imports; otherwise,
or when ``FJL_PURE_PYTHON`` is set to a non-empty value, the
pure-Python reference in ``_kernels_py`` is used. Both take plain
integers, so results are identical.
"""
from __future__ import annotations

import os
from array import array
from fractions import Fraction
from math import lcm
from typing import Sequence

from fjl import _kernels_py

if os.environ.get("FJL_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from fjl import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
FILL, OUTLINE, OP_WIDTH = _kernels_py.FILL, _kernels_py.OUTLINE, _kernels_py.OP_WIDTH

# differences of two coordinates must not overflow int64
_INT64_SAFE = 1 << 61


def backends() -> dict:
    """Available implementations by name, reference first."""
    out = {"python": _kernels_py}
    if _compiled is not None:
        out["cython"] = _compiled
    return out


def min_box_gap_int(x_lo, x_hi, y_lo, y_hi, backend=None):
    impl = backends()[backend] if backend else (_compiled or _kernels_py)
    coords = (x_lo, x_hi, y_lo, y_hi)
    if impl is not _kernels_py:
        if any(abs(v) >= _INT64_SAFE for c in coords for v in c):
            impl = _kernels_py
        else:
            coords = tuple(array("q", c) for c in coords)
    return impl.min_box_gap(*coords)


def min_box_gap(boxes: Sequence, backend=None) -> tuple[Fraction, int, int]:
    """Exact minimum pairwise sup-norm gap of closed boxes with rational bounds.

    ``boxes`` holds QBox/QRect-like objects. Bounds are brought to a common
    denominator, so the integer kernel decides the question exactly.
    """
    den = 1
    for b in boxes:
        for v in (b.x_lo, b.x_hi, b.y_lo, b.y_hi):
            den = lcm(den, v.denominator)
    cols = [[], [], [], []]
    for b in boxes:
        for col, v in zip(cols, (b.x_lo, b.x_hi, b.y_lo, b.y_hi)):
            col.append(v.numerator * (den // v.denominator))
    gap, i, k = min_box_gap_int(*cols, backend=backend)
    return Fraction(gap, den), i, k


def paint(buf: bytearray, width: int, height: int, ops: Sequence[int], backend=None) -> None:
    impl = backends()[backend] if backend else (_compiled or _kernels_py)
    if impl is _kernels_py:
        impl.paint(buf, width, height, list(ops))
    else:
        impl.paint(buf, width, height, array("q", ops))
