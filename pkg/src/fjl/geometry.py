"""Square families and affine maps of the construction, built exactly.

Indices follow the construction: ``P(j, k)`` and ``S(j, k)`` for integer
lattice cells, ``Q(j, level)`` for the nested squares centred at the
positive integer ``j``, and ``R(j, l, level)`` for the 16 sub-cells of
``Q(j, 3)``, numbered row-major from the top-left corner.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from fjl.exact import QBox, QPoint, QRect, pow2, rat

CELLS = 16
GRID = 4


@dataclass(frozen=True)
class Construction:
    """The tunable constants of the construction.

    The defaults give the genuine construction. Other values exist so that
    the verifier can be fed deliberately broken variants.

    delta_slope, delta_offset: delta_j = 2**-(delta_slope*j + delta_offset)
    r1_inset, r2_inset: side(R^m) = side(R^3) - inset * delta_j
    phi_target: level of Q_{j+1} onto which phi(j, l) sends R^1_{j,l}
    """

    delta_slope: int = 2
    delta_offset: int = 6
    r1_inset: int = 4
    r2_inset: int = 2
    phi_target: int = 2

    def delta(self, j: int) -> Fraction:
        _check_j(j)
        return pow2(-(self.delta_slope * j + self.delta_offset))

    def q_half(self, j: int, level: int) -> Fraction:
        _check_j(j)
        if level not in (1, 2, 3):
            raise ValueError(f"level must be 1, 2 or 3, got {level}")
        return pow2(-j - 2) - (3 - level) * self.delta(j)

    def r_half(self, j: int, level: int) -> Fraction:
        _check_j(j)
        cell = pow2(-j - 4)
        if level == 3:
            return cell
        if level == 2:
            return cell - Fraction(self.r2_inset, 2) * self.delta(j)
        if level == 1:
            return cell - Fraction(self.r1_inset, 2) * self.delta(j)
        raise ValueError(f"level must be 1, 2 or 3, got {level}")

    def scale(self, j: int) -> Fraction:
        """Derivative of phi(j, l); independent of l."""
        return self.q_half(j + 1, self.phi_target) / self.r_half(j, 1)


DEFAULT = Construction()


def _check_j(j: int) -> None:
    if j < 1:
        raise ValueError(f"index j must be >= 1, got {j}")


def _check_l(l: int) -> None:
    if not 1 <= l <= CELLS:
        raise ValueError(f"cell index l must be in 1..16, got {l}")


def delta(j: int, cons: Construction = DEFAULT) -> Fraction:
    return cons.delta(j)


def square_P(j: int, k: int) -> QRect:
    return QRect(QPoint(2 * j + 1, 2 * k + 1), 1 - pow2(-abs(j) - abs(k) - 1))


def square_S(j: int, k: int) -> QRect:
    return QRect(QPoint(2 * j + 1, 2 * k + 1), 1)


def square_Q(j: int, level: int, cons: Construction = DEFAULT) -> QRect:
    return QRect(QPoint(j, 0), cons.q_half(j, level))


def cell_center(j: int, l: int) -> QPoint:
    """Centre shared by R^1, R^2 and R^3 of cell ``l`` of ``Q(j, 3)``."""
    _check_j(j)
    _check_l(l)
    row, col = divmod(l - 1, GRID)
    h, c = pow2(-j - 2), pow2(-j - 4)
    return QPoint(j - h + (2 * col + 1) * c, h - (2 * row + 1) * c)


@lru_cache(maxsize=4096)
def _square_R_cached(j: int, l: int, level: int, cons: Construction) -> QRect:
    return QRect(cell_center(j, l), cons.r_half(j, level))


def square_R(j: int, l: int, level: int, cons: Construction = DEFAULT) -> QRect:
    _check_l(l)
    return _square_R_cached(j, l, level, cons)


@dataclass(frozen=True)
class AffineMap:
    """Rotation-free similarity z -> scale*z + offset with real scale > 0."""

    scale: Fraction
    offset: QPoint

    def __post_init__(self):
        object.__setattr__(self, "scale", rat(self.scale))
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    @classmethod
    def identity(cls) -> AffineMap:
        return cls(Fraction(1), QPoint(0, 0))

    def __call__(self, z: QPoint) -> QPoint:
        return QPoint(self.scale * z.x + self.offset.x, self.scale * z.y + self.offset.y)

    def inverse(self) -> AffineMap:
        s = 1 / self.scale
        return AffineMap(s, QPoint(-self.offset.x * s, -self.offset.y * s))

    def compose(self, inner: AffineMap) -> AffineMap:
        """``self ∘ inner``."""
        return AffineMap(self.scale * inner.scale, self(inner.offset))


@lru_cache(maxsize=4096)
def _phi_cached(j: int, l: int, cons: Construction) -> AffineMap:
    src = square_R(j, l, 1, cons)
    dst = square_Q(j + 1, cons.phi_target, cons)
    s = dst.half_side / src.half_side
    return AffineMap(s, QPoint(dst.center.x - s * src.center.x,
                               dst.center.y - s * src.center.y))


def phi(j: int, l: int, cons: Construction = DEFAULT) -> AffineMap:
    """The similarity taking R^1_{j,l} onto Q^2_{j+1}."""
    _check_j(j)
    _check_l(l)
    return _phi_cached(j, l, cons)


def affine_apply(m: AffineMap, z: Union[QPoint, QBox, QRect]):
    if isinstance(z, QPoint):
        return m(z)
    if isinstance(z, QRect):
        return QRect(m(z.center), m.scale * z.half_side)
    lo = m(QPoint(z.x_lo, z.y_lo))
    hi = m(QPoint(z.x_hi, z.y_hi))
    return QBox(lo.x, hi.x, lo.y, hi.y)


def affine_preimage(m: AffineMap, s: QRect) -> QRect:
    return QRect(m.inverse()(s.center), s.half_side / m.scale)


@dataclass(frozen=True)
class RegionTag:
    """Where a point sits in the construction.

    kind is one of ``"P"`` (index (j, k)), ``"R2"`` (index (j, l), with
    ``in_r1`` telling whether the point also lies in R^1), ``"Q3Gap"``
    (index (j,)) or ``"Complement"``. ``boundary`` is set when the point
    lies on the boundary of the tagged square.
    """

    kind: str
    index: tuple = ()
    in_r1: bool = False
    boundary: bool = False

    def label(self) -> str:
        if self.kind == "Complement":
            return "Complement"
        text = f"{self.kind}{self.index}".replace(" ", "")
        if self.in_r1:
            text += "+R1"
        if self.boundary:
            text += "@boundary"
        return text


def _floor(q: Fraction) -> int:
    return math.floor(q)


def locate(z: QPoint) -> RegionTag:
    """Classify ``z`` with O(1) candidate lookups."""
    # S_{j,k} = [2j, 2j+2] x [2k, 2k+2]; P_{j,k} is strictly inside it
    j, k = _floor(z.x / 2), _floor(z.y / 2)
    p = square_P(j, k)
    if p.contains_point(z):
        return RegionTag("P", (j, k), boundary=p.on_boundary(z))

    jq = _floor(z.x + Fraction(1, 2))
    if jq >= 1:
        q3 = square_Q(jq, 3)
        if q3.contains_point(z):
            cell = pow2(-jq - 3)
            col = min(_floor((z.x - q3.x_lo) / cell), GRID - 1)
            row = min(_floor((q3.y_hi - z.y) / cell), GRID - 1)
            l = row * GRID + col + 1
            r2 = square_R(jq, l, 2)
            if r2.contains_point(z):
                return RegionTag("R2", (jq, l),
                                 in_r1=square_R(jq, l, 1).contains_point(z),
                                 boundary=r2.on_boundary(z))
            return RegionTag("Q3Gap", (jq,), boundary=q3.on_boundary(z))
    return RegionTag("Complement")


def locate_brute(z: QPoint, radius: int = 2) -> RegionTag:
    """Reference classifier that scans every square near ``z``."""
    cx, cy = _floor(z.x), _floor(z.y)
    for j in range(cx // 2 - radius, cx // 2 + radius + 1):
        for k in range(cy // 2 - radius, cy // 2 + radius + 1):
            p = square_P(j, k)
            if p.contains_point(z):
                return RegionTag("P", (j, k), boundary=p.on_boundary(z))
    for jq in range(max(1, cx - radius), cx + radius + 1):
        q3 = square_Q(jq, 3)
        if not q3.contains_point(z):
            continue
        for l in range(1, CELLS + 1):
            r2 = square_R(jq, l, 2)
            if r2.contains_point(z):
                return RegionTag("R2", (jq, l),
                                 in_r1=square_R(jq, l, 1).contains_point(z),
                                 boundary=r2.on_boundary(z))
        return RegionTag("Q3Gap", (jq,), boundary=q3.on_boundary(z))
    return RegionTag("Complement")


def region_square(tag: RegionTag) -> Optional[QRect]:
    if tag.kind == "P":
        return square_P(*tag.index)
    if tag.kind == "R2":
        return square_R(tag.index[0], tag.index[1], 2)
    if tag.kind == "Q3Gap":
        return square_Q(tag.index[0], 3)
    return None
