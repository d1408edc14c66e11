"""Exact scalars, points, boxes and axis-aligned squares.

Every certified quantity in the package is a :class:`fractions.Fraction`;
floats appear only when rendering rasters.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

Rat = Fraction
RatLike = Union[Fraction, int, str]


def rat(value: RatLike) -> Fraction:
    """Coerce ints, Fractions and strings like ``"29/32"`` to a Fraction.

    Floats are refused: they would smuggle rounding into certified paths.
    """
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact values")
    return Fraction(value)


def pow2(e: int) -> Fraction:
    """Exactly 2**e for any integer e."""
    if e >= 0:
        return Fraction(1 << e)
    return Fraction(1, 1 << -e)


def rat_to_json(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def rat_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


@dataclass(frozen=True)
class QPoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", rat(self.x))
        object.__setattr__(self, "y", rat(self.y))

    def __add__(self, other: QPoint) -> QPoint:
        return QPoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: QPoint) -> QPoint:
        return QPoint(self.x - other.x, self.y - other.y)

    def scaled(self, s: Fraction) -> QPoint:
        return QPoint(self.x * s, self.y * s)

    def abs2(self) -> Fraction:
        """Squared modulus of x + iy."""
        return self.x * self.x + self.y * self.y


@dataclass(frozen=True)
class QBox:
    x_lo: Fraction
    x_hi: Fraction
    y_lo: Fraction
    y_hi: Fraction

    def __post_init__(self):
        for name in ("x_lo", "x_hi", "y_lo", "y_hi"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.x_lo > self.x_hi or self.y_lo > self.y_hi:
            raise ValueError(f"inverted box {self}")

    @classmethod
    def point(cls, z: QPoint) -> QBox:
        return cls(z.x, z.x, z.y, z.y)

    def contains_point(self, z: QPoint) -> bool:
        return self.x_lo <= z.x <= self.x_hi and self.y_lo <= z.y <= self.y_hi

    def contains_box(self, other: QBox) -> bool:
        return (self.x_lo <= other.x_lo and other.x_hi <= self.x_hi
                and self.y_lo <= other.y_lo and other.y_hi <= self.y_hi)

    def intersects(self, other: QBox) -> bool:
        return not (other.x_lo > self.x_hi or other.x_hi < self.x_lo
                    or other.y_lo > self.y_hi or other.y_hi < self.y_lo)

    @property
    def area(self) -> Fraction:
        return (self.x_hi - self.x_lo) * (self.y_hi - self.y_lo)


def box_inflate(b: QBox, r: RatLike) -> QBox:
    """Minkowski inflation of ``b`` by ``r`` in the sup norm.

    The result contains the Euclidean ``r``-neighbourhood of ``b``, which is
    how a bound ``|f(z) - g(z)| < r`` is turned into an enclosure.
    """
    r = rat(r)
    if r < 0:
        raise ValueError("inflation radius must be non-negative")
    return QBox(b.x_lo - r, b.x_hi + r, b.y_lo - r, b.y_hi + r)


@dataclass(frozen=True)
class QRect:
    """Closed axis-aligned square given by centre and half side."""

    center: QPoint
    half_side: Fraction

    def __post_init__(self):
        object.__setattr__(self, "half_side", rat(self.half_side))
        if self.half_side <= 0:
            raise ValueError(f"half_side must be positive, got {self.half_side}")

    @property
    def side(self) -> Fraction:
        return 2 * self.half_side

    @property
    def area(self) -> Fraction:
        return self.side * self.side

    @property
    def x_lo(self) -> Fraction:
        return self.center.x - self.half_side

    @property
    def x_hi(self) -> Fraction:
        return self.center.x + self.half_side

    @property
    def y_lo(self) -> Fraction:
        return self.center.y - self.half_side

    @property
    def y_hi(self) -> Fraction:
        return self.center.y + self.half_side

    def corners(self) -> tuple[QPoint, QPoint, QPoint, QPoint]:
        return (QPoint(self.x_lo, self.y_lo), QPoint(self.x_hi, self.y_lo),
                QPoint(self.x_hi, self.y_hi), QPoint(self.x_lo, self.y_hi))

    def contains_point(self, z: QPoint) -> bool:
        return (abs(z.x - self.center.x) <= self.half_side
                and abs(z.y - self.center.y) <= self.half_side)

    def on_boundary(self, z: QPoint) -> bool:
        return self.contains_point(z) and (
            abs(z.x - self.center.x) == self.half_side
            or abs(z.y - self.center.y) == self.half_side)

    def to_json(self) -> dict:
        return {"cx": rat_to_json(self.center.x), "cy": rat_to_json(self.center.y),
                "half": rat_to_json(self.half_side)}

    @classmethod
    def from_json(cls, obj: dict) -> QRect:
        return cls(QPoint(rat_from_json(obj["cx"]), rat_from_json(obj["cy"])),
                   rat_from_json(obj["half"]))


def box_of_rect(s: QRect) -> QBox:
    return QBox(s.x_lo, s.x_hi, s.y_lo, s.y_hi)


class Containment(NamedTuple):
    contained: bool
    margin: Fraction


def _as_box(s: QRect | QBox) -> QBox:
    return box_of_rect(s) if isinstance(s, QRect) else s


def rect_contains(outer: QRect | QBox, inner: QRect | QBox) -> Containment:
    """Decide ``inner ⊂ outer`` exactly.

    The margin is the smallest of the four side clearances; it is negative
    exactly when containment fails.
    """
    o, i = _as_box(outer), _as_box(inner)
    margin = min(i.x_lo - o.x_lo, o.x_hi - i.x_hi, i.y_lo - o.y_lo, o.y_hi - i.y_hi)
    return Containment(margin >= 0, margin)


def box_gap(a: QRect | QBox, b: QRect | QBox) -> Fraction:
    """Sup-norm distance between two closed boxes, or minus the overlap depth.

    Positive iff the boxes are disjoint.
    """
    a, b = _as_box(a), _as_box(b)
    return max(a.x_lo - b.x_hi, b.x_lo - a.x_hi, a.y_lo - b.y_hi, b.y_lo - a.y_hi)
