from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fjl.exact import (QBox, QPoint, QRect, box_gap, box_inflate, box_of_rect,
                       pow2, rat, rat_from_json, rat_to_json, rect_contains)
from fjl.geometry import square_Q

rats = st.fractions(min_value=-64, max_value=64, max_denominator=1 << 20)
nonneg = st.fractions(min_value=0, max_value=8, max_denominator=1 << 12)
halves = st.fractions(min_value=Fraction(1, 1 << 12), max_value=8, max_denominator=1 << 12)


@pytest.mark.parametrize("e, expected", [(0, 1), (-8, Fraction(1, 256)), (3, 8)])
def test_pow2(e, expected):
    assert pow2(e) == expected


def test_pow2_is_canonical():
    q = pow2(-40)
    assert (q.numerator, q.denominator) == (1, 1 << 40)


def test_rat_refuses_floats():
    with pytest.raises(TypeError):
        rat(0.5)
    assert rat("29/32") == Fraction(29, 32)


def test_json_round_trip():
    q = Fraction(-17, 36864)
    assert rat_to_json(q) == {"num": "-17", "den": "36864"}
    assert rat_from_json(rat_to_json(q)) == q


def test_box_inflate_examples():
    unit = QBox(0, 1, 0, 1)
    assert box_inflate(unit, 0) == unit
    assert box_inflate(unit, Fraction(1, 2)) == QBox(Fraction(-1, 2), Fraction(3, 2),
                                                    Fraction(-1, 2), Fraction(3, 2))
    r = pow2(-16)
    b = box_inflate(QBox.point(QPoint(2, 0)), r)
    assert (b.x_lo, b.x_hi, b.y_lo, b.y_hi) == (2 - r, 2 + r, -r, r)


def test_box_inflate_rejects_negative():
    with pytest.raises(ValueError):
        box_inflate(QBox(0, 1, 0, 1), Fraction(-1, 8))


def test_inverted_box_rejected():
    with pytest.raises(ValueError):
        QBox(1, 0, 0, 1)


def test_rect_contains_nested_q():
    q3, q2 = square_Q(1, 3), square_Q(1, 2)
    assert rect_contains(q3, q2) == (True, Fraction(1, 256))
    assert rect_contains(q2, q3) == (False, Fraction(-1, 256))
    assert rect_contains(q2, q2) == (True, 0)


def test_box_gap_sign():
    a = QRect(QPoint(0, 0), 1)
    assert box_gap(a, QRect(QPoint(3, 0), Fraction(1, 2))) == Fraction(3, 2)
    assert box_gap(a, QRect(QPoint(2, 0), 1)) == 0
    assert box_gap(a, QRect(QPoint(1, 1), 1)) < 0


@given(rats, rats, rats)
def test_field_identities(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a - b) + b == a
    if b:
        assert (a / b) * b == a


@given(rats, rats, nonneg, nonneg)
def test_inflate_additive(x, y, r1, r2):
    b = QBox(x, x + 1, y, y + 2)
    assert box_inflate(b, r1 + r2) == box_inflate(box_inflate(b, r1), r2)
    assert box_inflate(b, r1).contains_box(b)


def _rects():
    return st.builds(lambda x, y, h: QRect(QPoint(x, y), h), rats, rats, halves)


@given(_rects(), _rects(), _rects())
def test_containment_partial_order(a, b, c):
    assert rect_contains(a, a).contained
    if rect_contains(a, b).contained and rect_contains(b, a).contained:
        assert a == b
    if rect_contains(a, b).contained and rect_contains(b, c).contained:
        assert rect_contains(a, c).contained


@given(_rects())
def test_rect_box_round_trip(r):
    b = box_of_rect(r)
    assert b.x_hi - b.x_lo == r.side
    assert QRect.from_json(r.to_json()) == r
