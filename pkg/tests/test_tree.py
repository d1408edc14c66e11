from fractions import Fraction

import pytest

from fjl.exact import pow2, rect_contains
from fjl.geometry import affine_apply, square_R
from fjl.tree import (TreeCapExceeded, children, enumerate_level, level_measure,
                      level_min_gap, level_summary, measure_lower_bound, node_half_side,
                      tree_root)


def test_root():
    root = tree_root()
    assert root.rect == square_R(1, 1, 1)
    assert root.rect.half_side == Fraction(3, 128)
    assert root.rect.area == Fraction(9, 4096) == Fraction(9, 8) * pow2(-9)
    assert root.contraction == 1 and root.depth == 1 and root.address == ()


def test_children_of_root():
    kids = children(tree_root())
    assert len(kids) == 16
    assert {k.rect.half_side for k in kids} == {Fraction(1, 192)}
    assert [k.address for k in kids] == [(m,) for m in range(1, 17)]
    for k in kids:
        assert rect_contains(tree_root().rect, k.rect).contained
        assert k.rect.half_side * k.contraction == square_R(2, k.target, 1).half_side
    assert sum(len(children(k)) for k in kids) == 256


def test_level_summary_closed_form():
    s1 = level_summary(1)
    assert s1.level_measure == Fraction(9, 4096)
    assert s1.loss_to_next == Fraction(17, 36864)
    assert s1.paper_loss_bound == Fraction(36, 36864)
    s2 = level_summary(2)
    assert s2.node_count == 16
    assert s2.level_measure == Fraction(1, 576)
    for j in range(1, 12):
        s = level_summary(j)
        assert s.node_count == 16 ** (j - 1)
        assert s.node_count * (2 * s.node_half_side) ** 2 == s.level_measure


def test_level_loss_oracle_by_enumeration():
    root = tree_root()
    kids = children(root)
    loss = root.rect.area - sum(k.rect.area for k in kids)
    assert loss == Fraction(17, 36864)


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_enumeration_matches_closed_form(j):
    nodes = enumerate_level(j)
    assert len(nodes) == 16 ** (j - 1)
    assert sum(n.rect.area for n in nodes) == level_measure(j)
    assert {n.rect.half_side for n in nodes} == {node_half_side(j)}


@pytest.mark.parametrize("j", [2, 3, 4])
def test_node_invariants(j):
    root = tree_root().rect
    for n in enumerate_level(j)[::7]:
        assert rect_contains(root, n.rect).contained
        assert n.rect.half_side * n.contraction == square_R(j, n.target, 1).half_side
        assert affine_apply(n.forward, n.rect) == square_R(j, n.target, 1)


def test_half_side_recursion():
    from fjl.geometry import DEFAULT
    for j in range(1, 30):
        lhs = node_half_side(j + 1)
        rhs = node_half_side(j) * DEFAULT.r_half(j + 1, 1) / (DEFAULT.r_half(j, 1) * DEFAULT.scale(j))
        assert lhs == rhs


def test_level_gap_positive_and_checked():
    assert level_min_gap(enumerate_level(1)) is None
    assert level_min_gap(enumerate_level(3)) > 0
    nodes = enumerate_level(2)
    with pytest.raises(ValueError):
        level_min_gap(nodes + [tree_root()])


def test_cap_refusal():
    assert enumerate_level(1) == [tree_root()]
    with pytest.raises(TreeCapExceeded) as exc:
        enumerate_level(8, cap=10 ** 6)
    assert exc.value.required == 16 ** 7


def test_per_node_loss_below_bound():
    for j in range(1, 33):
        s = level_summary(j)
        assert s.loss_to_next / s.node_count < s.paper_loss_bound


def test_measure_lower_bound():
    assert measure_lower_bound(1) == pow2(-12)
    assert measure_lower_bound(2) == Fraction(1, 576) - pow2(-10)
    assert measure_lower_bound(2) > pow2(-12)
    vals = [measure_lower_bound(d) for d in range(1, 40)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    for d, v in enumerate(vals, start=1):
        assert v <= level_measure(d)
