"""The nested collections T_j as a 16-ary tree of exact preimage squares.

Under the exact model every node at depth j is a square that the
composition f^(j-1) maps affinely onto some R^1_{j,l}. All nodes of one
depth are congruent, so level measures have closed forms; explicit
enumeration is kept as a cross-check.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from fjl.exact import QRect, pow2
from fjl.geometry import (CELLS, DEFAULT, AffineMap, Construction,
                          affine_preimage, phi, square_R)

DEFAULT_CAP = 10**6


class TreeCapExceeded(ValueError):
    def __init__(self, depth: int, required: int, cap: int):
        super().__init__(f"depth {depth} needs {required} nodes, cap is {cap}")
        self.depth = depth
        self.required = required
        self.cap = cap


@dataclass(frozen=True)
class TreeNode:
    address: tuple[int, ...]
    depth: int
    rect: QRect
    contraction: Fraction
    target: int
    # f^(depth-1) on this node under the exact model
    forward: AffineMap

    @property
    def address_str(self) -> str:
        return ".".join(map(str, self.address)) or "root"


@dataclass(frozen=True)
class LevelSummary:
    depth: int
    node_count: int
    node_half_side: Fraction
    level_measure: Fraction
    loss_to_next: Fraction
    paper_loss_bound: Fraction

    def to_json(self, lower_bound: Fraction) -> dict:
        return {"depth": self.depth, "count": self.node_count,
                "half_side": str(self.node_half_side),
                "measure": str(self.level_measure),
                "loss": str(self.loss_to_next),
                "bound": str(self.paper_loss_bound),
                "lower_bound_so_far": str(lower_bound)}


def tree_root(cons: Construction = DEFAULT) -> TreeNode:
    return TreeNode((), 1, square_R(1, 1, 1, cons), Fraction(1), 1, AffineMap.identity())


def children(n: TreeNode, cons: Construction = DEFAULT) -> list[TreeNode]:
    forward = phi(n.depth, n.target, cons).compose(n.forward)
    back = forward.inverse()
    d = n.depth + 1
    out = []
    for m in range(1, CELLS + 1):
        target = square_R(d, m, 1, cons)
        rect = QRect(back(target.center), target.half_side / forward.scale)
        out.append(TreeNode(n.address + (m,), d, rect, forward.scale, m, forward))
    return out


def node_half_side(j: int, cons: Construction = DEFAULT) -> Fraction:
    prod = Fraction(1)
    for m in range(1, j):
        prod *= cons.scale(m)
    return cons.r_half(j, 1) / prod


def level_measure(j: int, cons: Construction = DEFAULT) -> Fraction:
    side = 2 * node_half_side(j, cons)
    return 16 ** (j - 1) * side * side


def level_summary(j: int, cons: Construction = DEFAULT) -> LevelSummary:
    if j < 1:
        raise ValueError("depth must be >= 1")
    lm = level_measure(j, cons)
    return LevelSummary(j, 16 ** (j - 1), node_half_side(j, cons), lm,
                        lm - level_measure(j + 1, cons), pow2(-5 * j - 5))


def iter_level(j: int, cons: Construction = DEFAULT) -> Iterator[TreeNode]:
    if j < 1:
        raise ValueError("depth must be >= 1")
    frontier = [tree_root(cons)]
    for _ in range(j - 1):
        frontier = [c for n in frontier for c in children(n, cons)]
    yield from frontier


def enumerate_level(j: int, cap: int = DEFAULT_CAP,
                    cons: Construction = DEFAULT) -> list[TreeNode]:
    """All nodes of depth ``j``, refusing when there would be more than ``cap``.

    Raises ValueError if the enumerated nodes overlap.
    """
    required = 16 ** (j - 1)
    if required > cap:
        raise TreeCapExceeded(j, required, cap)
    nodes = list(iter_level(j, cons))
    gap = level_min_gap(nodes)
    if gap is not None and gap <= 0:
        raise ValueError(f"depth {j} nodes overlap (gap {gap})")
    return nodes


def level_min_gap(nodes: list[TreeNode]) -> Fraction | None:
    """Smallest sup-norm gap over pairs of nearby nodes of one level.

    Nodes of a level share a half side h, so two of them can only touch
    if their centres fall in neighbouring buckets of a grid with pitch 2h;
    pairs further apart are disjoint and are not measured. Returns None
    when no pair is near.
    """
    if len(nodes) < 2:
        return None
    h = nodes[0].rect.half_side
    if any(n.rect.half_side != h for n in nodes):
        raise ValueError("level nodes are not congruent")
    den = h.denominator
    for n in nodes:
        den = math.lcm(den, n.rect.center.x.denominator, n.rect.center.y.denominator)
    # exact integer coordinates over a common denominator
    pitch = 2 * h.numerator * (den // h.denominator)
    pts = [(c.x.numerator * (den // c.x.denominator), c.y.numerator * (den // c.y.denominator))
           for c in (n.rect.center for n in nodes)]
    buckets: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
    for p in pts:
        buckets[p[0] // pitch, p[1] // pitch].append(p)
    best = None
    for (bx, by), here in buckets.items():
        near = [q for dx in (-1, 0, 1) for dy in (-1, 0, 1)
                for q in buckets.get((bx + dx, by + dy), ())]
        for p in here:
            for q in near:
                if q is p:
                    continue
                g = max(abs(p[0] - q[0]), abs(p[1] - q[1])) - pitch
                if best is None or g < best:
                    best = g
    return None if best is None else Fraction(best, den)


def measure_lower_bound(d: int, cons: Construction = DEFAULT) -> Fraction:
    """meas(T) >= level_measure(d) - sum_{j >= d} 2^(-j-9)."""
    if d < 1:
        raise ValueError("depth must be >= 1")
    return level_measure(d, cons) - pow2(-d - 8)
